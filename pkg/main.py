"""FastAPI application exposing the GL(n) derivative calculus over HTTP.

Every verb of the command line is available through ``POST /api/run`` with
the same arguments; the response is the structured command output.
``jordan`` takes its matrix as text in the request body, never as a path,
and ``--help`` is rejected with a 400.
"""

import logging
from contextlib import asynccontextmanager
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from src.catalogue import CATALOGUE
from src.cli import VERBS, execute, parse_command
from src.config import Settings, configure_logging, get_settings
from src.errors import DomainError, ParseError
from src.reps import associated_partition, depth
from src.schemas import CommandResult

settings = get_settings()

# Configure logging
configure_logging(settings.log_level)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log startup and shutdown."""
    logger.info(f"Starting GL(n) calculus service with field={settings.field}, seed={settings.seed}")
    logger.info(f"{len(VERBS)} verbs and {len(CATALOGUE)} catalogue entries available")
    yield
    logger.info("Shutting down GL(n) calculus service...")


# Initialize FastAPI app
app = FastAPI(
    title="GL(n) Derivative Calculus",
    description="Derivatives, adduced representations and Whittaker multiplicities for GL(n,R) and GL(n,C)",
    version="1.0.0",
    lifespan=lifespan
)


# Pydantic models
class RunRequest(BaseModel):
    argv: List[str] = Field(..., min_length=1, description="Verb followed by its arguments, as on the command line")
    matrix: Optional[str] = Field(None, description="Matrix text for jordan, in the plain-text matrix format")


class CatalogueEntry(BaseModel):
    expression: str
    ap: str
    depth: int


class CatalogueResponse(BaseModel):
    total: int
    entries: List[CatalogueEntry]


# API Routes

@app.get("/api/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": "gln-calculus"}


@app.get("/api/config", response_model=Settings)
async def get_config():
    """Effective settings."""
    return settings


@app.get("/api/verbs")
async def get_verbs() -> Dict[str, str]:
    return VERBS


@app.get("/api/catalogue", response_model=CatalogueResponse)
async def get_catalogue():
    """Catalogue entries with their associated partition and depth."""
    entries = [
        CatalogueEntry(expression=name, ap=str(associated_partition(expr)), depth=depth(expr))
        for name, expr in CATALOGUE.items()
    ]
    return CatalogueResponse(total=len(entries), entries=entries)


@app.post("/api/run", response_model=CommandResult)
def run_command(request: RunRequest):
    """Parse and run one command; 400 for malformed input, 422 for domain errors."""
    try:
        command = parse_command(request.argv, settings, interactive=False, matrix_text=request.matrix)
        result, _ = execute(command)
        return result
    except ParseError as e:
        logger.error(f"Rejected {request.argv[0]}: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except DomainError as e:
        logger.error(f"{request.argv[0]} failed: {e}")
        raise HTTPException(status_code=422, detail=str(e))


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host=settings.host, port=settings.port)
