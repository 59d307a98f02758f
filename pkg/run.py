#!/usr/bin/env python3
"""
GL(n) derivative calculus launcher

Usage:
    python run.py ap "spehcs(2,3,1/4) x chi(3,0,2*i)"
    python run.py adduce "spehcs(2,k=3,s=1/4)" --json
    python run.py verify-filtrations --n 8 --seed 0
    python run.py serve                 # start the HTTP API (main.py)

Settings come from the environment or a .env file (GLN_FIELD, GLN_SEED,
GLN_TRIALS, GLN_LOG_LEVEL, GLN_HOST, GLN_PORT).
"""

import sys

from src.cli import main
from src.config import configure_logging, get_settings


def serve() -> int:
    """Run the FastAPI service with uvicorn."""
    try:
        import uvicorn
    except ImportError as e:
        print(f"Missing Python dependency: {e}")
        print("Run: pip install -r requirements.txt")
        return 1

    settings = get_settings()
    uvicorn.run("main:app", host=settings.host, port=settings.port, log_level=settings.log_level.lower())
    return 0


if __name__ == "__main__":
    configure_logging(get_settings().log_level)
    if sys.argv[1:2] == ["serve"]:
        sys.exit(serve())
    sys.exit(main())
