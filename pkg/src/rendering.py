"""Conversion of results into canonical JSON values and plain text."""

import json
from fractions import Fraction
from typing import Any, List

from pydantic import BaseModel

from src.derivatives import InfCharMultiset
from src.bigrading import PBWMonomial
from src.filtrations import FiltrationChain, Subspace
from src.matrixlab import ExactMatrix, LinearFunctional, format_matrix
from src.partitions import Composition
from src.reps import RepExpr, ZeroRep
from src.scalars import ExactComplex, format_complex, format_rational

# Values rendered through their canonical printer
PRINTABLE = (ExactComplex, Composition, RepExpr, ZeroRep, PBWMonomial, InfCharMultiset)


def to_jsonable(value: Any) -> Any:
    """
    Recursively convert a result into JSON-compatible values.

    Printable domain values become their canonical strings, pydantic models
    become dicts, tuple keys are joined with commas and sets are sorted, so
    equal results always serialize to the same bytes.

    Args:
        value: Any result produced by a command

    Returns:
        Nested dicts, lists, strings, numbers, booleans and None
    """
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, PRINTABLE):
        return str(value)
    if isinstance(value, ExactMatrix):
        return [[format_complex(entry) for entry in row] for row in value.to_rows()]
    if isinstance(value, LinearFunctional):
        return {"dual": to_jsonable(value.dual)}
    if isinstance(value, Subspace):
        return [[format_rational(entry) for entry in row] for row in value.basis]
    if isinstance(value, FiltrationChain):
        return {"ambient_dim": value.ambient_dim, "steps": [to_jsonable(step) for step in value.steps]}
    if isinstance(value, BaseModel):
        return {name: to_jsonable(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, dict):
        return {_key(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (set, frozenset)):
        items = [to_jsonable(item) for item in value]
        return sorted(items, key=lambda item: json.dumps(item, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def _key(key: Any) -> str:
    if isinstance(key, tuple):
        return ",".join(str(part) for part in key)
    return str(to_jsonable(key))


def render_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, ensure_ascii=False)


def render_text(value: Any) -> str:
    """Human-readable rendering: canonical strings for values, indented lines for reports."""
    if isinstance(value, PRINTABLE):
        return str(value)
    if isinstance(value, ExactMatrix):
        return format_matrix(value)
    if isinstance(value, LinearFunctional):
        return format_matrix(value.dual)
    return "\n".join(_text_lines(to_jsonable(value), 0))


def _text_lines(value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if _is_scalar(item) or _is_flat_list(item):
                lines.append(f"{pad}{key}: {_inline(item)}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
        return lines
    if isinstance(value, list):
        if _is_flat_list(value):
            return [f"{pad}{_inline(value)}"]
        lines = []
        for item in value:
            nested = _text_lines(item, indent + 1)
            if nested:
                nested[0] = f"{pad}- {nested[0].lstrip()}"
            lines.extend(nested)
        return lines
    return [f"{pad}{_inline(value)}"]


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (bool, int, str))


def _is_flat_list(value: Any) -> bool:
    return isinstance(value, list) and all(_is_scalar(item) for item in value)


def _inline(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_inline(item) for item in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)

