"""JSON forms of matrices, polynomials and block decompositions.

Matrix::

    {"rows": 2, "cols": 2, "entries": [["1", "1/2"], ["0", "-3"]]}

Over an extension a ``"field": {"modulus": [...]}`` member is present and
each entry is a list of rational strings, lowest power of Y first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .field import QQ, FieldContext, parse_rational
from .linalg import DimensionMismatch, Matrix
from .poly import Polynomial


class FormatError(ValueError):
    pass


def context_from_json(data) -> FieldContext:
    if data is None:
        return QQ
    try:
        return FieldContext.extension(data["modulus"])
    except (KeyError, TypeError) as exc:
        raise FormatError("field must be an object with a 'modulus' list") from exc


def context_to_json(ctx: FieldContext):
    if ctx.is_rational:
        return None
    return {"modulus": [str(c) for c in ctx.modulus]}


def _scalar(ctx: FieldContext, value):
    if isinstance(value, bool):
        raise FormatError(f"bad scalar {value!r}")
    if isinstance(value, (int, str)):
        return ctx(parse_rational(value))
    if isinstance(value, list):
        return ctx(value)
    raise FormatError(f"bad scalar {value!r}")


def matrix_from_json(data: dict) -> Matrix:
    try:
        ctx = context_from_json(data.get("field"))
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = data["entries"]
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError("matrix needs 'rows', 'cols' and 'entries'") from exc
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise FormatError(f"entries do not form a {rows}x{cols} array")
    try:
        return Matrix([[_scalar(ctx, x) for x in row] for row in entries], ctx, cols=cols)
    except (ValueError, DimensionMismatch) as exc:
        raise FormatError(str(exc)) from exc


def matrix_to_json(m: Matrix) -> dict:
    out = {"rows": m.rows, "cols": m.cols,
           "entries": [[x.to_json() for x in row] for row in m.tolist()]}
    field = context_to_json(m.context)
    if field is not None:
        out["field"] = field
    return out


def poly_from_json(data, ctx: FieldContext = QQ) -> Polynomial:
    if not isinstance(data, list):
        raise FormatError("polynomial must be a coefficient list")
    return Polynomial([_scalar(ctx, c) for c in data], ctx)


def poly_to_json(f: Polynomial) -> list:
    return f.to_json()


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path: str | Path):
    """Read a JSON file; decode errors keep their line/column information."""
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_matrix(path: str | Path) -> Matrix:
    return matrix_from_json(load_json(path))


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def rational_matrix(rows) -> Matrix:
    """Shorthand for tests and fixtures: nested lists of ints/strings/Fractions."""
    return Matrix([[parse_rational(x) if isinstance(x, str) else Fraction(x) for x in r] for r in rows])
