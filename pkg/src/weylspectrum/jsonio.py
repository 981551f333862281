"""JSON encodings: integer matrices as string arrays, orbit data, polynomials."""
from __future__ import annotations

import json
from pathlib import Path

from .lattice import Matrix, as_matrix
from .orbit import OrbitData
from .poly import IntPolynomial


class InputError(ValueError):
    pass


def matrix_to_json(M: Matrix) -> list:
    return [[str(x) for x in row] for row in M]


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be a list of rows")
    try:
        return as_matrix([[int(x) for x in row] for row in obj])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad matrix entry: {exc}") from None


def poly_to_json(p: IntPolynomial) -> list:
    """Ascending coefficients as decimal strings."""
    return [str(c) for c in p.coeffs]


def orbit_data_to_json(od: OrbitData) -> dict:
    return {"M": matrix_to_json(od.M), "n": list(od.n), "truncated": od.truncated}


def orbit_data_from_json(obj) -> OrbitData:
    if not isinstance(obj, dict) or "M" not in obj or "n" not in obj:
        raise InputError('orbit data needs keys "M" and "n"')
    M = matrix_from_json(obj["M"])
    try:
        n = tuple(int(x) for x in obj["n"])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad orbit length: {exc}") from None
    return OrbitData(M, n, bool(obj.get("truncated", False)))


def load_json_arg(text: str):
    """Parse inline JSON, or read it from a file path; errors carry the position."""
    src = text
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise InputError(f"{text!r} is neither JSON nor an existing file")
        src = path.read_text()
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_lengths(text: str) -> tuple[int, ...]:
    """'3,2,4' or '[3,2,4]' -> (3, 2, 4)."""
    body = text.strip().strip("[]()")
    try:
        return tuple(int(x) for x in body.replace(" ", "").split(",") if x)
    except ValueError:
        raise InputError(f"cannot parse lengths {text!r}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
