"""JSON formats for matrices, observables and probability tensors.

Matrix files look like ``{"m": 2, "n": 2, "entries": [[...], [...]], "label": "..."}``.
Floats are written with 17 significant digits so they round-trip exactly;
readers reject NaN and infinities.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from rocnbell.errors import DimensionError, RocnError
from rocnbell.rocn import DEFAULT_TOLERANCE, RocnMatrix


class MatrixFormatError(RocnError):
    """A matrix file is malformed."""


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    text = format(x, ".17g")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _float_rows(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(format_float(x) for x in row) + "]" for row in rows) + "]"


def matrix_to_json(entries, label: str = "") -> str:
    entries = np.asarray(entries, dtype=float)
    if entries.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {entries.shape}")
    m, n = entries.shape
    return (
        "{"
        f'"m": {m}, "n": {n}, '
        f'"entries": {_float_rows(entries)}, '
        f'"label": {json.dumps(label)}'
        "}\n"
    )


def _reject_constant(name):
    raise MatrixFormatError(f"non-finite value {name} is not allowed")


def parse_matrix(text: str) -> tuple[np.ndarray, str]:
    """Parse a matrix document into ``(entries, label)`` without ROCN validation."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    for key in ("m", "n", "entries"):
        if key not in doc:
            raise MatrixFormatError(f"missing field {key!r}")
    m, n, rows = doc["m"], doc["n"], doc["entries"]
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise MatrixFormatError("m and n must be positive integers")
    if not isinstance(rows, list) or len(rows) != m:
        raise MatrixFormatError(f"expected {m} rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"every row must have {n} entries")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise MatrixFormatError(f"entries must be numbers, got {x!r}")
    entries = np.array(rows, dtype=float)
    if not np.all(np.isfinite(entries)):
        raise MatrixFormatError("entries must be finite")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise MatrixFormatError("label must be a string")
    return entries, label


def read_matrix_entries(path) -> tuple[np.ndarray, str]:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def read_matrix(path, tolerance: float = DEFAULT_TOLERANCE) -> RocnMatrix:
    entries, label = read_matrix_entries(path)
    return RocnMatrix(entries, label=label, tolerance=tolerance)


def write_matrix(path, h, label: str | None = None):
    if isinstance(h, RocnMatrix):
        entries, label = h.entries, h.label if label is None else label
    else:
        entries = h
    Path(path).write_text(matrix_to_json(entries, label or ""), encoding="utf-8")


def observables_to_json(ops) -> str:
    """List of ``d x d`` matrices whose entries are ``{"re": ..., "im": ...}`` objects."""
    ops = np.asarray(ops, dtype=complex)
    doc = [
        [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in op]
        for op in ops
    ]
    return json.dumps(doc, allow_nan=False)


def observables_from_json(text: str) -> np.ndarray:
    doc = json.loads(text, parse_constant=_reject_constant)
    return np.array([[[z["re"] + 1j * z["im"] for z in row] for row in op] for op in doc], dtype=complex)


def probabilities_to_json(p) -> str:
    """Nested ``[i][j][a][b]`` arrays, ``a, b`` index 0 meaning outcome +1 and 1 meaning -1."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 4 or p.shape[2:] != (2, 2):
        raise DimensionError(f"expected shape (m, n, 2, 2), got {p.shape}")
    return json.dumps(p.tolist(), allow_nan=False)
