"""ROCN coefficient matrices and the bounds of their correlation Bell functionals.

A real ``m x n`` matrix ``h`` (``m <= n``) is ROCN when its rows are pairwise
orthogonal and its columns have unit Euclidean norm.  It defines the Bell
functional ``I_h = sum_ij h_ij <A_i B_j>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from rocnbell.errors import DimensionError, NotRocnError, SizeLimitError

DEFAULT_TOLERANCE = 1e-9
CLASSICAL_MAX_M = 24
_CHUNK_BITS = 16


@dataclass(frozen=True)
class ValidationOutcome:
    valid: bool
    worst_row_pair_residual: float
    worst_column_residual: float
    zero_rows: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "worst_row_pair_residual": self.worst_row_pair_residual,
            "worst_column_residual": self.worst_column_residual,
            "zero_rows": list(self.zero_rows),
        }


def _as_real_matrix(entries) -> np.ndarray:
    if isinstance(entries, (list, tuple)):
        rows = [list(r) if isinstance(r, (list, tuple, np.ndarray)) else None for r in entries]
        if any(r is None for r in rows):
            raise DimensionError("entries must be a two-dimensional array")
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise DimensionError(f"row length mismatch: found lengths {sorted(lengths)}")
    arr = np.array(entries, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"entries must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("entries must be finite (no NaN or Inf)")
    return arr


def validate_rocn(entries, tolerance: float = DEFAULT_TOLERANCE) -> ValidationOutcome:
    """Check the two ROCN conditions and the nonzero-row assumption.

    Residuals are maximum absolute deviations: off-diagonal entries of
    ``h h^T`` for row orthogonality, ``|sum_i h_ij^2 - 1|`` for the columns.

    Raises:
        DimensionError: ``m > n``, ragged rows, or non-finite entries.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    h = _as_real_matrix(entries)
    m, n = h.shape
    if m > n:
        raise DimensionError(f"ROCN matrices need m <= n, got m={m}, n={n}")

    gram = h @ h.T
    off = gram - np.diag(np.diag(gram))
    row_res = float(np.max(np.abs(off))) if m > 1 else 0.0
    col_res = float(np.max(np.abs(np.sum(h * h, axis=0) - 1.0)))
    zero_rows = tuple(int(i) for i in np.flatnonzero(np.max(np.abs(h), axis=1) <= tolerance))
    valid = row_res <= tolerance and col_res <= tolerance and not zero_rows
    return ValidationOutcome(valid, row_res, col_res, zero_rows)


@dataclass(frozen=True)
class RocnMatrix:
    """A validated ROCN coefficient matrix.

    Construction raises :class:`NotRocnError` when the entries fail
    :func:`validate_rocn` at ``tolerance``.  The stored array is read-only.
    """

    entries: np.ndarray
    label: str = ""
    tolerance: float = field(default=DEFAULT_TOLERANCE, compare=False)

    def __post_init__(self):
        h = _as_real_matrix(self.entries)
        outcome = validate_rocn(h, self.tolerance)
        if not outcome.valid:
            raise NotRocnError(
                "matrix is not ROCN: "
                f"row residual {outcome.worst_row_pair_residual:.3e}, "
                f"column residual {outcome.worst_column_residual:.3e}, "
                f"zero rows {list(outcome.zero_rows)}",
                outcome,
            )
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def columns(self) -> np.ndarray:
        """Column vectors ``h_j`` as the rows of an ``n x m`` array."""
        return self.entries.T

    def __eq__(self, other):
        if not isinstance(other, RocnMatrix):
            return NotImplemented
        return self.label == other.label and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.label, self.entries.shape, self.entries.tobytes()))


def as_rocn(h, tolerance: float = DEFAULT_TOLERANCE) -> RocnMatrix:
    """Return ``h`` unchanged if already a :class:`RocnMatrix`, else validate and wrap it."""
    if isinstance(h, RocnMatrix):
        return h
    return RocnMatrix(h, tolerance=tolerance)


def _sign_block(start: int, count: int, m: int) -> np.ndarray:
    # Row r encodes a = (+1, s_1, ..., s_{m-1}) with bit b of (start + r) giving s_{b+1}.
    idx = np.arange(start, start + count, dtype=np.int64)[:, None]
    bits = (idx >> np.arange(m - 1, dtype=np.int64)) & 1
    signs = np.ones((count, m))
    signs[:, 1:] = 1.0 - 2.0 * bits
    return signs


def classical_bound(h, max_m: int = CLASSICAL_MAX_M) -> float:
    """Local (deterministic) bound of ``I_h`` by exhaustive enumeration.

    Bob's optimal response to Alice's signs ``a`` is ``b_j = sign(sum_i h_ij a_i)``,
    so the bound is ``max_a sum_j |sum_i h_ij a_i|``.  Only ``a_1 = +1`` is
    enumerated since ``a`` and ``-a`` score the same.
    """
    h = as_rocn(h)
    m = h.m
    if m > max_m:
        raise SizeLimitError(f"classical bound enumeration is limited to m <= {max_m}, got m={m}")
    total = 1 << (m - 1)
    chunk = 1 << _CHUNK_BITS
    best = -np.inf
    for start in range(0, total, chunk):
        signs = _sign_block(start, min(chunk, total - start), m)
        scores = np.abs(signs @ h.entries).sum(axis=1)
        best = max(best, float(scores.max()))
    return best


def quantum_bound(h) -> float:
    """Maximal quantum value of ``I_h``, which for ROCN matrices equals ``n``."""
    return float(as_rocn(h).n)


def bell_value(h, correlations, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """Evaluate ``sum_ij h_ij * correlations_ij``."""
    h = as_rocn(h)
    corr = np.asarray(correlations, dtype=float)
    if corr.shape != h.entries.shape:
        raise DimensionError(f"correlations shape {corr.shape} does not match h shape {h.entries.shape}")
    if np.any(np.abs(corr) > 1.0 + tolerance):
        raise ValueError("correlations must lie in [-1, 1]")
    return float(np.sum(h.entries * corr))
