"""Self-testing criteria for ROCN Bell functionals with an even number of rows.

Two routes are provided:

* the rank criterion: the moment matrix ``M`` with rows indexed by Bob's
  settings ``j`` and columns by pairs ``i < k`` of Alice's settings,
  ``M[j, (i, k)] = h_ij * h_kj``, must have full column rank ``m(m-1)/2``;
* the spanning criterion (sufficient only): the columns of ``h`` form a
  symmetric spanning set.

When the rank criterion fails, a null-diagonal symmetric witness ``O`` with
``<h_j|<h_j| psi_O> = 0`` for every column is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from rocnbell.errors import DimensionError, OddDimensionError
from rocnbell.rocn import as_rocn
from rocnbell.symspan import SymCoefficients, VectorFamily, is_symmetric_spanning

RANK_RTOL = 1e-9

ORIENTATION_NOTE = (
    "M has one row per column j of h and one column per pair i<k of rows of h, "
    "M[j,(i,k)] = h[i,j]*h[k,j]; full column rank means rank m(m-1)/2."
)


def pair_index(m: int) -> dict[tuple[int, int], int]:
    """Lexicographic positions of the 1-based pairs ``(i, k)``, ``i < k``."""
    return {pair: pos for pos, pair in enumerate(combinations(range(1, m + 1), 2))}


@dataclass(frozen=True)
class MomentMatrix:
    entries: np.ndarray
    pair_index: dict

    @property
    def shape(self):
        return self.entries.shape


@dataclass(frozen=True)
class SelfTestVerdict:
    rank_M: int
    rank_required: int
    rank_passes: bool
    spanning_passes: bool
    counting_ok: bool
    smallest_retained_singular_value: float
    witness: SymCoefficients | None = None

    def as_dict(self) -> dict:
        out = {
            "rank_M": self.rank_M,
            "rank_required": self.rank_required,
            "rank_passes": self.rank_passes,
            "spanning_passes": self.spanning_passes,
            "counting_ok": self.counting_ok,
            "smallest_retained_singular_value": self.smallest_retained_singular_value,
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = self.witness.matrix.real.tolist()
        return out


def _require_even(m: int):
    if m % 2:
        raise OddDimensionError(f"self-testing criteria need an even number of rows, got m={m}")


def build_moment_matrix(h) -> MomentMatrix:
    h = as_rocn(h)
    _require_even(h.m)
    index = pair_index(h.m)
    rows = np.array([i - 1 for i, _ in index], dtype=int)
    cols = np.array([k - 1 for _, k in index], dtype=int)
    entries = (h.entries[rows, :] * h.entries[cols, :]).T
    return MomentMatrix(entries, index)


def _canonical_sign(v: np.ndarray, tiny: float = 1e-14) -> np.ndarray:
    nonzero = np.flatnonzero(np.abs(v) > tiny)
    if nonzero.size and v[nonzero[0]] < 0:
        return -v
    return v


def witness_from_pairs(m: int, x: np.ndarray) -> SymCoefficients:
    """Null-diagonal ``O`` with ``O_ik = O_ki = x_(ik)``, scaled to unit Frobenius norm."""
    O = np.zeros((m, m))
    for (i, k), pos in pair_index(m).items():
        O[i - 1, k - 1] = O[k - 1, i - 1] = x[pos]
    norm = np.linalg.norm(O)
    if norm > 0:
        O = O / norm
    return SymCoefficients.from_matrix(O)


def rank_criterion(h, threshold: float = RANK_RTOL) -> SelfTestVerdict:
    """Decide self-testing from the column rank of the moment matrix.

    ``threshold`` is relative: singular values at or below
    ``threshold * sigma_max`` are dropped.  On failure the right singular
    vector of the smallest singular value becomes the witness.
    """
    h = as_rocn(h)
    M = build_moment_matrix(h).entries
    required = h.m * (h.m - 1) // 2
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    sigma_max = s[0] if s.size else 0.0
    retained = s[s > threshold * sigma_max] if sigma_max > 0 else s[:0]
    rank = int(retained.size)
    passes = rank == required
    witness = None
    if not passes:
        witness = witness_from_pairs(h.m, _canonical_sign(vh[-1]))
    return SelfTestVerdict(
        rank_M=rank,
        rank_required=required,
        rank_passes=passes,
        spanning_passes=spanning_criterion(h),
        counting_ok=h.n > required,
        smallest_retained_singular_value=float(retained[-1]) if rank else 0.0,
        witness=witness,
    )


def spanning_criterion(h) -> bool:
    """Whether the columns of ``h`` form a symmetric spanning set."""
    h = as_rocn(h)
    return is_symmetric_spanning(VectorFamily.from_columns(h.entries))


def kernel_witness_check(h, O, tolerance: float = 0.0) -> float:
    """``max_j |sum_ik h_ij h_kj O_ik|``; zero for a genuine witness.

    Raises:
        ValueError: ``O`` has a nonzero diagonal.
    """
    h = as_rocn(h)
    if not isinstance(O, SymCoefficients):
        O = SymCoefficients.from_matrix(O)
    if O.m != h.m:
        raise DimensionError(f"witness dimension {O.m} does not match m={h.m}")
    if not O.has_null_diagonal(tolerance):
        raise ValueError("witness must have a null diagonal")
    values = np.einsum("ij,ik,kj->j", h.entries, O.matrix, h.entries)
    return float(np.max(np.abs(values)))
