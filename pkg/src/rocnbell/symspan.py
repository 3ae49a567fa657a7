"""Linear algebra on the symmetric subspace of C^m (x) C^m.

A symmetric two-fold tensor ``sum_ik O_ik |i>|k>`` is identified with its
complex symmetric coefficient matrix ``O``.  Families of real unit vectors
are tested for being *symmetric spanning*: their self-products ``v (x) v``
span the whole ``m(m+1)/2``-dimensional symmetric subspace.

Indices ``i, k`` in the public functions are 1-based, and ``i (+) k`` denotes
addition modulo ``m`` mapped back into ``{1, ..., m}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from rocnbell.errors import DimensionError

UNIT_TOLERANCE = 1e-9
SPAN_RTOL = 1e-12


def cyclic_add(i: int, k: int, m: int) -> int:
    """``i (+) k`` for 1-based ``i`` on ``{1, ..., m}``."""
    return (i - 1 + k) % m + 1


def symmetric_dimension(m: int) -> int:
    return m * (m + 1) // 2


@dataclass(frozen=True)
class SymCoefficients:
    """Symmetric coefficient matrix stored as its packed upper triangle.

    ``upper`` holds ``O[np.triu_indices(m)]`` so symmetry holds by
    construction; :attr:`matrix` rebuilds the full ``m x m`` array.
    """

    m: int
    upper: np.ndarray

    def __post_init__(self):
        upper = np.array(self.upper, dtype=complex).reshape(-1)
        if upper.size != symmetric_dimension(self.m):
            raise DimensionError(
                f"packed upper triangle for m={self.m} needs {symmetric_dimension(self.m)} entries, got {upper.size}"
            )
        upper.setflags(write=False)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def from_matrix(cls, O, tolerance: float = 0.0) -> "SymCoefficients":
        O = np.asarray(O, dtype=complex)
        if O.ndim != 2 or O.shape[0] != O.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {O.shape}")
        if np.max(np.abs(O - O.T), initial=0.0) > tolerance:
            raise ValueError("coefficient matrix is not symmetric")
        m = O.shape[0]
        return cls(m, O[np.triu_indices(m)])

    @classmethod
    def zeros(cls, m: int) -> "SymCoefficients":
        return cls(m, np.zeros(symmetric_dimension(m)))

    @property
    def matrix(self) -> np.ndarray:
        O = np.zeros((self.m, self.m), dtype=complex)
        rows, cols = np.triu_indices(self.m)
        O[rows, cols] = self.upper
        O[cols, rows] = self.upper
        return O

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix)

    def has_null_diagonal(self, tolerance: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.diagonal)) <= tolerance)

    def norm(self) -> float:
        """Euclidean norm of the tensor, i.e. the Frobenius norm of ``O``."""
        return float(np.linalg.norm(self.matrix))

    def coordinates(self) -> np.ndarray:
        """Coordinates in an orthonormal basis of the symmetric subspace.

        Diagonal entries map as-is and off-diagonal ones pick up ``sqrt(2)``,
        so the coordinate map is an isometry.
        """
        rows, cols = np.triu_indices(self.m)
        weights = np.where(rows == cols, 1.0, np.sqrt(2.0))
        return weights * self.upper

    def _check(self, other):
        if not isinstance(other, SymCoefficients):
            return NotImplemented
        if other.m != self.m:
            raise DimensionError(f"dimension mismatch: {self.m} vs {other.m}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return SymCoefficients(self.m, self.upper + other.upper)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return SymCoefficients(self.m, self.upper - other.upper)

    def __mul__(self, scalar):
        return SymCoefficients(self.m, scalar * self.upper)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymCoefficients):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.m, self.upper.tobytes()))


def symmetrize(u, v) -> SymCoefficients:
    """Coefficients of ``S(u (x) v) = (u (x) v + v (x) u) / 2``."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.ndim != 1 or u.shape != v.shape:
        raise DimensionError(f"vectors must share one dimension, got {u.shape} and {v.shape}")
    outer = np.outer(u, v)
    return SymCoefficients.from_matrix((outer + outer.T) / 2)


@dataclass(frozen=True)
class VectorFamily:
    """An ordered family of real unit vectors in R^m with provenance labels."""

    m: int
    vectors: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=float)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        if vecs.ndim != 2 or vecs.shape[1] != self.m:
            raise DimensionError(f"vectors must have shape (k, {self.m}), got {vecs.shape}")
        norms = np.linalg.norm(vecs, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_TOLERANCE):
            bad = int(np.argmax(np.abs(norms - 1.0)))
            raise ValueError(f"vector {bad} has norm {norms[bad]!r}, expected 1")
        labels = tuple(self.labels) or tuple(f"v_{j + 1}" for j in range(len(vecs)))
        if len(labels) != len(vecs):
            raise ValueError("one label per vector is required")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __add__(self, other: "VectorFamily") -> "VectorFamily":
        if other.m != self.m:
            raise DimensionError(f"dimension mismatch: {self.m} vs {other.m}")
        return VectorFamily(self.m, np.vstack([self.vectors, other.vectors]), self.labels + other.labels)

    @classmethod
    def from_columns(cls, matrix, label_prefix: str = "h") -> "VectorFamily":
        matrix = np.asarray(matrix, dtype=float)
        labels = tuple(f"{label_prefix}_{j + 1}" for j in range(matrix.shape[1]))
        return cls(matrix.shape[0], matrix.T, labels)


def canonical_basis(m: int) -> VectorFamily:
    return VectorFamily(m, np.eye(m), tuple(f"e_{i}" for i in range(1, m + 1)))


def product_matrix(family: VectorFamily) -> np.ndarray:
    """Rows are the symmetric-subspace coordinates of ``v (x) v`` for each member."""
    rows, cols = np.triu_indices(family.m)
    weights = np.where(rows == cols, 1.0, np.sqrt(2.0))
    return family.vectors[:, rows] * family.vectors[:, cols] * weights


def spanning_rank(family: VectorFamily, rtol: float = SPAN_RTOL) -> int:
    """Dimension of ``span{v (x) v : v in family}``.

    Singular values at or below ``max(rows, cols) * sigma_max * rtol`` count as zero.
    """
    if len(family) == 0:
        raise ValueError("family must be non-empty")
    P = product_matrix(family)
    s = np.linalg.svd(P, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > max(P.shape) * s[0] * rtol))


def is_symmetric_spanning(family: VectorFamily, rtol: float = SPAN_RTOL) -> bool:
    return spanning_rank(family, rtol) == symmetric_dimension(family.m)


def closed_form_coefficients(k: int) -> tuple[float, float]:
    """``(alpha_k, beta_k) = (1/sqrt(k + k^2), sqrt(k/(1 + k)))``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 1.0 / np.sqrt(k + k * k), np.sqrt(k / (1.0 + k))


def closed_form_vector(m: int, i: int, k: int) -> np.ndarray:
    """``a_{ik}`` from the closed form, without running Gram-Schmidt.

    For ``k < m`` this is ``alpha_k (e_i - sum_{j<k} e_{i(+)j}) + beta_k e_{i(+)k}``;
    ``a_{im}`` is ``(e_i - sum_{j<m} e_{i(+)j}) / sqrt(m)``.
    """
    _check_family_index(m, i)
    if not 1 <= k <= m:
        raise IndexError(f"k must lie in 1..{m}, got {k}")
    v = np.zeros(m)
    if k == m:
        v[:] = -1.0
        v[i - 1] = 1.0
        return v / np.sqrt(m)
    alpha, beta = closed_form_coefficients(k)
    v[i - 1] = alpha
    for j in range(1, k):
        v[cyclic_add(i, j, m) - 1] = -alpha
    v[cyclic_add(i, k, m) - 1] = beta
    return v


def _check_family_index(m: int, i: int):
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if not 1 <= i <= m:
        raise IndexError(f"i must lie in 1..{m}, got {i}")


def gram_schmidt(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Returns the orthonormalized vectors as rows.
    """
    basis: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):
            for q in basis:
                w = w - np.dot(q, w) * q
        norm = np.linalg.norm(w)
        if norm == 0.0:
            raise ValueError("input vectors are linearly dependent")
        basis.append(w / norm)
    return np.array(basis)


def gram_schmidt_family(m: int, i: int) -> VectorFamily:
    """Orthonormal basis ``a_{i1}, ..., a_{im}`` of R^m.

    Gram-Schmidt runs over ``(e_i + e_{i(+)k}) / sqrt(2)`` for ``k = 1..m-1``
    and then ``e_i``.  Signs are fixed so the ``e_{i(+)k}`` coefficient of
    ``a_{ik}`` is positive for ``k < m`` and the ``e_i`` coefficient of
    ``a_{im}`` is positive.
    """
    _check_family_index(m, i)
    e = np.eye(m)
    inputs = [(e[i - 1] + e[cyclic_add(i, k, m) - 1]) / np.sqrt(2.0) for k in range(1, m)]
    inputs.append(e[i - 1])
    basis = gram_schmidt(inputs)
    for k in range(1, m + 1):
        pivot = cyclic_add(i, k, m) - 1
        if basis[k - 1, pivot] < 0:
            basis[k - 1] = -basis[k - 1]
    labels = tuple(f"a_{{{i},{k}}}" for k in range(1, m + 1))
    return VectorFamily(m, basis, labels)


def spanning_family(m: int) -> VectorFamily:
    """``{e_i} U {a_ik : all i, k}``, the ``m(m+1)``-member symmetric spanning set."""
    family = canonical_basis(m)
    for i in range(1, m + 1):
        family = family + gram_schmidt_family(m, i)
    return family
