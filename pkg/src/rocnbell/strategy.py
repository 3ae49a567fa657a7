"""The canonical quantum strategy attaining ``I_h = n``.

Alice measures pairwise anticommuting involutions (Jordan-Wigner strings on
``r = floor(m/2)`` qubits), Bob measures ``B_j = sum_i h_ij A_i^T`` and the
parties share the maximally entangled state ``|Phi_d> = sum_i |ii> / sqrt(d)``.

The transpose in ``B_j`` is taken in the computational basis used to write
``|Phi_d>``.  Both must refer to the same basis, otherwise the correlation
table no longer reproduces ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from rocnbell.errors import DimensionError, RocnError, SizeLimitError, VerificationError
from rocnbell.rocn import DEFAULT_TOLERANCE, as_rocn, bell_value

DEFAULT_MAX_M = 12
EXPLICIT_STATE_MAX_D = 8

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _kron_all(factors):
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


@dataclass(frozen=True)
class ObservableSet:
    """A stack of ``d x d`` observables, ``ops[k]`` being the k-th one."""

    d: int
    ops: np.ndarray

    def __post_init__(self):
        ops = np.array(self.ops, dtype=complex)
        if ops.ndim != 3 or ops.shape[1:] != (self.d, self.d):
            raise DimensionError(f"ops must have shape (k, {self.d}, {self.d}), got {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        return len(self.ops)

    def __getitem__(self, k):
        return self.ops[k]

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.ops - self.ops.conj().transpose(0, 2, 1)), initial=0.0))

    def involution_residual(self) -> float:
        squares = self.ops @ self.ops
        return float(np.max(np.abs(squares - np.eye(self.d)), initial=0.0))

    def anticommutation_residual(self) -> float:
        """``max_{i != k} |{O_i, O_k}|_max``."""
        worst = 0.0
        for i in range(len(self.ops)):
            for k in range(i + 1, len(self.ops)):
                anti = self.ops[i] @ self.ops[k] + self.ops[k] @ self.ops[i]
                worst = max(worst, float(np.max(np.abs(anti))))
        return worst

    def trace_gram(self) -> np.ndarray:
        """``Tr(O_i O_k)`` for all pairs."""
        return np.einsum("iab,kba->ik", self.ops, self.ops)


@dataclass(frozen=True)
class QuantumStrategy:
    d: int
    alice: ObservableSet
    bob: ObservableSet
    state_form: str = "maximally-entangled"

    @property
    def m(self) -> int:
        return len(self.alice)

    @property
    def n(self) -> int:
        return len(self.bob)


@dataclass(frozen=True)
class CorrelationTable:
    mean_A: np.ndarray
    mean_B: np.ndarray
    joint: np.ndarray

    @property
    def m(self) -> int:
        return self.joint.shape[0]

    @property
    def n(self) -> int:
        return self.joint.shape[1]


def clifford_generators(m: int, max_m: int = DEFAULT_MAX_M) -> ObservableSet:
    """Jordan-Wigner representation of ``m`` anticommuting Hermitian involutions.

    With ``r = floor(m/2)`` qubits, generator ``2p-1`` is ``Z^(p-1) X I^(r-p)``
    and generator ``2p`` is ``Z^(p-1) Y I^(r-p)``.  For odd ``m`` the last
    generator is ``Z^r``.
    """
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise RocnError(f"m must be an integer >= 2, got {m!r}")
    if m > max_m:
        raise SizeLimitError(f"m must be <= {max_m}, got m={m}")
    r = m // 2
    ops = []
    for p in range(1, r + 1):
        prefix = [PAULI_Z] * (p - 1)
        suffix = [PAULI_I] * (r - p)
        ops.append(_kron_all(prefix + [PAULI_X] + suffix))
        ops.append(_kron_all(prefix + [PAULI_Y] + suffix))
    if m % 2:
        ops.append(_kron_all([PAULI_Z] * r))
    return ObservableSet(2**r, np.array(ops))


def canonical_strategy(h, max_m: int = DEFAULT_MAX_M) -> QuantumStrategy:
    h = as_rocn(h)
    alice = clifford_generators(h.m, max_m)
    transposed = alice.ops.transpose(0, 2, 1)
    bob = np.einsum("ij,iab->jab", h.entries, transposed)
    return QuantumStrategy(alice.d, alice, ObservableSet(alice.d, bob))


def correlations(strategy: QuantumStrategy) -> CorrelationTable:
    """Expectation values on ``|Phi_d>`` via ``<A (x) B> = Tr(A B^T) / d``."""
    d = strategy.d
    A = strategy.alice.ops
    B = strategy.bob.ops
    mean_A = np.einsum("iaa->i", A).real / d
    mean_B = np.einsum("jaa->j", B).real / d
    # Tr(A B^T) = sum_ab A_ab B_ab
    joint = np.einsum("iab,jab->ij", A, B).real / d
    return CorrelationTable(mean_A, mean_B, joint)


def maximally_entangled_state(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)


def correlations_explicit(strategy: QuantumStrategy, max_d: int = EXPLICIT_STATE_MAX_D) -> CorrelationTable:
    """Same table as :func:`correlations`, evaluated as ``<Phi|A (x) B|Phi>`` on the full state."""
    d = strategy.d
    if d > max_d:
        raise SizeLimitError(f"explicit state evaluation is limited to d <= {max_d}, got d={d}")
    phi = maximally_entangled_state(d)
    eye = np.eye(d)

    def expect(op):
        return float(np.real(phi.conj() @ op @ phi))

    mean_A = np.array([expect(np.kron(a, eye)) for a in strategy.alice.ops])
    mean_B = np.array([expect(np.kron(eye, b)) for b in strategy.bob.ops])
    joint = np.array([[expect(np.kron(a, b)) for b in strategy.bob.ops] for a in strategy.alice.ops])
    return CorrelationTable(mean_A, mean_B, joint)


def probabilities(table: CorrelationTable, tolerance: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """Outcome probabilities ``p[i, j, a, b]`` with index 0 for outcome +1 and 1 for -1.

    ``p(a,b|i,j) = (1 + a<A_i> + b<B_j> + ab<A_i B_j>) / 4``.
    """
    for name, values in (("mean_A", table.mean_A), ("mean_B", table.mean_B), ("joint", table.joint)):
        if np.any(np.abs(values) > 1.0 + tolerance):
            raise ValueError(f"{name} has entries outside [-1, 1]")
    outcomes = np.array([1.0, -1.0])
    a = outcomes[None, None, :, None]
    b = outcomes[None, None, None, :]
    A = table.mean_A[:, None, None, None]
    B = table.mean_B[None, :, None, None]
    AB = table.joint[:, :, None, None]
    return 0.25 * (1.0 + a * A + b * B + a * b * AB)


def joint_from_probabilities(p: np.ndarray) -> np.ndarray:
    """``<A_i B_j> = sum_ab a b p(a,b|i,j)``."""
    outcomes = np.array([1.0, -1.0])
    return np.einsum("ijab,a,b->ij", p, outcomes, outcomes)


def verification_residuals(h, max_m: int = DEFAULT_MAX_M) -> dict[str, float]:
    """Numerical residuals of the canonical strategy for ``h``.

    Keys: ``bell_value``, ``bound_gap`` (``|I_h - n|``), ``alice_anticommutation``,
    ``alice_involution``, ``alice_hermiticity``, ``bob_involution``,
    ``bob_hermiticity``, ``moment_identity`` (``|joint - h|_max``),
    ``probability_normalization``, ``probability_negativity``.
    """
    h = as_rocn(h)
    strat = canonical_strategy(h, max_m)
    table = correlations(strat)
    p = probabilities(table)
    value = bell_value(h, table.joint)
    return {
        "bell_value": value,
        "bound_gap": abs(value - h.n),
        "alice_anticommutation": strat.alice.anticommutation_residual(),
        "alice_involution": strat.alice.involution_residual(),
        "alice_hermiticity": strat.alice.hermiticity_residual(),
        "bob_involution": strat.bob.involution_residual(),
        "bob_hermiticity": strat.bob.hermiticity_residual(),
        "moment_identity": float(np.max(np.abs(table.joint - h.entries))),
        "probability_normalization": float(np.max(np.abs(p.sum(axis=(2, 3)) - 1.0))),
        "probability_negativity": float(max(0.0, -p.min())),
    }


def verify_quantum_bound(h, tolerance: float = DEFAULT_TOLERANCE, max_m: int = DEFAULT_MAX_M) -> float:
    """``|I_h(canonical strategy) - n|``.

    Raises:
        VerificationError: the gap exceeds ``tolerance``.
    """
    h = as_rocn(h)
    table = correlations(canonical_strategy(h, max_m))
    gap = abs(bell_value(h, table.joint) - h.n)
    if gap > tolerance:
        raise VerificationError(f"canonical Bell value misses n={h.n} by {gap:.3e} (> {tolerance:.1e})")
    return gap
