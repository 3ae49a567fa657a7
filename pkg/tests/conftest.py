import itertools

import numpy as np
import pytest

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)
SQ6 = np.sqrt(6.0)


def random_orthogonal(m, rng):
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


def random_block_rocn(m, blocks, rng):
    """Concatenation of ``blocks`` random orthogonal m x m matrices."""
    return np.hstack([random_orthogonal(m, rng) for _ in range(blocks)])


def brute_force_local_bound(h):
    """Enumerate every deterministic strategy of both parties."""
    m, n = h.shape
    best = -np.inf
    for a in itertools.product((1.0, -1.0), repeat=m):
        for b in itertools.product((1.0, -1.0), repeat=n):
            best = max(best, float(np.asarray(a) @ h @ np.asarray(b)))
    return best


def qr_orthonormalize(vectors):
    """Gram-Schmidt oracle via Householder QR; rows in, rows out, up to signs."""
    q, _ = np.linalg.qr(np.asarray(vectors).T)
    return q.T


# Blocks printed in the m = 4 example, with the entries sqrt(3/2) read as
# sqrt(3)/2 and 1/2sqrt3 read as 1/(2 sqrt(3)).
_C1 = np.array([1 / SQ2, 1 / SQ2, 0, 0])
_C2 = np.array([1 / SQ6, -1 / SQ6, np.sqrt(2 / 3), 0])
_C3 = np.array([1 / (2 * SQ3), -1 / (2 * SQ3), -1 / (2 * SQ3), SQ3 / 2])
_C4 = np.array([0.5, -0.5, -0.5, -0.5])
PRINTED_M4_O1 = np.column_stack([_C1, _C2, _C3, _C4])
PRINTED_M4_BLOCKS = [np.eye(4)] + [np.roll(PRINTED_M4_O1, shift, axis=0) for shift in range(4)]

PRINTED_M2_BLOCKS = [
    np.eye(2),
    np.array([[1.0, 1.0], [1.0, -1.0]]) / SQ2,
    np.array([[1.0, -1.0], [1.0, 1.0]]) / SQ2,
]

H_CHSH = np.array([[1.0, 1.0], [1.0, -1.0]]) / SQ2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def exact_gram_schmidt_blocks(m):
    """Blocks O^(1)..O^(m) in exact surd arithmetic, with the library's sign convention."""
    import sympy as sp

    e = sp.eye(m)
    blocks = []
    for i in range(m):
        inputs = [(e[:, i] + e[:, (i + k) % m]) / sp.sqrt(2) for k in range(1, m)] + [e[:, i]]
        basis = []
        for v in inputs:
            w = v - sum((q.dot(v) * q for q in basis), sp.zeros(m, 1))
            w = sp.simplify(w / sp.sqrt(w.dot(w)))
            basis.append(w)
        for k, q in enumerate(basis, start=1):
            if q[(i + k) % m] < 0:
                basis[k - 1] = -q
        blocks.append(sp.Matrix.hstack(*basis))
    return blocks


def printed_exact_blocks(m):
    """Printed example blocks O^(1)..O^(m) in exact form (m = 2 or 4)."""
    import sympy as sp

    if m == 2:
        s = 1 / sp.sqrt(2)
        return [sp.Matrix([[s, s], [s, -s]]), sp.Matrix([[s, -s], [s, s]])]
    r2, r3, r6 = sp.sqrt(2), sp.sqrt(3), sp.sqrt(6)
    c3 = 1 / (2 * r3)
    O1 = sp.Matrix(
        [
            [1 / r2, 1 / r6, c3, sp.Rational(1, 2)],
            [1 / r2, -1 / r6, -c3, -sp.Rational(1, 2)],
            [0, sp.sqrt(sp.Rational(2, 3)), -c3, -sp.Rational(1, 2)],
            [0, 0, r3 / 2, -sp.Rational(1, 2)],
        ]
    )
    rows = [O1.row(r) for r in range(4)]
    return [sp.Matrix.vstack(*(rows[(r - shift) % 4] for r in range(4))) for shift in range(4)]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
