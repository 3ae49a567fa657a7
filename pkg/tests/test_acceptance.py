"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import numpy as np
import pytest
import sympy as sp

from conftest import (
    H_CHSH,
    PRINTED_M2_BLOCKS,
    PRINTED_M4_BLOCKS,
    exact_gram_schmidt_blocks,
    printed_exact_blocks,
    random_block_rocn,
    random_orthogonal,
)
from rocnbell import (
    DimensionError,
    bell_value,
    build_self_testing_matrix,
    canonical_strategy,
    classical_bound,
    clifford_generators,
    correlations,
    preset,
    probabilities,
    quantum_bound,
    rank_criterion,
    validate_rocn,
)
from rocnbell.selftest import build_moment_matrix
from rocnbell.strategy import correlations_explicit, joint_from_probabilities
from rocnbell.symspan import (
    VectorFamily,
    closed_form_vector,
    gram_schmidt_family,
    spanning_rank,
)

EVEN_M = (2, 4, 6, 8, 10, 12)
RESULTS = []


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def canonical_fixtures():
    fixtures = {"chsh": H_CHSH, "elegant": preset("elegant").entries}
    for m in (2, 4, 6):
        fixtures[f"construct m={m}"] = build_self_testing_matrix(m).entries
    return fixtures


def test_criterion_01_construction_fixtures():
    exact = all(
        sp.simplify(ours - printed) == sp.zeros(m, m)
        for m in (2, 4)
        for ours, printed in zip(exact_gram_schmidt_blocks(m), printed_exact_blocks(m))
    )
    h2 = build_self_testing_matrix(2).entries
    h4 = build_self_testing_matrix(4).entries
    target2 = np.hstack(PRINTED_M2_BLOCKS)
    ulp2 = np.max(np.abs(h2 - target2) / np.spacing(np.maximum(np.abs(target2), 1e-300)))
    err4 = np.max(np.abs(h4 - np.hstack(PRINTED_M4_BLOCKS)))
    ok = exact and h2.shape == (2, 6) and h4.shape == (4, 20) and ulp2 <= 1 and err4 <= 1e-12
    record(1, "construction reproduces the m=2 and m=4 blocks", ok,
           f"exact surds match={exact}, m=2 max {ulp2:.0f} ulp, m=4 max err {err4:.1e}")


def test_criterion_02_closed_form_gram_schmidt():
    worst, worst_final = 0.0, 0.0
    for m in EVEN_M:
        for i in range(1, m + 1):
            fam = gram_schmidt_family(m, i).vectors
            for k in range(1, m):
                worst = max(worst, np.max(np.abs(fam[k - 1] - closed_form_vector(m, i, k))))
            final = closed_form_vector(m, i, m)
            worst_final = max(worst_final, min(np.max(np.abs(fam[-1] - final)), np.max(np.abs(fam[-1] + final))))
    ok = worst <= 1e-12 and worst_final <= 1e-12
    record(2, "Gram-Schmidt matches alpha_k, beta_k closed forms", ok,
           f"max err {worst:.1e}, final-vector err {worst_final:.1e}")


def test_criterion_03_spanning():
    ranks = {m: spanning_rank(VectorFamily.from_columns(build_self_testing_matrix(m).entries), rtol=1e-12)
             for m in EVEN_M}
    ok = all(r == m * (m + 1) // 2 for m, r in ranks.items())
    record(3, "constructed columns span the symmetric subspace", ok, f"ranks {ranks}")


def test_criterion_04_rank():
    details = {}
    ok = True
    for m in EVEN_M:
        need = m * (m - 1) // 2
        with_id = rank_criterion(build_self_testing_matrix(m, True)).rank_M
        without = rank_criterion(build_self_testing_matrix(m, False)).rank_M
        ident = rank_criterion(np.eye(m)).rank_M
        details[m] = (with_id, without, ident)
        ok &= with_id == need and without == need and ident == 0
    chsh = rank_criterion(H_CHSH).rank_M
    ok &= chsh == 1
    record(4, "rank(M) = m(m-1)/2 with/without identity block; I_m -> 0; CHSH -> 1", ok,
           f"(with, without, identity) {details}, chsh {chsh}")


def test_criterion_05_criterion_ordering():
    rng = np.random.default_rng(5)
    counterexamples = spanning_true = rank_true = 0
    for trial in range(1000):
        m = (2, 4)[trial % 2]
        h = random_block_rocn(m, int(rng.integers(1, 5)), rng)
        v = rank_criterion(h)
        spanning_true += v.spanning_passes
        rank_true += v.rank_passes
        counterexamples += v.spanning_passes and not v.rank_passes
    chsh = rank_criterion(H_CHSH)
    converse_fails = chsh.rank_passes and not chsh.spanning_passes
    ok = counterexamples == 0 and converse_fails and spanning_true > 0
    record(5, "spanning implies rank on 1000 random matrices; CHSH breaks the converse", ok,
           f"counterexamples {counterexamples}, spanning {spanning_true}, rank {rank_true}")


def test_criterion_06_quantum_bound():
    gaps, moments = {}, {}
    for name, h in canonical_fixtures().items():
        joint = correlations(canonical_strategy(h)).joint
        gaps[name] = abs(bell_value(h, joint) - h.shape[1])
        moments[name] = float(np.max(np.abs(joint - h)))
    ok = max(gaps.values()) <= 1e-9 and max(moments.values()) <= 1e-12
    record(6, "canonical strategies attain n", ok,
           f"max |I-n| {max(gaps.values()):.1e}, max |joint-h| {max(moments.values()):.1e}")


def test_criterion_07_classical_bounds():
    chsh = classical_bound(H_CHSH)
    ok = abs(chsh - np.sqrt(2)) <= 1e-12
    identities = {m: classical_bound(np.eye(m)) for m in EVEN_M}
    ok &= all(v == m for m, v in identities.items())
    ok &= all(quantum_bound(np.eye(m)) == classical_bound(np.eye(m)) for m in EVEN_M)
    fixtures = dict(canonical_fixtures())
    for m in EVEN_M:
        fixtures[f"construct m={m}"] = build_self_testing_matrix(m).entries
        fixtures[f"construct m={m} no identity"] = build_self_testing_matrix(m, False).entries
    strict = {name: classical_bound(h) < quantum_bound(h) for name, h in fixtures.items()}
    ok &= all(strict.values())
    record(7, "exhaustive classical bounds", ok,
           f"chsh {chsh:.15f}, identity exact={all(v == m for m, v in identities.items())}, "
           f"strict on {sum(strict.values())}/{len(strict)} fixtures")


def test_criterion_08_observable_invariants():
    worst = 0.0
    for m in range(2, 13):
        gens = clifford_generators(m)
        trace_err = np.max(np.abs(gens.trace_gram() - gens.d * np.eye(m)))
        traces = np.max(np.abs(np.einsum("iaa->i", gens.ops)))
        worst = max(worst, gens.anticommutation_residual(), gens.involution_residual(),
                    gens.hermiticity_residual(), trace_err, traces)
    path_err = 0.0
    fixtures = canonical_fixtures()
    fixtures["identity m=6"] = np.eye(6)
    for h in fixtures.values():
        s = canonical_strategy(h)
        if s.d <= 8:
            a, b = correlations(s), correlations_explicit(s)
            path_err = max(path_err, np.max(np.abs(a.joint - b.joint)),
                           np.max(np.abs(a.mean_A - b.mean_A)), np.max(np.abs(a.mean_B - b.mean_B)))
    ok = worst <= 1e-12 and path_err <= 1e-12
    record(8, "Clifford generator invariants and correlation paths", ok,
           f"max generator residual {worst:.1e}, path disagreement {path_err:.1e}")


def test_criterion_09_probabilities():
    neg, norm, trip = 0.0, 0.0, 0.0
    for h in canonical_fixtures().values():
        table = correlations(canonical_strategy(h))
        p = probabilities(table)
        neg = max(neg, -p.min())
        norm = max(norm, np.max(np.abs(p.sum(axis=(2, 3)) - 1)))
        trip = max(trip, np.max(np.abs(joint_from_probabilities(p) - table.joint)))
    ok = neg <= 1e-12 and norm <= 1e-12 and trip <= 1e-12
    record(9, "probability tensors are valid and round-trip", ok,
           f"min p {-neg:.1e}, normalization {norm:.1e}, round-trip {trip:.1e}")


def test_criterion_10_counting_bound():
    rng = np.random.default_rng(10)
    candidates = list(canonical_fixtures().values())
    candidates = [h for h in candidates if h.shape[0] % 2 == 0]
    candidates += [build_self_testing_matrix(m, inc) for m in EVEN_M for inc in (True, False)]
    candidates += [random_block_rocn(m, int(rng.integers(1, 5)), rng) for m in (2, 4, 6) for _ in range(50)]
    candidates += [random_orthogonal(4, rng) for _ in range(20)]
    violations = 0
    for h in candidates:
        v = rank_criterion(h)
        entries = getattr(h, "entries", h)
        if v.rank_passes and not entries.shape[1] > entries.shape[0] * (entries.shape[0] - 1) // 2:
            violations += 1
    # h = I_2 has a 2 x 1 (zero) moment matrix and must fail
    identity = rank_criterion(np.eye(2))
    moment_shape = build_moment_matrix(np.eye(2)).shape
    # a literal 2 x 1 coefficient matrix cannot be ROCN at all
    try:
        validate_rocn(np.array([[1.0], [0.0]]))
        tall_rejected = False
    except DimensionError:
        tall_rejected = True
    small_fail = all(not rank_criterion(random_orthogonal(4, rng)).rank_passes for _ in range(20))
    ok = violations == 0 and moment_shape == (2, 1) and not identity.rank_passes and tall_rejected and small_fail
    record(10, "rank passing implies n > m(m-1)/2", ok,
           f"{violations} violations over {len(candidates)} matrices; 2x1 moment fixture fails={not identity.rank_passes}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
