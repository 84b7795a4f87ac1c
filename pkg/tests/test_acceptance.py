"""End-to-end acceptance criteria, one test (or sub-test) per criterion.

Each test carries ``@pytest.mark.acceptance(label, what=...)``; the conftest
prints one PASS/FAIL line per label after the run.  Time limits are asserted
inside the tests.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from nilcomm.appendix import (
    EXCEPTIONS_A, EXCEPTIONS_B, eval_N, special_partition, special_case_bound,
    verify_case_constants, verify_difference_identities, verify_lemma_A1, verify_sos_identities,
)
from nilcomm.complexity import ratio_inequality_check
from nilcomm.components import (
    crossover_lists, dim_ccv_nilpotent, dim_G_u_component, jacobian_component_dim,
)
from nilcomm.counting import (
    count_commuting_nilpotent, count_commuting_nilpotent_bruteforce, count_report,
)
from nilcomm.linalg import QQ, centralizer_basis, rank, vstack, ExactMatrix
from nilcomm.nilpotent import (
    square_zero_cocharacter, square_zero_form, square_zero_weight0_nilpotent,
    square_zero_zprime_basis, square_zero_zprime_element, standard_nilpotent,
    weight_component, zprime_counterexample_charp, zprime_membership,
)
from nilcomm.partitions import centralizer_dim_by_multiplicities, enumerate_partitions

# Displayed pair list for the ordinary commuting variety vs the generic component.
ORDINARY_PAIRS = [(4, 4), (4, 5), (4, 6), (4, 7), (5, 4), (5, 5), (5, 6), (6, 4), (6, 5),
                  (7, 4), (8, 4), (9, 4), (10, 4)]


@pytest.mark.acceptance("1", what="centralizer kernel dim = sum (a_i+...+a_m)^2, n <= 7")
def test_c1_centralizer_oracle(criterion):
    start = time.perf_counter()
    checked = 0
    for n in range(0, 8):
        for lam in enumerate_partitions(n):
            e = standard_nilpotent(lam, QQ).matrix
            kernel_dim = len(centralizer_basis(e)) if n else 0
            assert kernel_dim == centralizer_dim_by_multiplicities(lam), lam
            checked += 1
    assert checked == 45
    assert time.perf_counter() - start < 10


@pytest.mark.acceptance("2", what="(r+1)floor(n^2/4) = dim G.u^r = Jacobian rank, 4<=n<=8, 7<=r<=10")
def test_c2_main_theorem_triangulation(criterion):
    start = time.perf_counter()
    for n in range(4, 9):
        s = n // 2
        for r in range(7, 11):
            closed = dim_ccv_nilpotent(n, r)
            assert dim_G_u_component(n, s, r) == closed
            for seed in range(3):
                assert jacobian_component_dim(n, s, r, seed=seed) == closed, (n, r, seed)
    assert time.perf_counter() - start < 60


@pytest.fixture(scope="module")
def lemma_report():
    start = time.perf_counter()
    rep = verify_lemma_A1()
    return rep, time.perf_counter() - start


@pytest.mark.acceptance("3.a", what="non-positive N2(7) in default box = 16-tuple list (a)")
def test_c3a_exception_list(criterion, lemma_report):
    rep, elapsed = lemma_report
    assert set(rep.nonpositive) == set(EXCEPTIONS_A)
    assert elapsed < 30


@pytest.mark.acceptance("3.b", what="every list-(b) tuple has N2(7) > -2")
def test_c3b_list_b(criterion, lemma_report):
    rep, _ = lemma_report
    assert set(rep.list_b_values) == set(EXCEPTIONS_B)
    assert all(v > -2 for v in rep.list_b_values.values())


@pytest.mark.acceptance("3.c", what="N2(1,1,0,0,7) = 0 exactly")
def test_c3c_special_zero(criterion):
    assert eval_N(1, 1, 0, 0, 7)[1] == 0


@pytest.mark.acceptance("3.d", what="A1 >= (d-b)^2/4 fails only at (0,1,0,1)")
def test_c3d_a1_square_bound(criterion, lemma_report):
    rep, _ = lemma_report
    # Evaluated literally; the bound fails on the whole line (0,1,0,d).
    assert set(rep.a1_below_square) == {(0, 1, 0, 1)}


@pytest.mark.acceptance("4", what="SOS decompositions are exact identities; 54/11 -> 5 fails")
def test_c4_sos_identities(criterion):
    start = time.perf_counter()
    results = verify_sos_identities()
    positives = [x for x in results if x.expected]
    negatives = [x for x in results if not x.expected]
    assert len(positives) == 7 and all(x.passed for x in positives)
    assert len(negatives) == 1 and not negatives[0].passed
    assert time.perf_counter() - start < 5


@pytest.mark.acceptance("5", what="N1'(7) slices are the constants -2/3, -1, -14/3, -11/3, -2")
def test_c5_slice_constants(criterion):
    rep = verify_case_constants()
    got = {(s["b"], s["c"]): s for s in rep.slices}
    want = {(2, 1): "-2/3", (1, 1): "-1/1", (1, 0): "-14/3", (2, 0): "-11/3", (0, 0): "-2/1"}
    for key, val in want.items():
        assert got[key]["constant"] and got[key]["value"] == val, key


@pytest.mark.acceptance("6", what="crossover_lists(30, 30) matches both displayed lists")
def test_c6_crossover(criterion):
    nil, ordinary = crossover_lists(30, 30)
    assert nil == [(4, 4), (5, 4)]
    assert sorted(ordinary) == sorted(ORDINARY_PAIRS)


@pytest.mark.acceptance("7", what="point counts: C_2(N(gl_2)) exact; fits for U, W, V, C within 0.6")
def test_c7_point_counts(criterion):
    start = time.perf_counter()
    for q in (2, 3, 5):
        want = q ** 3 + q ** 2 - q
        assert count_commuting_nilpotent_bruteforce(2, 2, q) == want
        assert count_commuting_nilpotent(2, 2, q) == want
    cases = [("U", {"s": 2, "t": 2}, 4), ("W", {"r": 3, "s": 2, "t": 1}, 6),
             ("V", {"c": 2, "m": 1, "l": 0}, 2), ("Cnil", {"n": 3, "r": 2}, 8)]
    for variety, params, target in cases:
        rep = count_report(variety, params, [2, 3, 5])
        assert rep.claimed_dim == target
        assert len(rep.samples) >= 2, (variety, rep.skipped)
        assert abs(rep.fitted_dim - target) <= Fraction(6, 10), (variety, rep.fitted_dim)
    assert time.perf_counter() - start < 300


def _span_dim(mats):
    return rank(vstack([ExactMatrix.from_rows([list(m.vec())], QQ) for m in mats]))


@pytest.mark.acceptance("8", what="z' rank test: explicit set passes, weight-0 perturbation fails, char p")
def test_c8_zprime(criterion):
    start = time.perf_counter()
    rng = random.Random(8)
    for s, t in [(1, 1), (2, 0), (2, 1)]:
        e = square_zero_form(s, t)
        basis = square_zero_zprime_basis(s, t)
        assert _span_dim(basis) == s * (s + t)
        samples = list(basis)
        for _ in range(3):
            samples.append(square_zero_zprime_element(
                [[rng.randint(-9, 9) for _ in range(t)] for _ in range(s)],
                [[rng.randint(-9, 9) for _ in range(s)] for _ in range(s)], s, t))
        assert all(zprime_membership(e, y) for y in samples)
        pert = square_zero_weight0_nilpotent(s, t)
        cochar = square_zero_cocharacter(s, t)
        if pert is None:
            # z(e;0) is diagonal here, so its only nilpotent is 0
            weight0 = [weight_component(z, cochar, 0) for z in centralizer_basis(e)]
            assert all(z[i, j] == 0 for z in weight0 for i in range(z.rows)
                       for j in range(z.cols) if i != j)
        else:
            assert cochar.weight_of(pert) == 0
            assert all(not zprime_membership(e, y + pert) for y in samples)
    assert zprime_counterexample_charp(3)
    assert zprime_counterexample_charp(5)
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance("9", what="special partition bounds strict; difference identity for d <= 20")
def test_c9_special_cases(criterion):
    for r in range(7, 13):
        for fam in ("3,2,2,1^d", "3,3,2,2,1^d"):
            for d in range(7):
                res = special_case_bound(special_partition(fam, d), r)
                assert res.strict and res.derivation_ok, (fam, d, r)
        res = special_case_bound(special_partition("4,3"), r)
        assert res.strict and res.derivation_ok
        assert verify_difference_identities(r, 20)


@pytest.mark.acceptance("10", what="p-rank of SL_n(F_{p^r}) equals r/(r+1) times G_(r) complexity")
def test_c10_complexity(criterion):
    chk = ratio_inequality_check(4, 7, 5)
    assert (chk.lhs, chk.rhs, chk.equality) == (28, Fraction(28), True)
    assert Fraction(7, 8) * 32 == chk.rhs
    for n, r, p in itertools.product(range(4, 9), range(7, 11), (5, 7)):
        assert ratio_inequality_check(n, r, p).equality, (n, r, p)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
