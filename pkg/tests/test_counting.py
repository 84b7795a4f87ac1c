import itertools
from fractions import Fraction

import numpy as np
import pytest

from nilcomm.counting import (
    BudgetExceeded, CountReport, all_vectors, batched_rank_mod_p, budget_from_env,
    claimed_dim_W, count_commuting_nilpotent, count_commuting_nilpotent_bruteforce,
    count_report, count_Ust, count_Ust_bruteforce, count_V, count_W, count_W_bruteforce,
    fit_dimension, gl_order,
)
from nilcomm.linalg import rref_mod_p


def _rank(m, q):
    return len(rref_mod_p([[int(x) for x in r] for r in m], q)[0])


def test_all_vectors_lexicographic():
    v = all_vectors(3, 2)
    assert v.tolist()[:4] == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert all_vectors(2, 3, 2, 5).tolist() == [[0, 1, 0], [0, 1, 1], [1, 0, 0]]


def test_small_closed_forms():
    for q in (2, 3, 5, 7):
        assert count_Ust(1, 1, q) == 2 * q - 1
        assert count_W(1, 1, 1, q) == q * q
        assert count_V(2, 1, 0, q) == q * q - 1
        assert count_commuting_nilpotent(2, 1, q) == q * q
    for q in (2, 3):
        assert count_commuting_nilpotent(3, 1, q) == q ** 6


@pytest.mark.parametrize("s,t,q", [(1, 2, 3), (2, 1, 3), (2, 2, 2), (1, 3, 2)])
def test_ust_matches_bruteforce(s, t, q):
    assert count_Ust(s, t, q) == count_Ust_bruteforce(s, t, q)


@pytest.mark.parametrize("s,t", [(1, 2), (1, 3), (2, 3)])
def test_ust_symmetry(s, t):
    for q in (2, 3):
        assert count_Ust(s, t, q) == count_Ust(t, s, q)


@pytest.mark.parametrize("r,s,t,q", [(2, 1, 1, 2), (2, 1, 1, 3), (2, 2, 1, 2), (2, 1, 2, 2), (3, 1, 1, 3)])
def test_w_matches_bruteforce(r, s, t, q):
    assert count_W(r, s, t, q) == count_W_bruteforce(r, s, t, q)


def test_w_example():
    assert count_W(2, 1, 1, 2) == 10


@pytest.mark.parametrize("q", [2, 3])
def test_v_matches_rank_loop(q):
    c = 2
    counts = {}
    for entries in itertools.product(range(q), repeat=c * c):
        u = np.array(entries).reshape(c, c)
        key = (_rank(u, q), _rank(u @ u % q, q))
        counts[key] = counts.get(key, 0) + 1
    for m in range(2):
        for l in range(3 - 2 * m):
            key = (c - m - l, c - 2 * m - l)
            assert count_V(c, m, l, q) == counts.get(key, 0)


def test_v_invertible_stratum_is_gl():
    for q in (2, 3):
        assert count_V(2, 0, 0, q) == gl_order(2, q)
        assert count_V(3, 0, 0, q) == gl_order(3, q)


@pytest.mark.parametrize("n,r,q", [(2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 2, 2)])
def test_commuting_matches_bruteforce(n, r, q):
    assert count_commuting_nilpotent(n, r, q) == count_commuting_nilpotent_bruteforce(n, r, q)


def test_commuting_pairs_gl2():
    for q in (2, 3, 5):
        assert count_commuting_nilpotent(2, 2, q) == q ** 3 + q ** 2 - q


def test_degenerate_cases():
    assert count_Ust(0, 3, 5) == 1
    assert count_W(2, 0, 3, 5) == 1
    assert count_V(0, 0, 0, 3) == 1
    assert count_commuting_nilpotent(0, 4, 3) == 1
    assert count_commuting_nilpotent(2, 0, 3) == 1


def test_errors():
    with pytest.raises(ValueError):
        count_Ust(1, 1, 4)
    with pytest.raises(ValueError):
        count_V(2, 1, 1, 3)
    with pytest.raises(ValueError):
        count_commuting_nilpotent(4, 2, 2)
    with pytest.raises(ValueError):
        count_W(0, 1, 1, 2)
    with pytest.raises(BudgetExceeded):
        count_Ust(2, 2, 5, budget=100)
    with pytest.raises(BudgetExceeded):
        count_commuting_nilpotent(3, 2, 3, budget=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("NILCOMM_BUDGET", "50")
    assert budget_from_env() == 50
    with pytest.raises(BudgetExceeded):
        count_V(2, 1, 0, 3)
    monkeypatch.delenv("NILCOMM_BUDGET")
    assert budget_from_env() == 10 ** 8


def test_batched_rank():
    rng = np.random.default_rng(0)
    mats = rng.integers(0, 5, size=(40, 3, 4))
    assert batched_rank_mod_p(mats, 5).tolist() == [_rank(m, 5) for m in mats]


def test_fit_examples_and_errors():
    assert fit_dimension([(2, 8), (3, 27), (5, 125)]) == 3
    assert fit_dimension([(3, 9), (2, 4)]) == 2
    with pytest.raises(ValueError):
        fit_dimension([(2, 4)])
    with pytest.raises(ValueError):
        fit_dimension([(2, 0), (3, 1)])


def test_claimed_w():
    assert claimed_dim_W(2, 1, 1) == (3, "exact")
    assert claimed_dim_W(3, 2, 1) == (6, "exact")
    assert claimed_dim_W(2, 3, 1) == (7, "exact")
    assert claimed_dim_W(2, 2, 2) == (14, "upper_bound")


def test_report_verdicts():
    rep = CountReport("U", {"s": 1, "t": 1}, samples=[(2, 4), (3, 9)], claimed_dim=2)
    assert rep.verdict == "PASS"
    rep.claimed_dim = 3
    assert rep.verdict == "FAIL"
    rep.claim_kind = "upper_bound"
    assert rep.verdict == "PASS"
    assert CountReport("U", {}, samples=[(2, 4)], claimed_dim=2).verdict == "INCONCLUSIVE"


def test_report_deterministic_and_skips():
    a = count_report("W", {"r": 2, "s": 1, "t": 1}, [2, 3, 5])
    b = count_report("W", {"r": 2, "s": 1, "t": 1}, [2, 3, 5])
    assert a.to_dict() == b.to_dict()
    assert a.to_dict()["verdict"] == "PASS"
    assert a.to_csv().splitlines()[0] == "q,count"
    small = count_report("U", {"s": 2, "t": 2}, [2, 3, 5], budget=50)
    assert small.skipped == [3, 5] and small.fitted_dim is None
    with pytest.raises(ValueError):
        count_report("X", {}, [2])


def test_report_tolerance_is_fraction():
    assert count_report("Cnil", {"n": 2, "r": 1}, [2, 3]).tolerance == Fraction(6, 10)
