from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilcomm.counting import batched_rank_mod_p
from nilcomm.linalg import (
    GF, QQ, ExactMatrix, FieldSpec, ad_matrix, centralizer_basis, commutator, echelon, hstack,
    is_nilpotent, is_prime, kernel_basis, kernel_mod_p, rank, rref_mod_p, vstack,
)


def small_matrices(max_rows=5, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_field_spec_parse_and_str():
    assert FieldSpec.parse("q") == QQ
    assert FieldSpec.parse("p:7") == GF(7)
    assert str(GF(7)) == "p:7" and str(QQ) == "q"
    with pytest.raises(ValueError):
        FieldSpec.parse("p:8")
    with pytest.raises(ValueError):
        FieldSpec.parse("r")


def test_is_prime_small():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_field_coercion_mod_p():
    m = ExactMatrix.from_rows([[7, -1], [12, 5]], GF(5))
    assert m.to_rows() == [[2, 4], [2, 0]]


def test_arithmetic_and_power():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.identity(2)
    assert (a @ b) == a
    assert (a ** 2).to_rows() == [[7, 10], [15, 22]]
    assert (a - a).is_zero()
    assert (a * Fraction(1, 2))[1, 1] == 2
    assert a.T().to_rows() == [[1, 3], [2, 4]]


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        ExactMatrix.identity(2) + ExactMatrix.identity(3)
    with pytest.raises(ValueError):
        commutator(ExactMatrix.identity(2), ExactMatrix.identity(3))


def test_stacking():
    a = ExactMatrix.from_rows([[1, 0]])
    b = ExactMatrix.from_rows([[0, 1]])
    assert vstack([a, b]) == ExactMatrix.identity(2)
    assert hstack([a, b]).shape == (1, 4)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_matches_sympy(rows):
    assert rank(ExactMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_kernel_is_null_space(rows):
    m = ExactMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert (m @ v).is_zero()
        assert all(Fraction(x).denominator == 1 for x in v.entries)


@settings(max_examples=60, deadline=None)
@given(small_matrices(lo=0, hi=6), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_agrees_with_batched(rows, p):
    exact = rank(ExactMatrix.from_rows(rows, GF(p)))
    assert exact == int(batched_rank_mod_p(np.array([rows]), p)[0])
    pivots, red = rref_mod_p(rows, p)
    assert len(pivots) == exact == len(red)


@settings(max_examples=40, deadline=None)
@given(small_matrices(lo=0, hi=4), st.sampled_from([2, 3, 5]))
def test_kernel_mod_p(rows, p):
    ncols = len(rows[0])
    ker = kernel_mod_p(rows, ncols, p)
    assert len(ker) == ncols - rank(ExactMatrix.from_rows(rows, GF(p)))
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)


def test_rank_over_fp_differs_from_q():
    m = ExactMatrix.from_rows([[1, 1], [1, 4]])
    assert rank(m) == 2
    assert rank(m.with_field(GF(3))) == 1


def test_echelon_pivots():
    pivots, _ = echelon(ExactMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 0]]))
    assert pivots == [0, 1]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9),
       st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_ad_matrix_is_commutator(xs, ys):
    x = ExactMatrix.from_rows([xs[0:3], xs[3:6], xs[6:9]])
    y = ExactMatrix.from_rows([ys[0:3], ys[3:6], ys[6:9]])
    lhs = ad_matrix(x) @ ExactMatrix.column(y.vec())
    assert lhs.reshape(3, 3) == commutator(x, y)


def test_centralizer_of_regular_nilpotent():
    e = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    basis = centralizer_basis(e)
    assert len(basis) == 3
    assert all(commutator(e, z).is_zero() for z in basis)


def test_is_nilpotent():
    assert is_nilpotent(ExactMatrix.from_rows([[0, 1], [0, 0]]))
    assert not is_nilpotent(ExactMatrix.identity(2))
    # nilpotent only mod 2: [[1,1],[1,1]]^2 = 2*(same)
    m = ExactMatrix.from_rows([[1, 1], [1, 1]])
    assert is_nilpotent(m.with_field(GF(2))) and not is_nilpotent(m)
