from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from contactlie import linalg as la

small = st.integers(min_value=-3, max_value=3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_frac_rejects_floats():
    with pytest.raises(TypeError):
        la.frac(0.5)
    assert la.frac("3/6") == Fraction(1, 2)


@pytest.mark.parametrize("x, text", [(Fraction(4, 2), "2"), (Fraction(-3, 6), "-1/2"), (Fraction(0), "0")])
def test_fmt_is_canonical(x, text):
    assert la.fmt(x) == text


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rank_matches_sympy(m):
    assert la.rank(la.mat(m)) == sp.Matrix(m).rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_and_inverse(m):
    M = la.mat(m)
    assert la.det(M) == sp.Matrix(m).det()
    if la.det(M):
        assert la.matmul(M, la.inverse(M)) == la.identity(len(m))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_nullspace_is_kernel(m):
    M = la.mat(m)
    ker = la.nullspace(M, len(m[0]))
    assert len(ker) == len(m[0]) - la.rank(M)
    for v in ker:
        assert la.is_zero(la.matvec(M, v))


def test_solve_inconsistent_returns_none():
    assert la.solve([[1, 1], [2, 2]], [1, 3]) is None
    assert la.solve([[1, 1], [0, 1]], [3, 1]) == (2, 1)


def test_columns_round_trip():
    cols = [(1, 2), (3, 4)]
    assert la.columns(la.from_columns(cols)) == tuple(la.vec(c) for c in cols)
