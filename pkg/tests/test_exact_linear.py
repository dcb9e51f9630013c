from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tubular.exact_linear import (
    Matrix,
    NoSolution,
    format_scalar,
    inverse,
    kernel_vectors,
    parse_scalar,
    rank,
    solve,
)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows)


def as_sympy(M: Matrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(M[i, j].numerator, M[i, j].denominator))


def test_scalar_round_trip():
    for x in [Fraction(0), Fraction(3), Fraction(-7, 4)]:
        assert parse_scalar(format_scalar(x)) == x
    assert format_scalar(Fraction(6, 3)) == "2"


def test_zero_shapes():
    Z = Matrix.zeros(0, 3)
    assert (Z @ Matrix.zeros(3, 2)).shape == (0, 2)
    assert kernel_vectors(Matrix.zeros(0, 2)) == [[1, 0], [0, 1]]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_matches_sympy(M):
    assert rank(M) == as_sympy(M).rank()


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_kernel_is_kernel_and_full(M):
    ker = kernel_vectors(M)
    for v in ker:
        assert all(x == 0 for x in M.apply(v))
    assert len(ker) + rank(M) == M.cols


@given(matrices(), st.lists(small, min_size=5, max_size=5))
@settings(max_examples=150, deadline=None)
def test_solve_consistent_systems(M, coeffs):
    x0 = coeffs[: M.cols]
    b = M.apply(x0)
    x, K = solve(M, b)
    assert M.apply(x) == b
    assert K.cols == M.cols - rank(M)


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve(Matrix.from_rows([[1, 0], [1, 0]]), [1, 2])


@given(matrices(max_dim=4))
@settings(max_examples=100, deadline=None)
def test_inverse_against_sympy(M):
    if M.rows != M.cols or as_sympy(M).det() == 0:
        return
    inv = inverse(M)
    assert inv @ M == Matrix.identity(M.rows)
    assert as_sympy(inv) == as_sympy(M).inv()
