from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from arithnull.exactlinalg import charpoly, determinant, inverse, matmul, rank, solve

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_determinant_matches_sympy(A):
    assert determinant(A) == sympy.Matrix(A).det()


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_rank_matches_numpy(A):
    assert rank(A) == np.linalg.matrix_rank(np.array(A, dtype=float))


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_charpoly_matches_sympy(A):
    t = sympy.Symbol("t")
    ref = sympy.Poly(sympy.Matrix(A).charpoly(t).as_expr(), t).all_coeffs()
    # constant term first, monic
    assert charpoly(A) == [Fraction(int(c)) for c in reversed(ref)]


def test_solve_and_inverse():
    A = [[2, 1], [1, 3]]
    x = solve(A, [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    inv = inverse(A)
    assert matmul(A, inv) == [[1, 0], [0, 1]]


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_inverse_singular():
    with pytest.raises(ValueError):
        inverse([[1, 2], [2, 4]])
