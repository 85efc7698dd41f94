from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy
from common import FIVE, M6, P6
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.errors import DimensionMismatch, NotSymmetric, SingularMatrix
from zariski.exact_linalg import (
    RationalMatrix,
    as_rational,
    determinant,
    invert,
    is_negative_definite,
    leading_principal_minors,
    parse_rational,
    solve_linear_system,
)

R = RationalMatrix.from_rows
F = Fraction


def small_rationals(lo=-5, hi=5):
    return st.builds(Fraction, st.integers(lo, hi), st.sampled_from([1, 2, 3]))


@st.composite
def square_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return R([[draw(small_rationals()) for _ in range(n)] for _ in range(n)])


@st.composite
def symmetric_matrices(draw, max_n=5, nonneg_offdiag=False):
    n = draw(st.integers(0, max_n))
    m = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = draw(small_rationals())
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = draw(small_rationals(0 if nonneg_offdiag else -5, 5))
    return R(m, ncols=n)


def to_sympy(a):
    return sympy.Matrix(a.nrows, a.ncols, lambda i, j: sympy.Rational(a[i, j].numerator, a[i, j].denominator))


def from_sympy(x):
    return Fraction(int(x.p), int(x.q))


# oracle: all principal minors of order k have sign (-1)^k
def nd_by_principal_minors(a):
    s = to_sympy(a)
    for k in range(1, a.nrows + 1):
        for idx in combinations(range(a.nrows), k):
            d = s.extract(list(idx), list(idx)).det()
            if d == 0 or (d > 0) != (k % 2 == 0):
                return False
    return True


BASKET = [v for v in product([-1, 0, 1, 2], repeat=4) if any(v)]


def test_parse_rational():
    assert parse_rational("3/2") == F(3, 2)
    assert parse_rational("-7") == -7
    assert parse_rational("+1/3") == F(1, 3)
    assert parse_rational("4/6") == F(2, 3)
    for bad in ["1.5", "1/0", "", "a", "1//2", "1/-2"]:
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        R([[0.5]])


def test_entries_reduced():
    a = R([["4/6", "-3/9"]])
    assert a[0, 0] == F(2, 3) and a[0, 0].denominator == 3
    assert a[0, 1].denominator > 0


def test_ragged_rejected():
    with pytest.raises(DimensionMismatch):
        R([[1, 2], [3]])


def test_solve_identity():
    assert solve_linear_system(RationalMatrix.identity(3), [1, 2, 3]) == (1, 2, 3)


def test_solve_two_by_two():
    assert solve_linear_system(R([[-2, 1], [1, -2]]), [-1, 0]) == (F(2, 3), F(1, 3))


def test_solve_singular():
    with pytest.raises(SingularMatrix):
        solve_linear_system(R([[-2, 2], [2, -2]]), [1, 0])


def test_solve_shape_errors():
    with pytest.raises(DimensionMismatch):
        solve_linear_system(R([[1, 2]]), [1])
    with pytest.raises(DimensionMismatch):
        solve_linear_system(RationalMatrix.identity(2), [1, 2, 3])


def test_invert_examples():
    assert invert(R([[-2]])) == R([["-1/2"]])
    assert invert(R([[-2, 1], [1, -2]])) == R([["-2/3", "-1/3"], ["-1/3", "-2/3"]])
    with pytest.raises(SingularMatrix):
        invert(R([[1, 0], [0, 0]]))


def test_determinant_examples():
    assert determinant(RationalMatrix.identity(4)) == 1
    assert determinant(R([[-2, 1], [1, 1]])) == -3
    assert determinant(R([], ncols=0)) == 1


def test_determinant_m6_p6_blocks_agree():
    m, p = R(M6), R(P6)
    assert determinant(m) == determinant(p)
    assert [determinant(m.leading(j)) for j in range(1, 7)] == [determinant(p.leading(j)) for j in range(1, 7)]


def test_determinant_needs_square():
    with pytest.raises(DimensionMismatch):
        determinant(R([[1, 2]]))


def test_negative_definite_examples():
    assert is_negative_definite(R([[-2, 1], [1, -2]]))
    assert not is_negative_definite(R([[-2, 1], [1, 1]]))
    assert not is_negative_definite(R([[-2, 2], [2, -2]]))
    assert is_negative_definite(R([], ncols=0))
    with pytest.raises(NotSymmetric):
        is_negative_definite(R([[0, 1], [2, 0]]))


def test_leading_minors_five_space():
    assert leading_principal_minors(R(FIVE)) == [
        determinant(R(FIVE).leading(k)) for k in range(1, 6)
    ]


@given(square_matrices())
@settings(max_examples=150, deadline=None)
def test_determinant_matches_sympy(a):
    assert determinant(a) == from_sympy(to_sympy(a).det())


@given(square_matrices())
@settings(max_examples=150, deadline=None)
def test_invert_is_exact(a):
    if determinant(a) == 0:
        with pytest.raises(SingularMatrix):
            invert(a)
        return
    assert a @ invert(a) == RationalMatrix.identity(a.nrows)
    assert invert(a) @ a == RationalMatrix.identity(a.nrows)


@given(square_matrices(), st.data())
@settings(max_examples=150, deadline=None)
def test_solve_reproduces_rhs(a, data):
    b = tuple(data.draw(small_rationals()) for _ in range(a.nrows))
    if determinant(a) == 0:
        with pytest.raises(SingularMatrix):
            solve_linear_system(a, b)
        return
    x = solve_linear_system(a, b)
    assert a.apply(x) == b


@given(symmetric_matrices(max_n=4))
@settings(max_examples=300, deadline=None)
def test_negative_definite_matches_principal_minor_oracle(a):
    assert is_negative_definite(a) == nd_by_principal_minors(a)


@given(symmetric_matrices(max_n=4))
@settings(max_examples=200, deadline=None)
def test_negative_definite_forms_are_negative_on_basket(a):
    if not is_negative_definite(a):
        return
    n = a.nrows
    for v in BASKET:
        x = v[:n]
        if any(x):
            assert sum(x[i] * a[i, j] * x[j] for i in range(n) for j in range(n)) < 0


@given(symmetric_matrices(max_n=6, nonneg_offdiag=True))
@settings(max_examples=300, deadline=None)
def test_inverse_of_negative_definite_intersection_matrix_is_nonpositive(a):
    if a.nrows == 0 or not is_negative_definite(a):
        return
    inv = invert(a)
    assert all(x <= 0 for row in inv.rows for x in row)
