"""Exact polynomial arithmetic and rational linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import gauss_box_integral
from srdpeig.polynomial import (
    ONE,
    Polynomial,
    SingularSystem,
    X,
    Y,
    rational_rank,
    solve_rational_system,
    try_solve_rational_system,
)

H = Fraction(1, 2)

coefficients = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
).filter(lambda f: f != 0)
polynomials = st.dictionaries(
    keys=st.tuples(st.integers(0, 4), st.integers(0, 4)),
    values=coefficients,
    max_size=6,
).map(Polynomial)


class TestArithmetic:
    def test_add_cancellation(self):
        assert (X + 1) + (-X) == ONE

    def test_add_identity(self):
        p = X**2 * Y - 3 * Y
        assert Polynomial.zero() + p == p

    def test_add_univariate_pair(self):
        # half-step combination of two quadratic nodal functions
        assert H * (X - 1) * X + H * X * (X + 1) == X**2

    def test_multiply_expansion(self):
        assert (1 - X) * (1 - Y) == 1 - X - Y + X * Y

    def test_multiply_identity(self):
        p = 2 * X * Y - Y**3
        assert p * ONE == p

    def test_multiply_bubble(self):
        assert (1 - X**2) * (1 - Y**2) == 1 - X**2 - Y**2 + X**2 * Y**2

    def test_zero_terms_pruned(self):
        p = Polynomial({(1, 0): 1, (0, 1): 0})
        assert p.terms == {(1, 0): Fraction(1)}
        assert (X - X).is_zero


class TestCalculus:
    def test_derivative_power_rule(self):
        assert (X - X**3).derivative("x") == 1 - 3 * X**2

    def test_second_derivative_of_constant(self):
        assert Polynomial.constant(7).derivative("x", 2).is_zero

    def test_derivative_condition_at_midpoint(self):
        # the cubic vanishing on {-1,0,1} with unit slope at 0
        phi3 = X - X**3
        assert phi3.derivative("x")(0) == 1

    def test_integrate_constant(self):
        assert ONE.integrate_box() == 4

    def test_integrate_odd(self):
        assert (X * Y).integrate_box() == 0

    def test_integrate_corner_square(self):
        corner = Fraction(1, 4) * (1 - X) * (1 - Y)
        assert (corner * corner).integrate_box() == Fraction(4, 9)

    def test_evaluate_corner(self):
        corner = Fraction(1, 4) * (1 - X) * (1 - Y)
        assert corner(-1, -1) == 1
        assert corner(1, -1) == 0

    def test_evaluate_bubble_at_endpoints(self):
        assert (1 - X**2)(1) == 0
        assert (1 - X**2)(-1) == 0

    def test_evaluate_zero(self):
        assert Polynomial.zero()(Fraction(3, 7), -2) == 0


class TestSolve:
    def test_identity(self):
        b = [Fraction(3), Fraction(-1, 2)]
        assert solve_rational_system([[1, 0], [0, 1]], b) == b

    def test_scalar(self):
        assert solve_rational_system([[2]], [1]) == [Fraction(1, 2)]

    def test_hermite_vandermonde(self):
        # values 0,0,0 at -1,0,1 plus unit derivative at 0 -> x - x^3
        nodes = [Fraction(-1), Fraction(0), Fraction(1)]
        matrix = [[n**m for m in range(4)] for n in nodes]
        matrix.append([m * Fraction(0) ** (m - 1) if m else Fraction(0) for m in range(4)])
        sol = solve_rational_system(matrix, [0, 0, 0, 1])
        assert sol == [0, 1, 0, -1]

    def test_singular_raises(self):
        with pytest.raises(SingularSystem):
            solve_rational_system([[1, 1], [2, 2]], [1, 1])

    def test_inconsistent_rectangular_returns_none(self):
        assert try_solve_rational_system([[1, 1], [2, 2]], [1, 3]) is None

    def test_rank(self):
        assert rational_rank([[1, 2], [2, 4]]) == 1
        assert rational_rank([[1, 0], [0, 1]]) == 2


@settings(max_examples=60, deadline=None)
class TestRingProperties:
    @given(polynomials, polynomials)
    def test_add_commutes(self, a, b):
        assert a + b == b + a

    @given(polynomials, polynomials)
    def test_multiply_commutes(self, a, b):
        assert a * b == b * a

    @given(polynomials, polynomials, polynomials)
    def test_add_associates(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(polynomials, polynomials, polynomials)
    def test_multiply_associates(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(polynomials, polynomials, polynomials)
    def test_distributes(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(polynomials, polynomials)
    def test_integral_of_product_symmetric(self, a, b):
        assert (a * b).integrate_box() == (b * a).integrate_box()

    @given(polynomials)
    def test_integral_matches_quadrature(self, a):
        exact = float(a.integrate_box())
        approx = gauss_box_integral(a)
        assert abs(exact - approx) <= 1e-9 * max(1.0, abs(exact))

    @given(
        st.integers(0, 6),
        st.integers(0, 6),
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
    )
    def test_monomial_derivative_integral_roundtrip(self, i, j, c):
        # antiderivative in x of c x^i y^j integrates back consistently
        mono = Polynomial.monomial(i, j, c)
        anti = Polynomial.monomial(i + 1, j, c / (i + 1))
        assert anti.derivative("x") == mono


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    ),
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=3, max_size=3),
)
def test_solve_residual_is_exactly_zero(matrix, rhs):
    try:
        sol = solve_rational_system(matrix, rhs)
    except SingularSystem:
        assert rational_rank(matrix) < 3
        return
    for row, b in zip(matrix, rhs):
        assert sum(a * v for a, v in zip(row, sol)) == b
