"""Univariate basis construction against its defining conditions and the
hand-entered reference tables."""

from fractions import Fraction

import pytest

from reference_bases import REFERENCE_PHI
from srdpeig.basis1d import (
    NODES,
    InvalidIndex,
    check_conditions,
    generate_phi,
    interpolating_conditions,
)
from srdpeig.polynomial import rational_rank


class TestConditions:
    def test_p3_i3(self):
        conds = interpolating_conditions(3, 3)
        as_set = {(c.node, c.order, c.value) for c in conds}
        assert as_set == {(-1, 0, 0), (0, 0, 0), (1, 0, 0), (0, 1, 1)}

    def test_p2_i2(self):
        conds = interpolating_conditions(2, 2)
        as_set = {(c.node, c.order, c.value) for c in conds}
        assert as_set == {(-1, 0, 0), (0, 0, 1), (1, 0, 0)}

    def test_p2_i3_no_derivative_rows(self):
        conds = interpolating_conditions(2, 3)
        assert all(c.order == 0 for c in conds)
        as_set = {(c.node, c.order, c.value) for c in conds}
        assert as_set == {(-1, 0, 0), (0, 0, 0), (1, 0, 1)}

    def test_every_function_gets_one_unit_condition(self):
        for p in range(2, 7):
            for i in range(1, p + 2):
                conds = interpolating_conditions(p, i)
                assert len(conds) == p + 1
                assert sum(c.value for c in conds) == 1

    def test_invalid_index(self):
        with pytest.raises(InvalidIndex):
            interpolating_conditions(3, 0)
        with pytest.raises(InvalidIndex):
            interpolating_conditions(3, 5)

    def test_p1_not_covered(self):
        with pytest.raises(ValueError):
            interpolating_conditions(1, 1)


class TestGeneration:
    @pytest.mark.parametrize("p", sorted(REFERENCE_PHI))
    def test_reference_tables_exact(self, p):
        generated = generate_phi(p).functions
        expected = REFERENCE_PHI[p]
        assert len(generated) == len(expected)
        for k, (a, b) in enumerate(zip(generated, expected), start=1):
            assert a == b, f"p={p}, function {k}: {a} != {b}"

    @pytest.mark.parametrize("p", range(2, 7))
    def test_all_conditions_hold_exactly(self, p):
        phi = generate_phi(p)
        for i in range(1, p + 2):
            assert check_conditions(phi.phi(i), interpolating_conditions(p, i))

    @pytest.mark.parametrize("p", range(1, 7))
    def test_basic_shape(self, p):
        phi = generate_phi(p)
        assert len(phi) == p + 1
        assert all(f.degree_x <= p and f.degree_y == 0 for f in phi.functions)

    @pytest.mark.parametrize("p", range(2, 7))
    def test_nodal_kronecker_structure(self, p):
        phi = generate_phi(p)
        carriers = {Fraction(-1): 1, Fraction(0): 2, Fraction(1): p + 1}
        for node in NODES:
            for i in range(1, p + 2):
                value = phi.phi(i)(node)
                assert value == (1 if carriers[node] == i else 0)

    @pytest.mark.parametrize("p", range(1, 7))
    def test_full_rank_basis(self, p):
        funcs = generate_phi(p).functions
        matrix = [[f.coefficient(m, 0) for m in range(p + 1)] for f in funcs]
        assert rational_rank(matrix) == p + 1

    def test_minimal_degrees(self):
        # the midpoint-value function drops degree where parity allows
        assert generate_phi(3).phi(2).degree_x == 2
        assert generate_phi(4).phi(2).degree_x == 4
        assert generate_phi(5).phi(2).degree_x == 4

    def test_p1_fixed_pair(self):
        phi = generate_phi(1)
        assert phi.phi(1)(-1) == 1 and phi.phi(1)(1) == 0
        assert phi.phi(2)(-1) == 0 and phi.phi(2)(1) == 1

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            generate_phi(0)
