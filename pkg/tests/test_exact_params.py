"""Exact arithmetic, coherent index sets, and descriptor validation."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rkhs_sandwich import (CoherentSet, ExtRational, INF, coherent_closure,
                           cube, deficiency, holder, sequence_lp, slobodeckij,
                           triebel_lizorkin, xr)
from rkhs_sandwich.spaces import (DomainError, IntegrabilityRangeError,
                                  SmoothnessRangeError, finite_metric)
from rkhs_sandwich.xrational import ParameterRangeError, pos_part

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=64)


class TestExtRational:
    def test_exact_arithmetic(self):
        assert xr(1, 3) + xr(1, 6) == xr(1, 2)
        assert xr(2, 3) * xr(3, 4) == xr(1, 2)
        assert xr(7, 5) - xr(2, 5) == 1

    def test_infinity_conventions(self):
        assert 1 / INF == 0
        assert INF + 5 == INF
        assert xr(3) < INF
        assert not INF < INF
        assert INF == INF

    def test_undefined_forms_raise(self):
        with pytest.raises(ArithmeticError):
            INF - INF
        with pytest.raises(ArithmeticError):
            xr(0) * INF

    def test_string_parsing(self):
        assert xr("3/7") == xr(3, 7)
        assert xr("inf").is_infinite

    @given(rationals, rationals)
    def test_total_order(self, a, b):
        x, y = xr(a), xr(b)
        assert (x < y) + (x == y) + (y < x) == 1


class TestPosPartAndDeficiency:
    def test_pos_part_examples(self):
        assert pos_part(3) == 3
        assert pos_part(-2) == 0
        assert pos_part(0) == 0

    @given(rationals)
    def test_pos_part_splits_abs(self, a):
        assert pos_part(a) + pos_part(-a) == abs(xr(a))

    def test_deficiency_examples(self):
        assert deficiency(1, INF, 3) == 3
        assert deficiency(2, 2, 5) == 0
        assert deficiency(4, 4, 2) == xr(1, 2)

    @given(st.integers(min_value=1, max_value=10))
    def test_deficiency_vanishes_at_two(self, d):
        assert deficiency(2, 2, d) == 0

    @given(st.fractions(min_value=Fraction(1), max_value=Fraction(2),
                        max_denominator=16).filter(lambda p: p < 2),
           st.fractions(min_value=Fraction(2), max_value=Fraction(50),
                        max_denominator=16).filter(lambda p: p > 2),
           st.integers(min_value=1, max_value=6))
    def test_deficiency_collapses_when_both_parts_active(self, p1, p2, d):
        # p1 < 2 < p2: both positive parts are strictly positive and the sum
        # telescopes to d(1/p1 - 1/p2)
        assert deficiency(p1, p2, d) == xr(d) / xr(p1) - xr(d) / xr(p2)

    def test_deficiency_range_errors(self):
        with pytest.raises(ParameterRangeError):
            deficiency(Fraction(1, 2), 2, 1)
        with pytest.raises(ParameterRangeError):
            deficiency(2, 2, 0)


small_indices = st.lists(
    st.tuples(st.integers(min_value=0, max_value=3),
              st.integers(min_value=0, max_value=3)),
    min_size=1, max_size=4)


class TestCoherentSet:
    def test_closure_examples(self):
        assert set(coherent_closure([(2, 0)], 2).elements) == \
            {(0, 0), (1, 0), (2, 0)}
        assert set(coherent_closure([(1, 1)], 2).elements) == \
            {(0, 0), (1, 0), (0, 1), (1, 1)}
        assert coherent_closure([(0, 0)], 2).elements == ((0, 0),)

    def test_max_order(self):
        assert coherent_closure([(2, 1)], 2).max_order == 3

    def test_incoherent_rejected(self):
        from rkhs_sandwich.spaces import CoherenceError
        with pytest.raises(CoherenceError):
            CoherentSet(((0, 1),))
        with pytest.raises(CoherenceError):
            coherent_closure([], 2)

    @given(small_indices)
    def test_closure_idempotent(self, idx):
        once = coherent_closure(idx, 2)
        again = coherent_closure(once.elements, 2)
        assert once.elements == again.elements

    @given(small_indices, small_indices)
    def test_closure_monotone(self, a, b):
        sub = coherent_closure(a, 2)
        sup = coherent_closure(a + b, 2)
        assert set(sub.elements) <= set(sup.elements)


class TestValidation:
    def test_holder_accepted(self):
        holder(Fraction(1, 2), cube(2))

    def test_holder_range_error(self):
        with pytest.raises(SmoothnessRangeError):
            holder(2, cube(2))

    def test_tl_infinite_p_rejected(self):
        with pytest.raises(IntegrabilityRangeError):
            triebel_lizorkin(1, INF, 2, cube(1))

    def test_integer_slobodeckij_needs_p_above_one(self):
        with pytest.raises(IntegrabilityRangeError):
            slobodeckij(2, 1, cube(1))
        slobodeckij(Fraction(3, 2), 1, cube(1))  # non-integer s is fine

    def test_sequence_space_domain(self):
        assert not sequence_lp(2).domain.bounded

    def test_metric_table_triangle_inequality(self):
        with pytest.raises(DomainError):
            finite_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        finite_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]])

    def test_metric_table_symmetry(self):
        with pytest.raises(DomainError):
            finite_metric([[0, 1], [2, 0]])
