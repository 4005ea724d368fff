"""Rule-engine tests for continuous embeddings between descriptors."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rkhs_sandwich import (INF, besov, chain_holds, cube, embeds, holder,
                           lebesgue_lp, rewrite_identifications, sequence_lp,
                           slobodeckij, sobolev, sup_space, triebel_lizorkin,
                           xr)
from rkhs_sandwich.spaces import DomainError


class TestRewrites:
    def test_slobodeckij_fractional(self):
        out = rewrite_identifications(slobodeckij(Fraction(3, 2), 3, cube(1)))
        assert (out.family, out.s, out.p, out.q) == \
            ("triebel-lizorkin", xr(3, 2), 3, 3)

    def test_sobolev(self):
        out = rewrite_identifications(sobolev(2, 2, cube(1)))
        assert (out.family, out.s, out.p, out.q) == ("triebel-lizorkin", 2, 2, 2)

    def test_holder(self):
        out = rewrite_identifications(holder(Fraction(1, 2), cube(1)))
        assert (out.family, out.s) == ("besov", xr(1, 2))
        assert out.p.is_infinite and out.q.is_infinite

    def test_idempotent(self):
        for spec in (slobodeckij(Fraction(3, 2), 3, cube(1)),
                     sobolev(2, 2, cube(1)),
                     holder(Fraction(1, 2), cube(1)),
                     besov(1, 4, 4, cube(2))):
            once = rewrite_identifications(spec)
            assert rewrite_identifications(once) == once


class TestEmbedsExamples:
    def test_tl_smoothness_drop(self):
        E = triebel_lizorkin(2, 2, 2, cube(3))
        F = triebel_lizorkin(1, 2, 2, cube(3))
        v = embeds(E, F)
        assert v.holds and v.rule == "R1"

    def test_sobolev_smoothness_increase_fails(self):
        v = embeds(sobolev(1, 2, cube(1)), sobolev(2, 2, cube(1)))
        assert v.status == "Fails" and v.rule == "R6"

    def test_besov_tl_crossing(self):
        # gap 1/2 beats d(1/p1 - 1/p2) = 2*(0 - 1/4) on the nose
        E = besov(1, INF, INF, cube(2))
        F = besov(Fraction(1, 2), 4, 4, cube(2))
        v = embeds(E, F)
        assert v.holds and "R5" in v.rule

    def test_sobolev_iff_boundary(self):
        # gap exactly d/p1 - d/p2: the equivalence keeps it
        v = embeds(sobolev(2, 2, cube(4)), sobolev(1, 4, cube(4)))
        assert v.holds and v.rule == "R6"
        # gap strictly below the requirement: the iff rejects it
        v2 = embeds(sobolev(2, 2, cube(5)), sobolev(1, 5, cube(5)))
        assert v2.status == "Fails" and v2.rule == "R6"

    def test_sequence_and_lebesgue_rules(self):
        assert embeds(sequence_lp(1), sequence_lp(3)).rule == "R8"
        assert embeds(lebesgue_lp(3, cube(1)), lebesgue_lp(2, cube(1))).rule == "R9"
        assert embeds(sequence_lp(3), sequence_lp(2)).status == "Undetermined"

    def test_holder_inclusion(self):
        v = embeds(holder(1, cube(2)), holder(Fraction(1, 3), cube(2)))
        assert v.holds and v.rule == "R7"

    def test_bounded_target(self):
        v = embeds(slobodeckij(2, 2, cube(1)), sup_space(cube(1)))
        assert v.holds and v.rule == "R10"
        v2 = embeds(slobodeckij(Fraction(1, 4), 2, cube(1)), sup_space(cube(1)))
        assert v2.status == "Undetermined"

    def test_domain_mismatch(self):
        with pytest.raises(DomainError):
            embeds(holder(1, cube(1)), holder(1, cube(2)))


frac = st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8)
pvals = st.sampled_from([xr(1), xr(3, 2), xr(2), xr(3), INF])


class TestEmbedsProperties:
    @given(frac, pvals, pvals)
    def test_reflexivity(self, s, p, q):
        spec = besov(s, p, q, cube(2))
        assert embeds(spec, spec).rule == "identity"

    @given(frac, frac, frac)
    def test_monotone_in_source_smoothness(self, s, bump, t):
        E = triebel_lizorkin(s, 2, 2, cube(2))
        E2 = triebel_lizorkin(s + bump, 2, 2, cube(2))
        F = triebel_lizorkin(t, 3, 2, cube(2))
        if embeds(E, F).holds:
            assert embeds(E2, F).holds

    @given(frac, frac, frac, pvals, pvals)
    def test_never_fails_off_the_iff_families(self, s, t, u, p, q):
        # Fails is reserved for the integer-Sobolev equivalence
        v = embeds(besov(s, p, q, cube(3)), besov(t, q, p, cube(3)))
        assert v.status in ("Holds", "Undetermined")

    def test_transitive_fragment_assembles_chains(self):
        E = besov(2, 2, 2, cube(2))
        G = besov(Fraction(3, 2), 2, 2, cube(2))
        F = besov(1, 2, 2, cube(2))
        assert embeds(E, G).holds and embeds(G, F).holds
        assert chain_holds([E, G, F])
        assert embeds(E, F).status != "Fails"
