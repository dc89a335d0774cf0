"""Symbol conversions, the coefficient family, and their consistency with
quantization."""

import random
from fractions import Fraction
from math import comb

import pytest

from bjcalc.exact import ExactScalar, SymbolPoly
from bjcalc.quantize import BornJordan, Tau, Weyl, quantize_symbol
from bjcalc.transforms import (
    CoeffTable,
    CoefficientCapError,
    bernoulli,
    bj_to_tau,
    bj_to_weyl,
    c_coeff_1d,
    c_coeff_multi,
    monomial_closed_form,
    tau_shift,
    weyl_to_bj,
)

F = Fraction


def _random_symbol(rng, dim, max_deg, n_terms=4):
    a = SymbolPoly.zero(dim)
    for _ in range(n_terms):
        while True:
            kx = tuple(rng.randrange(max_deg + 1) for _ in range(dim))
            kp = tuple(rng.randrange(max_deg + 1) for _ in range(dim))
            if sum(kx) + sum(kp) <= max_deg:
                break
        coeff = ExactScalar.rational(F(rng.randrange(-5, 6), rng.randrange(1, 4)))
        a = a + SymbolPoly.monomial(dim, coeff=coeff, x=kx, p=kp)
    return a


class TestCoefficients:
    def test_bernoulli_values(self):
        assert [bernoulli(k) for k in range(7)] == [
            F(1), F(-1, 2), F(1, 6), F(0), F(-1, 30), F(0), F(1, 42)
        ]

    def test_c_table_values(self):
        expected = {0: F(1), 2: F(-1, 3), 4: F(7, 15), 6: F(-31, 21), 8: F(127, 15)}
        table = CoeffTable.build(8)
        assert table.values == expected
        assert all(c_coeff_1d(k) == 0 for k in range(1, 13, 2))

    def test_multi_reduces_to_1d(self):
        for k in range(0, 11):
            assert c_coeff_multi((k,)) == c_coeff_1d(k)
            assert c_coeff_multi((k, 0)) == c_coeff_1d(k)

    def test_multi_against_ordered_composition_oracle(self):
        # brute-force alternating sum over ordered tuples of nonzero
        # even-order multi-indices summing to alpha
        from bjcalc.exact import mi_abs, mi_factorial, mi_iter_box, mi_sub

        def compositions(alpha):
            if not any(alpha):
                yield ()
                return
            for mu in mi_iter_box(alpha):
                if mi_abs(mu) == 0 or mi_abs(mu) % 2:
                    continue
                for rest in compositions(mi_sub(alpha, mu)):
                    yield (mu,) + rest

        def oracle(alpha):
            total = F(0)
            for tup in compositions(alpha):
                term = F((-1) ** len(tup))
                for mu in tup:
                    term /= mi_factorial(mu) * (mi_abs(mu) + 1)
                total += term
            return mi_factorial(alpha) * total

        for alpha in [(2,), (4,), (1, 1), (2, 2), (3, 1), (2, 1, 1)]:
            assert c_coeff_multi(alpha) == oracle(alpha)

    def test_cap(self):
        with pytest.raises(CoefficientCapError):
            c_coeff_multi((14,), cap=12)


class TestConversions:
    def test_x2p2_examples(self):
        a = SymbolPoly.monomial(1, x=(2,), p=(2,))
        hbar2 = SymbolPoly.constant(1, ExactScalar.hbar(2))
        sixth = F(1, 6)
        assert bj_to_weyl(a) == a - hbar2.scale(ExactScalar.rational(sixth))
        assert weyl_to_bj(a) == a + hbar2.scale(ExactScalar.rational(sixth))

    def test_reciprocity_random(self):
        rng = random.Random(37)
        for _ in range(30):
            a = _random_symbol(rng, 1, 8)
            assert weyl_to_bj(bj_to_weyl(a)) == a
            assert bj_to_weyl(weyl_to_bj(a)) == a

    def test_reciprocity_two_dim(self):
        rng = random.Random(41)
        for _ in range(8):
            a = _random_symbol(rng, 2, 6, n_terms=3)
            assert weyl_to_bj(bj_to_weyl(a)) == a
            assert bj_to_weyl(weyl_to_bj(a)) == a

    def test_conversion_agrees_with_quantization(self):
        rng = random.Random(43)
        for _ in range(10):
            a = _random_symbol(rng, 1, 6, n_terms=3)
            assert quantize_symbol(Weyl(), bj_to_weyl(a)) == quantize_symbol(
                BornJordan(), a
            )

    def test_monomial_closed_form_matches_series(self):
        for r in range(7):
            for s in range(7):
                a = SymbolPoly.monomial(1, x=(r,), p=(s,))
                assert monomial_closed_form("weyl_of_bj", r, s) == bj_to_weyl(a)
                assert monomial_closed_form("bj_of_weyl", r, s) == weyl_to_bj(a)

    def test_monomial_closed_form_validation(self):
        with pytest.raises(ValueError):
            monomial_closed_form("sideways", 1, 1)
        with pytest.raises(ValueError):
            monomial_closed_form("weyl_of_bj", -1, 0)


class TestTauFamily:
    @pytest.mark.parametrize(
        "tau", [F(0), F(1, 4), F(1, 3), F(1, 2), F(1)]
    )
    def test_bj_to_tau_quantizes_consistently(self, tau):
        rng = random.Random(47)
        for _ in range(5):
            a = _random_symbol(rng, 1, 6, n_terms=3)
            assert quantize_symbol(Tau(tau), bj_to_tau(a, tau)) == quantize_symbol(
                BornJordan(), a
            )

    def test_bj_to_tau_midpoint_is_weyl_conversion(self):
        rng = random.Random(53)
        for _ in range(5):
            a = _random_symbol(rng, 1, 6, n_terms=3)
            assert bj_to_tau(a, F(1, 2)) == bj_to_weyl(a)

    def test_formal_tau_specializes(self):
        a = SymbolPoly.monomial(1, x=(2,), p=(2,))
        formal = bj_to_tau(a)
        assert formal.has_aux()
        assert formal.substitute_aux("tau", F(1, 3)) == bj_to_tau(a, F(1, 3))

    def test_tau_shift_xp_example(self):
        # shifting x p from parameter tau' to tau adds i hbar (tau - tau')
        a = SymbolPoly.monomial(1, x=(1,), p=(1,))
        shifted = tau_shift(a, F(1, 2), F(3, 4))
        expected = a + SymbolPoly.constant(
            1, (ExactScalar.i() * ExactScalar.hbar()).scale(F(1, 4))
        )
        assert shifted == expected

    def test_tau_shift_quantizes_consistently(self):
        rng = random.Random(59)
        pairs = [(F(0), F(1)), (F(1, 3), F(1, 2)), (F(3, 4), F(1, 4))]
        for t_from, t_to in pairs:
            a = _random_symbol(rng, 1, 5, n_terms=3)
            assert quantize_symbol(Tau(t_to), tau_shift(a, t_from, t_to)) == (
                quantize_symbol(Tau(t_from), a)
            )

    def test_tau_shift_roundtrip_and_composition(self):
        rng = random.Random(61)
        a = _random_symbol(rng, 1, 6)
        assert tau_shift(tau_shift(a, F(0), F(1, 3)), F(1, 3), F(0)) == a
        assert tau_shift(tau_shift(a, F(0), F(1, 4)), F(1, 4), F(1)) == tau_shift(
            a, F(0), F(1)
        )
