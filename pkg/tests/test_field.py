from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substoe.errors import DomainError
from substoe.field import (
    certified_sign,
    minimal_polynomial,
    number_field,
    perron_minimal_polynomial,
)
from substoe.intpoly import IntPolynomial
from substoe.matrix import ExactMatrix


GOLDEN = number_field(IntPolynomial([1, -3, 1]))  # largest root of t^2 - 3t + 1


def g(*coords):
    return GOLDEN.from_coords(coords)


class TestConstruction:
    def test_reducible_rejected(self):
        with pytest.raises(DomainError):
            number_field(IntPolynomial([1] + [0] * 0))  # constant
        with pytest.raises(DomainError):
            number_field(IntPolynomial([-4, 0, 1]))  # (t-2)(t+2)

    def test_not_monic_rejected(self):
        with pytest.raises(DomainError):
            number_field(IntPolynomial([1, 0, 2]))

    def test_no_real_root_rejected(self):
        with pytest.raises(DomainError):
            number_field(IntPolynomial([1, 0, 1]))

    def test_interval_brackets_root(self):
        lo, hi = GOLDEN.interval
        f = GOLDEN.min_poly
        assert f(lo) * f(hi) < 0
        assert lo < Fraction(2618, 1000) < hi

    def test_refined_interval(self):
        lo, hi = GOLDEN.refined_interval(Fraction(1, 10 ** 9))
        assert hi - lo <= Fraction(1, 10 ** 9)


class TestArithmetic:
    def test_lambda_squared(self):
        lam = GOLDEN.lam()
        assert lam * lam == g(-1, 3)  # t^2 = 3t - 1

    def test_mixed_rational(self):
        lam = GOLDEN.lam()
        assert 3 - lam == g(3, -1)
        assert (3 - lam) * (3 - lam) == g(8, -3)
        assert lam / 2 == g(0, Fraction(1, 2))

    def test_inverse(self):
        lam = GOLDEN.lam()
        inv = lam.inverse()
        assert lam * inv == GOLDEN.one()
        assert inv == 3 - lam  # lambda * (3 - lambda) = 3lam - lam^2 = 1

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            GOLDEN.zero().inverse()

    def test_pow(self):
        lam = GOLDEN.lam()
        assert lam ** 4 == lam * lam * lam * lam
        assert lam ** 0 == GOLDEN.one()
        assert lam ** -1 == lam.inverse()

    def test_is_rational(self):
        assert g(5, 0).is_rational
        assert g(5, 0).as_rational() == 5
        assert not GOLDEN.lam().is_rational

    def test_cross_field_mix_rejected(self):
        other = number_field(IntPolynomial([1, -7, 1]))
        with pytest.raises(DomainError):
            GOLDEN.lam() + other.lam()

    @given(st.lists(st.integers(-9, 9), min_size=2, max_size=2),
           st.lists(st.integers(-9, 9), min_size=2, max_size=2))
    def test_distributive(self, a, b):
        x, y = g(*a), g(*b)
        lam = GOLDEN.lam()
        assert lam * (x + y) == lam * x + lam * y
        assert (x + y) * (x - y) == x * x - y * y

    @given(st.lists(st.integers(-9, 9), min_size=2, max_size=2))
    def test_inverse_roundtrip(self, a):
        x = g(*a)
        if x.is_zero:
            return
        assert x * x.inverse() == GOLDEN.one()


class TestCertifiedSign:
    def test_zero(self):
        assert certified_sign(GOLDEN.zero()) == 0

    def test_rational(self):
        assert certified_sign(g(-7, 0)) == -1
        assert certified_sign(g(2, 0)) == 1

    def test_irrational(self):
        lam = GOLDEN.lam()
        assert certified_sign(lam - 2) == 1  # lambda is about 2.618
        assert certified_sign(lam - 3) == -1
        assert certified_sign(3 - lam) == 1

    def test_tight_cancellation(self):
        # lambda^2 - 3*lambda + 1 is exactly zero
        lam = GOLDEN.lam()
        assert certified_sign(lam * lam - 3 * lam + 1) == 0

    def test_approx(self):
        lam = GOLDEN.lam()
        assert lam.approx(6) == "2.618034"
        assert lam.approx(4) == "2.6180"


class TestPerronPolynomial:
    def test_fibonacci_like(self):
        a = ExactMatrix.from_rows([[1, 1], [1, 2]])
        field, k = perron_minimal_polynomial(a)
        assert field.min_poly == IntPolynomial([1, -3, 1])
        assert k == 2

    def test_reducible_charpoly(self):
        a = ExactMatrix.from_rows([[1, 1, 1], [2, 3, 1], [8, 13, 0]])
        field, k = perron_minimal_polynomial(a)
        assert field.min_poly == IntPolynomial([1, -7, 1])
        assert k == 2

    def test_integer_dominant(self):
        a = ExactMatrix.from_rows([[2]])
        field, k = perron_minimal_polynomial(a)
        assert field.min_poly == IntPolynomial([-2, 1])
        assert k == 1

    def test_dominant_must_exceed_one(self):
        a = ExactMatrix.from_rows([[1]])
        with pytest.raises(DomainError):
            perron_minimal_polynomial(a)


class TestMinimalPolynomial:
    def test_of_lambda(self):
        assert minimal_polynomial(GOLDEN.lam()) == GOLDEN.min_poly

    def test_of_integer(self):
        assert minimal_polynomial(g(4, 0)) == IntPolynomial([-4, 1])

    def test_of_lambda_squared(self):
        lam = GOLDEN.lam()
        # lambda^2 = 3lam - 1 has trace 7 and norm 1: t^2 - 7t + 1
        assert minimal_polynomial(lam * lam) == IntPolynomial([1, -7, 1])

    def test_non_integral_rejected(self):
        with pytest.raises(DomainError):
            minimal_polynomial(GOLDEN.lam() / 2)
