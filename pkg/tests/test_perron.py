from fractions import Fraction

import pytest

from substoe.errors import DomainError
from substoe.field import certified_sign, number_field
from substoe.intpoly import IntPolynomial
from substoe.matrix import ExactMatrix
from substoe.perron import (
    coordinates_of,
    eigen_growth_check,
    embed,
    multiplication_matrices,
    perron_data,
)


A0 = ExactMatrix.from_rows([[1, 1], [1, 2]])
A1 = ExactMatrix.from_rows([[1, 1, 1], [2, 3, 1], [8, 13, 0]])


class TestPerronData:
    def test_golden_eigvec(self):
        pd = perron_data(A0)
        lam = pd.field.lam()
        assert pd.lam == lam
        assert pd.eigvec == (3 - lam, lam - 2)
        assert sum(pd.eigvec, pd.field.zero()) == pd.field.one()

    def test_golden_coords_matrix(self):
        pd = perron_data(A0)
        assert pd.coords_matrix == ExactMatrix.from_rows([[3, -2], [-1, 1]])

    def test_eigvec_equation(self):
        for m in (A0, A1):
            pd = perron_data(m)
            image = [sum((pd.matrix.at(i, j) * pd.eigvec[j] for j in range(m.cols)),
                         pd.field.zero()) for i in range(m.rows)]
            assert tuple(image) == tuple(pd.lam * x for x in pd.eigvec)

    def test_entries_positive(self):
        pd = perron_data(A1)
        for x in pd.eigvec:
            assert certified_sign(x) == 1

    def test_reducible_charpoly_field(self):
        pd = perron_data(A1)
        assert pd.field.min_poly == IntPolynomial([1, -7, 1])
        assert pd.k == 2

    def test_not_primitive_rejected(self):
        with pytest.raises(DomainError):
            perron_data(ExactMatrix.from_rows([[0, 1], [1, 0]]))

    def test_negative_entry_rejected(self):
        c = ExactMatrix.from_rows([[0, 0, 46], [1, 0, 15], [0, 1, -3]])
        with pytest.raises(DomainError):
            perron_data(c)


class TestCoordinates:
    def test_roundtrip(self):
        pd = perron_data(A0)
        for x in pd.eigvec:
            assert embed(pd.field, coordinates_of(x)) == x

    def test_embed_basis(self):
        f = number_field(IntPolynomial([1, -3, 1]))
        assert embed(f, (0, 1)) == f.lam()
        assert embed(f, (Fraction(1, 2), 0)) == f.from_rational(Fraction(1, 2))


class TestMultiplicationMatrices:
    def test_golden_pair(self):
        f = number_field(IntPolynomial([1, -3, 1]))
        pair = multiplication_matrices(f)
        assert pair.c == ExactMatrix.from_rows([[0, -1], [1, 3]])
        assert pair.d == ExactMatrix.from_rows([[3, 1], [-1, 0]])
        assert pair.c * pair.d == ExactMatrix.identity(2)

    def test_golden_y1(self):
        f = number_field(IntPolynomial([1, -3, 1]))
        pair = multiplication_matrices(f)
        lam = f.lam()
        assert pair.y1 == (-1 + f.zero(), lam)
        # positivity pairing: sum of y1 coords times powers of lambda
        val = pair.y1[0] + pair.y1[1] * lam
        assert certified_sign(val) == 1

    def test_c_multiplies_by_lambda(self):
        f = number_field(IntPolynomial([1, -3, 1]))
        pair = multiplication_matrices(f)
        lam = f.lam()
        for coords in [(1, 0), (0, 1), (2, -5)]:
            x = embed(f, coords)
            assert embed(f, pair.c.apply(coords)) == lam * x
            assert embed(f, pair.d.apply(coords)) == x / lam

    def test_seven_field_pair(self):
        f = number_field(IntPolynomial([1, -7, 1]))
        pair = multiplication_matrices(f)
        assert pair.c == ExactMatrix.from_rows([[0, -1], [1, 7]])
        assert pair.d == ExactMatrix.from_rows([[7, 1], [-1, 0]])

    def test_lind_companion(self):
        f = number_field(IntPolynomial([-46, -15, 3, 1]))
        pair = multiplication_matrices(f)
        assert pair.c == ExactMatrix.from_rows(
            [[0, 0, 46], [1, 0, 15], [0, 1, -3]])

    def test_y1_eigen_equation(self):
        for poly in ([1, -3, 1], [1, -7, 1], [-46, -15, 3, 1]):
            f = number_field(IntPolynomial(poly))
            pair = multiplication_matrices(f)
            lam = f.lam()
            k = f.degree
            image = [sum((f.from_rational(Fraction(pair.c.at(i, j))) * pair.y1[j]
                          for j in range(k)), f.zero()) for i in range(k)]
            assert tuple(image) == tuple(lam * y for y in pair.y1)


class TestGrowthCheck:
    def test_golden(self):
        pd = perron_data(A0)
        assert eigen_growth_check(A0, pd.field)

    def test_three_letter(self):
        pd = perron_data(A1)
        assert eigen_growth_check(A1, pd.field)
