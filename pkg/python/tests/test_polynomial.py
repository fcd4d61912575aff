from fractions import Fraction

import pytest
import sympy as sp

from groupke.polynomial import SparsePolynomial


def test_no_zero_coefficients_are_stored():
    p = SparsePolynomial.from_dict(2, {(1, 0): Fraction(1), (0, 1): Fraction(0)})
    assert p.terms == (((1, 0), Fraction(1)),)
    x = SparsePolynomial.linear([1, 0])
    assert (x - x).is_zero()


def test_arithmetic_and_evaluation():
    x = SparsePolynomial.linear([1, 0])
    y = SparsePolynomial.linear([0, 1])
    p = (x + y) ** 3 - x * y.scale(2)
    point = (Fraction(1, 2), Fraction(-3))
    assert p(point) == (Fraction(1, 2) - 3) ** 3 - 2 * Fraction(1, 2) * -3
    assert p.degree == 3


def test_equal_polynomials_hash_equal():
    x = SparsePolynomial.linear([1, 0])
    y = SparsePolynomial.linear([0, 1])
    assert (x + y) * (x - y) == x**2 - y**2
    assert hash((x + y) * (x - y)) == hash(x**2 - y**2)


def test_compose_affine():
    # p(y) = y0^2 * y1 under y = (1, 2) + [[1, 1], [0, 3]] s
    p = SparsePolynomial.monomial((2, 1))
    origin = (Fraction(1), Fraction(2))
    matrix = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(3)))
    q = p.compose_affine(origin, matrix)
    for s in [(Fraction(0), Fraction(0)), (Fraction(1, 3), Fraction(-2)), (Fraction(5), Fraction(7, 2))]:
        y = (origin[0] + s[0] + s[1], origin[1] + 3 * s[1])
        assert q(s) == p(y)


def test_mismatched_variables():
    with pytest.raises(ValueError):
        SparsePolynomial.linear([1]) + SparsePolynomial.linear([1, 2])


def test_float_evaluation():
    p = SparsePolynomial.linear([2, 0], 1) ** 2
    assert p((0.5, 4.0)) == pytest.approx(4.0)


def test_matches_sympy_expansion():
    y0, y1 = sp.symbols("y0 y1")
    p = (SparsePolynomial.linear([1, Fraction(1, 2)], -1) ** 4).scale(Fraction(2, 3))
    expected = sp.Poly(sp.Rational(2, 3) * (y0 + y1 / 2 - 1) ** 4, y0, y1, domain=sp.QQ)
    assert p.poly == expected
    assert p.as_dict()[(0, 0)] == Fraction(2, 3)


def test_compose_affine_to_a_point():
    p = SparsePolynomial.linear([3, -1], 2) ** 2
    q = p.compose_affine((Fraction(1), Fraction(4)), ((), ()))
    assert q.nvars == 0
    assert q.terms == (((), Fraction(1)),)
    assert q(()) == 1
