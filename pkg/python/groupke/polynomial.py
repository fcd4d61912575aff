"""Exact sparse multivariate polynomials over the rationals, backed by sympy."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy as sp

from groupke.rational import ZERO, from_sympy_rational, to_sympy_rational

Exponent = tuple[int, ...]


def _generators(nvars: int) -> tuple[sp.Symbol, ...]:
    # sympy needs at least one generator; a constant in zero variables uses a dummy
    return sp.symbols(f"y0:{max(nvars, 1)}")


@dataclass(frozen=True, eq=False)
class SparsePolynomial:
    """A ``sympy.Poly`` over QQ in ``nvars`` variables.

    ``terms`` lists the nonzero coefficients sorted by exponent, so equal
    polynomials compare and hash equal.
    """

    nvars: int
    poly: sp.Poly

    @classmethod
    def from_dict(cls, nvars: int, coefficients: Mapping[Exponent, Fraction]) -> "SparsePolynomial":
        for exponent in coefficients:
            if len(exponent) != nvars:
                raise ValueError(f"Exponent {exponent} does not have {nvars} entries")
        pad = (0,) if nvars == 0 else ()
        data = {tuple(e) + pad: to_sympy_rational(c) for e, c in coefficients.items() if c != 0}
        return cls(nvars, sp.Poly.from_dict(data, *_generators(nvars), domain=sp.QQ))

    @classmethod
    def constant(cls, nvars: int, value: Fraction | int) -> "SparsePolynomial":
        return cls.from_dict(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Fraction | int = 1) -> "SparsePolynomial":
        return cls.from_dict(len(exponent), {tuple(exponent): Fraction(coefficient)})

    @classmethod
    def linear(
        cls, coefficients: Sequence[Fraction], constant: Fraction | int = 0
    ) -> "SparsePolynomial":
        """c . y + constant."""
        n = len(coefficients)
        data: dict[Exponent, Fraction] = {(0,) * n: Fraction(constant)}
        for i, c in enumerate(coefficients):
            e = tuple(1 if j == i else 0 for j in range(n))
            data[e] = Fraction(c)
        return cls.from_dict(n, data)

    @cached_property
    def terms(self) -> tuple[tuple[Exponent, Fraction], ...]:
        return tuple(
            sorted(
                (tuple(e[: self.nvars]), from_sympy_rational(c))
                for e, c in self.poly.terms()
                if c != 0
            )
        )

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, self.terms))

    def _check(self, other: "SparsePolynomial") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"Polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check(other)
        return SparsePolynomial(self.nvars, self.poly + other.poly)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.nvars, -self.poly)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check(other)
        return SparsePolynomial(self.nvars, self.poly - other.poly)

    def scale(self, factor: Fraction | int) -> "SparsePolynomial":
        return SparsePolynomial(self.nvars, self.poly.mul_ground(to_sympy_rational(factor)))

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check(other)
        return SparsePolynomial(self.nvars, self.poly * other.poly)

    def __pow__(self, power: int) -> "SparsePolynomial":
        if power < 0:
            raise ValueError("Negative powers are not polynomials")
        return SparsePolynomial(self.nvars, self.poly**power)

    def __call__(self, point: Sequence[Fraction | float]) -> Fraction | float:
        """Evaluate; exact for rational points."""
        if all(isinstance(x, (int, Fraction)) for x in point):
            values = dict(zip(_generators(self.nvars), map(to_sympy_rational, point)))
            return from_sympy_rational(self.poly.as_expr().xreplace(values))
        total: Fraction | float = ZERO
        for e, c in self.terms:
            term: Fraction | float = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def compose_affine(
        self, origin: Sequence[Fraction], matrix: Sequence[Sequence[Fraction]]
    ) -> "SparsePolynomial":
        """Substitute y = origin + matrix @ s; the result is a polynomial in s."""
        out_vars = len(matrix[0]) if matrix else 0
        s = _generators(out_vars)
        forms = {
            y: to_sympy_rational(origin[i])
            + sum(
                (to_sympy_rational(m) * s_j for m, s_j in zip(matrix[i], s[:out_vars])),
                sp.Integer(0),
            )
            for i, y in enumerate(_generators(self.nvars)[: self.nvars])
        }
        # xreplace substitutes simultaneously, so shared symbol names are safe
        expr = self.poly.as_expr().xreplace(forms)
        return SparsePolynomial(out_vars, sp.Poly(expr, *s, domain=sp.QQ))
