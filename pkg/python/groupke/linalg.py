"""Exact linear algebra over the rationals.

Vectors and matrices are tuples of Fractions. Elementwise helpers stay in
plain Python; elimination goes through exact sympy matrices.
"""

from collections.abc import Sequence
from fractions import Fraction

import sympy as sp

from groupke.rational import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    from_sympy_rational,
    to_sympy_rational,
)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), ZERO)


def add(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c: Fraction, x: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in x)


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(tuple(col) for col in zip(*m))


def identity(dim: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim))


def block_diagonal(blocks: Sequence[Sequence[Sequence[Fraction]]]) -> Matrix:
    dim = sum(len(b) for b in blocks)
    rows: list[Vector] = []
    offset = 0
    for block in blocks:
        size = len(block)
        for row in block:
            full = [ZERO] * dim
            full[offset : offset + size] = row
            rows.append(tuple(full))
        offset += size
    return tuple(rows)


def to_sympy(rows: Sequence[Sequence[Fraction]]) -> sp.Matrix:
    return sp.Matrix([[to_sympy_rational(v) for v in row] for row in rows])


def from_sympy(m: sp.Matrix) -> Matrix:
    return tuple(
        tuple(from_sympy_rational(m[i, j]) for j in range(m.cols)) for i in range(m.rows)
    )


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return to_sympy(rows).rank()


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 0


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """Unique solution of a square system, or None when it is singular."""
    m = to_sympy(a)
    if m.det() == 0:
        return None
    x = m.LUsolve(to_sympy([[v] for v in b]))
    return tuple(from_sympy_rational(v) for v in x)


def inverse(a: Sequence[Sequence[Fraction]]) -> Matrix | None:
    m = to_sympy(a)
    if m.det() == 0:
        return None
    return from_sympy(m.inv())


def determinant(a: Sequence[Sequence[Fraction]]) -> Fraction:
    if not a:
        return ONE
    return from_sympy_rational(to_sympy(a).det())


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of {z : rows · z = 0}; one free coordinate is 1 in each basis vector."""
    if not rows:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    return [tuple(from_sympy_rational(v) for v in z) for z in to_sympy(rows).nullspace()]
