"""Piecewise-linear W-invariant convex functions on 2P and their Legendre transforms.

Gradients live in the Lie algebra side and pair with weights by the plain
coordinate dot product, so u(y) = max_j (a_j . y + b_j).
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from groupke.errors import (
    DimensionMismatchError,
    GroupKEError,
    NormalizationError,
    PolytopeError,
    RootSystemError,
    WeylInvarianceError,
)
from groupke.linalg import add, dot, mat_vec, scale, sub
from groupke.polytopes import HPolytope, contains, enumerate_vertices, try_canonicalize
from groupke.rational import ONE, ZERO, Vector, to_fraction, zero_vector
from groupke.root_systems import RootSystem, weyl_orbit


@dataclass(frozen=True)
class AffinePiece:
    gradient: Vector
    offset: Fraction

    def __call__(self, y: Sequence[Fraction | float]) -> Fraction | float:
        return dot(self.gradient, y) + self.offset


@dataclass(frozen=True)
class PLConvexFunction:
    pieces: tuple[AffinePiece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise GroupKEError("A piecewise-linear function needs at least one piece")
        if len({len(p.gradient) for p in self.pieces}) != 1:
            raise DimensionMismatchError("Pieces have gradients of different dimensions")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[object], object]]) -> "PLConvexFunction":
        return cls(
            tuple(
                AffinePiece(tuple(to_fraction(c) for c in g), to_fraction(b)) for g, b in pairs
            )
        )

    @property
    def dim(self) -> int:
        return len(self.pieces[0].gradient)

    def __call__(self, y: Sequence[Fraction | float]) -> Fraction | float:
        return max(p(y) for p in self.pieces)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Float evaluation on an (m, dim) array of points."""
        gradients = np.array([[float(c) for c in p.gradient] for p in self.pieces])
        offsets = np.array([float(p.offset) for p in self.pieces])
        return (points @ gradients.T + offsets).max(axis=1)


def zero_function(dim: int) -> PLConvexFunction:
    return PLConvexFunction((AffinePiece(zero_vector(dim), ZERO),))


@dataclass(frozen=True)
class Cell:
    polytope: HPolytope
    piece: AffinePiece


@lru_cache(maxsize=256)
def refine_subdivision(P2: HPolytope, u: PLConvexFunction) -> tuple[Cell, ...]:
    """Linear domains of u on P2; ties go to the lowest-index piece."""
    if u.dim != P2.ambient_dim:
        raise DimensionMismatchError(
            f"Function has dimension {u.dim}, polytope {P2.ambient_dim}"
        )
    cells = []
    for j, piece in enumerate(u.pieces):
        if piece in u.pieces[:j]:
            continue
        facets = list(P2.facets)
        for other in u.pieces:
            if other is piece or other == piece:
                continue
            facets.append((sub(other.gradient, piece.gradient), piece.offset - other.offset))
        polytope = try_canonicalize(facets, P2.ambient_dim)
        if polytope is not None:
            cells.append(Cell(polytope, piece))
    logging.debug(f"Refined subdivision has {len(cells)} cells for {len(u.pieces)} pieces")
    return tuple(cells)


@lru_cache(maxsize=256)
def subdivision_vertices(P2: HPolytope, u: PLConvexFunction) -> tuple[Vector, ...]:
    points = {v for cell in refine_subdivision(P2, u) for v in enumerate_vertices(cell.polytope).points}
    return tuple(sorted(points))


def legendre_eval(P2: HPolytope, u: PLConvexFunction, x: Sequence[Fraction | float]) -> Fraction | float:
    """psi_u(x) = sup over P2 of x . y - u(y); exact for rational x."""
    if len(x) != P2.ambient_dim:
        raise DimensionMismatchError(f"x has {len(x)} coordinates, expected {P2.ambient_dim}")
    return max(dot(x, v) - u(v) for v in subdivision_vertices(P2, u))


class LegendreTransform:
    """Vectorized float evaluation of psi_u."""

    def __init__(self, P2: HPolytope, u: PLConvexFunction):
        vertices = subdivision_vertices(P2, u)
        self.vertices = np.array([[float(c) for c in v] for v in vertices])
        self.values = np.array([float(u(v)) for v in vertices])

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return (x @ self.vertices.T - self.values).max(axis=1)


def validate_pl_function(rs: RootSystem, P2: HPolytope, u: PLConvexFunction) -> PLConvexFunction:
    """Check u(O) = 0, u >= 0 and W-invariance on the refined subdivision."""
    if u.dim != rs.ambient_dim or P2.ambient_dim != rs.ambient_dim:
        raise DimensionMismatchError(
            f"Function has dimension {u.dim}, root data {rs.ambient_dim}"
        )
    origin = zero_vector(rs.ambient_dim)
    if not contains(P2, origin):
        raise PolytopeError("The origin does not lie in 2P")
    if u(origin) != 0:
        raise NormalizationError(f"Normalization u(O) = 0 violated: u(O) = {u(origin)}")
    vertices = subdivision_vertices(P2, u)
    for v in vertices:
        if u(v) < 0:
            raise NormalizationError(
                f"Normalization inf u = u(O) = 0 violated: u = {u(v)} at {[str(c) for c in v]}"
            )
    for s in rs.weyl_generators:
        for v in vertices:
            if u(mat_vec(s, v)) != u(v):
                raise WeylInvarianceError(
                    f"W-invariance violated at {[str(c) for c in v]}"
                )
    return u


def test_ray(rs: RootSystem, P2: HPolytope, k: int, lam: Fraction | float | int) -> PLConvexFunction:
    """u_lam(y) = lam * max over w of <w(varpi_k), y>."""
    if rs.is_toric:
        raise RootSystemError("Toric root data has no fundamental weights")
    if not 1 <= k <= rs.rank:
        raise GroupKEError(f"Weight index {k} is outside 1..{rs.rank}")
    if P2.ambient_dim != rs.ambient_dim:
        raise DimensionMismatchError(
            f"Polytope lives in dimension {P2.ambient_dim}, root data in {rs.ambient_dim}"
        )
    lam = to_fraction(lam)
    if lam < 0:
        raise GroupKEError(f"Ray parameter must be non-negative, got {lam}")
    if lam == 0:
        return zero_function(rs.ambient_dim)
    orbit = weyl_orbit(rs, rs.fundamental_weights[k - 1])
    gradients = sorted({scale(lam, rs.lower(w)) for w in orbit})
    return PLConvexFunction(tuple(AffinePiece(g, ZERO) for g in gradients))


# keep pytest from collecting the ray constructor
test_ray.__test__ = False


def linear_path(u0: PLConvexFunction, u1: PLConvexFunction, t: Fraction | float | int) -> PLConvexFunction:
    """(1 - t) u0 + t u1 as a max of pairwise piece sums."""
    t = to_fraction(t)
    if u0.dim != u1.dim:
        raise DimensionMismatchError("Path endpoints live in different dimensions")
    pieces: dict[AffinePiece, None] = {}
    for p in u0.pieces:
        for q in u1.pieces:
            gradient = add(scale(ONE - t, p.gradient), scale(t, q.gradient))
            offset = (ONE - t) * p.offset + t * q.offset
            pieces.setdefault(AffinePiece(gradient, offset), None)
    return PLConvexFunction(tuple(pieces))


def rho_pairing(rs: RootSystem, u: PLConvexFunction) -> Fraction:
    """u(4rho)."""
    return u(rs.four_rho)
