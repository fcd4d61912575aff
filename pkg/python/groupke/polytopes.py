"""Exact rational polytopes: canonical H-representation, vertices, chamber
intersection, triangulation and exact polynomial integration."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, gcd, lcm

from groupke.errors import DimensionMismatchError, PolytopeError, ZeroVolumeError
from groupke.linalg import (
    affine_rank,
    determinant,
    dot,
    mat_vec,
    nullspace,
    scale,
    solve,
    sub,
    transpose,
)
from groupke.polynomial import SparsePolynomial
from groupke.rational import ONE, ZERO, Vector, to_fraction, to_vector, unit_vector
from groupke.root_systems import RootSystem

Facet = tuple[Vector, Fraction]


@dataclass(frozen=True)
class HPolytope:
    """{y : normal . y <= offset for every facet}."""

    facets: tuple[Facet, ...]
    ambient_dim: int


@dataclass(frozen=True)
class VertexSet:
    points: tuple[Vector, ...]


@dataclass(frozen=True)
class Simplex:
    points: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.points) != self.dim + 1:
            raise PolytopeError(
                f"A simplex in dimension {self.dim} needs {self.dim + 1} points, "
                f"got {len(self.points)}"
            )
        if self.determinant == 0:
            raise PolytopeError("Degenerate simplex: vertices are affinely dependent")

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def edge_matrix(self) -> tuple[Vector, ...]:
        """Columns are p_i - p_0."""
        base = self.points[0]
        return transpose([sub(p, base) for p in self.points[1:]])

    @property
    def determinant(self) -> Fraction:
        return determinant(self.edge_matrix)

    @property
    def volume(self) -> Fraction:
        return abs(self.determinant) / factorial(self.dim)


@dataclass(frozen=True)
class PolytopeValidation:
    w_invariant: bool
    contains_origin_interior: bool
    four_rho_interior: bool
    fine: bool


def _scaled_facet(normal: Sequence[Fraction], offset: Fraction) -> Facet | None:
    """Positive rescaling to a primitive integer normal; None for a zero normal."""
    if all(c == 0 for c in normal):
        return None
    denominators = lcm(*(c.denominator for c in normal))
    integral = [int(c * denominators) for c in normal]
    divisor = gcd(*integral)
    primitive = tuple(Fraction(i // divisor) for i in integral)
    return primitive, offset * Fraction(denominators, divisor)


def _feasible(point: Vector, facets: Iterable[Facet]) -> bool:
    return all(dot(n, point) <= c for n, c in facets)


def _basic_solutions(facets: Sequence[Facet], dim: int) -> list[Vector]:
    """Feasible intersections of dim facets, deduplicated and sorted."""
    points: set[Vector] = set()
    for subset in combinations(facets, dim):
        point = solve([n for n, _ in subset], [c for _, c in subset])
        if point is not None and _feasible(point, facets):
            points.add(point)
    return sorted(points)


def _prepare(raw: Iterable[Facet], dim: int) -> list[Facet] | None:
    """Scale, drop trivial rows and duplicates. None when a row is infeasible."""
    best: dict[Vector, Fraction] = {}
    for normal, offset in raw:
        normal, offset = to_vector(normal), Fraction(offset)
        if len(normal) != dim:
            raise DimensionMismatchError(
                f"Facet normal has {len(normal)} coordinates, expected {dim}"
            )
        scaled = _scaled_facet(normal, offset)
        if scaled is None:
            if offset < 0:
                return None
            continue
        n, c = scaled
        best[n] = min(c, best.get(n, c))
    return sorted(best.items())


def _canonical_or_reason(raw: Iterable[Facet], dim: int) -> tuple[HPolytope | None, str]:
    facets = _prepare(raw, dim)
    if facets is None:
        return None, "empty"
    if not facets:
        return None, "unbounded"
    vertices = _basic_solutions(facets, dim)
    bound = 1 + max((abs(c) for v in vertices for c in v), default=ZERO)
    box = [(unit_vector(dim, i), bound) for i in range(dim)]
    box += [(scale(-ONE, unit_vector(dim, i)), bound) for i in range(dim)]
    boxed = _basic_solutions(facets + box, dim)
    if not boxed:
        return None, "empty"
    if any(abs(c) == bound for v in boxed for c in v):
        return None, "unbounded"
    if affine_rank(boxed) < dim:
        return None, "lower-dimensional"
    kept = []
    for normal, offset in facets:
        tight = [v for v in boxed if dot(normal, v) == offset]
        if affine_rank(tight) == dim - 1:
            kept.append((normal, offset))
    return HPolytope(tuple(kept), dim), ""


def canonicalize(P: HPolytope) -> HPolytope:
    """Primitive integer normals, no duplicate or redundant facets, sorted.

    Raises PolytopeError for empty, unbounded or lower-dimensional input.
    """
    polytope, reason = _canonical_or_reason(P.facets, P.ambient_dim)
    if polytope is None:
        raise PolytopeError(f"Polytope is {reason}")
    return polytope


def try_canonicalize(facets: Iterable[Facet], dim: int) -> HPolytope | None:
    """Canonical polytope, or None when the inequalities cut out no full-dimensional body."""
    polytope, reason = _canonical_or_reason(facets, dim)
    if reason == "unbounded":
        raise PolytopeError("Polytope is unbounded")
    return polytope


def make_polytope(inequalities: Iterable[tuple[Sequence[object], object]], dim: int) -> HPolytope:
    facets = [(to_vector(n), to_fraction(c)) for n, c in inequalities]
    return canonicalize(HPolytope(tuple(facets), dim))


def from_vertices(points: Iterable[Sequence[object]]) -> HPolytope:
    """H-representation of the convex hull of the given points."""
    vertices = sorted({to_vector(p) for p in points})
    if not vertices:
        raise PolytopeError("No vertices given")
    dim = len(vertices[0])
    if any(len(v) != dim for v in vertices):
        raise DimensionMismatchError("Vertices have different numbers of coordinates")
    if affine_rank(vertices) < dim:
        raise PolytopeError("Polytope is lower-dimensional")
    facets: set[Facet] = set()
    for subset in combinations(vertices, dim):
        if affine_rank(subset) != dim - 1:
            continue
        base = subset[0]
        normal = nullspace([sub(p, base) for p in subset[1:]], dim)[0]
        offset = dot(normal, base)
        values = [dot(normal, v) for v in vertices]
        if all(x <= offset for x in values):
            facets.add((normal, offset))
        elif all(x >= offset for x in values):
            facets.add((scale(-ONE, normal), -offset))
    return canonicalize(HPolytope(tuple(facets), dim))


@lru_cache(maxsize=512)
def enumerate_vertices(P: HPolytope) -> VertexSet:
    vertices = _basic_solutions(list(P.facets), P.ambient_dim)
    logging.debug(f"Polytope with {len(P.facets)} facets has {len(vertices)} vertices")
    return VertexSet(tuple(vertices))


def contains(P: HPolytope, y: Sequence[Fraction]) -> bool:
    return all(dot(n, y) <= c for n, c in P.facets)


def interior_contains(P: HPolytope, y: Sequence[Fraction]) -> bool:
    return all(dot(n, y) < c for n, c in P.facets)


def support_function(P: HPolytope, x: Sequence[Fraction | float]) -> Fraction | float:
    """v_P(x) = max over P of x . y."""
    return max(dot(x, v) for v in enumerate_vertices(P).points)


def dilate(P: HPolytope, factor: Fraction | int) -> HPolytope:
    factor = Fraction(factor)
    if factor <= 0:
        raise PolytopeError(f"Dilation factor must be positive, got {factor}")
    return HPolytope(tuple((n, c * factor) for n, c in P.facets), P.ambient_dim)


def _check_dim(rs: RootSystem, P: HPolytope) -> None:
    if P.ambient_dim != rs.ambient_dim:
        raise DimensionMismatchError(
            f"Polytope lives in dimension {P.ambient_dim}, root data in {rs.ambient_dim}"
        )


def chamber_facets(rs: RootSystem) -> list[Facet]:
    """-<alpha_i, y> <= 0 for the simple roots."""
    return [(scale(-ONE, rs.lower(a)), ZERO) for a in rs.simple_roots]


def positive_part(rs: RootSystem, P: HPolytope) -> HPolytope:
    """P intersected with the closed positive Weyl chamber."""
    _check_dim(rs, P)
    result = try_canonicalize(list(P.facets) + chamber_facets(rs), P.ambient_dim)
    if result is None:
        raise ZeroVolumeError("Polytope meets the positive chamber in a null set")
    return result


def _facet_image(matrix: Sequence[Sequence[Fraction]], facet: Facet) -> Facet:
    # Weyl elements here are involutive generators, so w^-1 = w.
    normal, offset = facet
    return _scaled_facet(mat_vec(transpose(matrix), normal), offset)


def validate_polytope(rs: RootSystem, P: HPolytope) -> PolytopeValidation:
    _check_dim(rs, P)
    P = canonicalize(P)
    facet_set = set(P.facets)
    w_invariant = all(
        {_facet_image(s, f) for f in P.facets} == facet_set for s in rs.weyl_generators
    )
    vertices = enumerate_vertices(P).points
    fine = all(
        sum(1 for n, c in P.facets if dot(n, v) == c) == P.ambient_dim for v in vertices
    )
    origin = (ZERO,) * P.ambient_dim
    validation = PolytopeValidation(
        w_invariant=w_invariant,
        contains_origin_interior=interior_contains(P, origin),
        four_rho_interior=interior_contains(dilate(P, 2), rs.four_rho),
        fine=fine,
    )
    logging.debug(f"Polytope validation: {validation}")
    return validation


def _face_simplices(
    face: frozenset[int],
    k: int,
    tight: Sequence[frozenset[int]],
    points: Sequence[Vector],
) -> list[tuple[int, ...]]:
    """Pulling triangulation of a k-face from its lowest-index vertex."""
    if k == 0:
        return [(min(face),)]
    apex = min(face)
    simplices = []
    seen: set[frozenset[int]] = set()
    for t in tight:
        subface = face & t
        if subface == face or apex in subface or subface in seen:
            continue
        if affine_rank([points[i] for i in sorted(subface)]) != k - 1:
            continue
        seen.add(subface)
        for s in _face_simplices(subface, k - 1, tight, points):
            simplices.append((apex,) + s)
    return simplices


@lru_cache(maxsize=512)
def triangulate(P: HPolytope) -> tuple[Simplex, ...]:
    """Fan from the vertex centroid over a pulling triangulation of the boundary."""
    points = enumerate_vertices(P).points
    dim = P.ambient_dim
    if affine_rank(points) < dim:
        raise PolytopeError("Cannot triangulate a lower-dimensional polytope")
    centroid = tuple(sum(coords, ZERO) / len(points) for coords in zip(*points))
    tight = [
        frozenset(i for i, v in enumerate(points) if dot(n, v) == c) for n, c in P.facets
    ]
    cells = []
    for t in tight:
        if affine_rank([points[i] for i in sorted(t)]) != dim - 1:
            continue
        for s in _face_simplices(t, dim - 1, tight, points):
            cells.append(Simplex((centroid,) + tuple(points[i] for i in s)))
    logging.debug(f"Triangulated polytope into {len(cells)} simplices")
    return tuple(cells)


def integrate_over_simplex(S: Simplex, f: SparsePolynomial) -> Fraction:
    """Exact integral of f over S via the affine pullback to the standard simplex."""
    d = S.dim
    pulled = f.compose_affine(S.points[0], S.edge_matrix)
    total = ZERO
    for exponent, coefficient in pulled.terms:
        numerator = 1
        for b in exponent:
            numerator *= factorial(b)
        total += coefficient * Fraction(numerator, factorial(sum(exponent) + d))
    return total * abs(S.determinant)


def monomial_simplex_integral(S: Simplex, exponent: Sequence[int]) -> Fraction:
    if len(exponent) != S.dim:
        raise DimensionMismatchError(
            f"Exponent has {len(exponent)} entries, simplex dimension is {S.dim}"
        )
    return integrate_over_simplex(S, SparsePolynomial.monomial(exponent))


def integrate_polynomial(P: HPolytope, f: SparsePolynomial) -> Fraction:
    if f.nvars != P.ambient_dim:
        raise DimensionMismatchError(
            f"Polynomial in {f.nvars} variables, polytope dimension {P.ambient_dim}"
        )
    return sum((integrate_over_simplex(S, f) for S in triangulate(P)), ZERO)


def volume(P: HPolytope) -> Fraction:
    return sum((S.volume for S in triangulate(P)), ZERO)


@lru_cache(maxsize=64)
def pi_polynomial(rs: RootSystem) -> SparsePolynomial:
    """prod over positive roots of <alpha, y>^2."""
    result = SparsePolynomial.constant(rs.ambient_dim, 1)
    for root in rs.positive_roots:
        result = result * SparsePolynomial.linear(rs.lower(root)) ** 2
    return result

