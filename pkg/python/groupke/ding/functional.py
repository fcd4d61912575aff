"""The reduced Ding functional D = L + F and the E1 distance."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from groupke.criterion import barycenter
from groupke.ding.functions import (
    AffinePiece,
    Cell,
    LegendreTransform,
    PLConvexFunction,
    refine_subdivision,
    rho_pairing,
    validate_pl_function,
)
from groupke.ding.quadrature import (
    QuadratureConfig,
    chamber_grid_min,
    chamber_grid_sum,
    chamber_matrix,
    decay_rate,
    positive_root_matrix,
    truncation_radius,
)
from groupke.errors import DivergentIntegralError
from groupke.linalg import scale, sub
from groupke.polynomial import SparsePolynomial
from groupke.polytopes import (
    HPolytope,
    canonicalize,
    chamber_facets,
    dilate,
    enumerate_vertices,
    integrate_polynomial,
    pi_polynomial,
    try_canonicalize,
    validate_polytope,
)
from groupke.rational import ONE, ZERO
from groupke.root_systems import RootSystem


@lru_cache(maxsize=64)
def doubled(P: HPolytope) -> HPolytope:
    return dilate(canonicalize(P), 2)


@lru_cache(maxsize=256)
def chamber_cells(rs: RootSystem, P: HPolytope, u: PLConvexFunction) -> tuple[Cell, ...]:
    """Linear domains of u intersected with 2P+."""
    cells = []
    for cell in refine_subdivision(doubled(P), u):
        facets = list(cell.polytope.facets) + chamber_facets(rs)
        polytope = try_canonicalize(facets, rs.ambient_dim)
        if polytope is not None:
            cells.append(Cell(polytope, cell.piece))
    return tuple(cells)


def _affine(piece: AffinePiece) -> SparsePolynomial:
    return SparsePolynomial.linear(piece.gradient, piece.offset)


def moment_integral(rs: RootSystem, P: HPolytope, u: PLConvexFunction) -> Fraction:
    """Integral of u * pi over 2P+."""
    pi = pi_polynomial(rs)
    return sum(
        (
            integrate_polynomial(cell.polytope, _affine(cell.piece) * pi)
            for cell in chamber_cells(rs, P, u)
        ),
        ZERO,
    )


def l_functional(rs: RootSystem, P: HPolytope, u: PLConvexFunction) -> Fraction:
    """(1/V) integral of u * pi over 2P+, minus u(4rho)."""
    validate_pl_function(rs, doubled(P), u)
    volume, _ = barycenter(rs, P)
    return moment_integral(rs, P, u) / volume - rho_pairing(rs, u)


def f_functional(
    rs: RootSystem, P: HPolytope, u: PLConvexFunction, q: QuadratureConfig | None = None
) -> float:
    """-log of the chamber integral of exp(-(psi_u - 4rho + u(4rho))) * prod ((1 - e^(-2 alpha))/2)^2."""
    q = q or QuadratureConfig()
    if not validate_polytope(rs, P).four_rho_interior:
        raise DivergentIntegralError(
            "4rho is not an interior point of 2P: the F-integral diverges"
        )
    P2 = doubled(P)
    validate_pl_function(rs, P2, u)
    rate = decay_rate(rs, P2, q.decay_margin)
    u_at_4rho = rho_pairing(rs, u)
    shift = float(max(u(v) for v in enumerate_vertices(P2).points) - u_at_4rho)
    radius = truncation_radius(rs.ambient_dim, rate, shift, q)

    psi = LegendreTransform(P2, u)
    four_rho = np.array([float(c) for c in rs.four_rho])
    roots = positive_root_matrix(rs)
    offset = float(u_at_4rho)

    def integrand(x: np.ndarray) -> np.ndarray:
        exponent = psi(x) - x @ four_rho + offset
        weight = np.prod(((1.0 - np.exp(-2.0 * (x @ roots))) / 2.0) ** 2, axis=1)
        return np.exp(-exponent) * weight

    total = chamber_grid_sum(integrand, chamber_matrix(rs), radius, q)
    if total <= 0:
        raise DivergentIntegralError("F-integral underflowed to zero; refine --step")
    value = -math.log(total)
    logging.debug(f"F = {value:.12g} (decay rate {rate:.4g}, radius {radius:.4g})")
    return value


def ding_functional(
    rs: RootSystem, P: HPolytope, u: PLConvexFunction, q: QuadratureConfig | None = None
) -> float:
    """D(u) = L(u) + F(u)."""
    return float(l_functional(rs, P, u)) + f_functional(rs, P, u, q)


def e1_distance(rs: RootSystem, P: HPolytope, u1: PLConvexFunction, u2: PLConvexFunction) -> Fraction:
    """Integral of |u1 - u2| * pi over 2P+."""
    P2 = doubled(P)
    validate_pl_function(rs, P2, u1)
    validate_pl_function(rs, P2, u2)
    pi = pi_polynomial(rs)
    total = ZERO
    for c1 in chamber_cells(rs, P, u1):
        for c2 in chamber_cells(rs, P, u2):
            gradient = sub(c1.piece.gradient, c2.piece.gradient)
            offset = c1.piece.offset - c2.piece.offset
            difference = SparsePolynomial.linear(gradient, offset)
            facets = list(c1.polytope.facets) + list(c2.polytope.facets)
            if all(c == 0 for c in gradient):
                if offset == 0:
                    continue
                region = try_canonicalize(facets, rs.ambient_dim)
                if region is not None:
                    total += abs(offset) * integrate_polynomial(region, pi)
                continue
            for sign in (ONE, -ONE):
                half = facets + [(scale(-sign, gradient), sign * offset)]
                region = try_canonicalize(half, rs.ambient_dim)
                if region is not None:
                    total += sign * integrate_polynomial(region, difference * pi)
    return total


@dataclass(frozen=True)
class InfimumProbe:
    grid_min: float
    expected: Fraction
    gap: float


def chamber_infimum_probe(
    rs: RootSystem, P: HPolytope, u: PLConvexFunction, q: QuadratureConfig | None = None
) -> InfimumProbe:
    """Grid minimum of psi_u(x) - 4rho(x) over the chamber against -u(4rho)."""
    q = q or QuadratureConfig()
    P2 = doubled(P)
    validate_pl_function(rs, P2, u)
    rate = decay_rate(rs, P2, q.decay_margin)
    expected = -rho_pairing(rs, u)
    shift = float(max(u(v) for v in enumerate_vertices(P2).points) + expected)
    radius = truncation_radius(rs.ambient_dim, rate, shift, q)
    psi = LegendreTransform(P2, u)
    four_rho = np.array([float(c) for c in rs.four_rho])
    grid_min = chamber_grid_min(lambda x: psi(x) - x @ four_rho, chamber_matrix(rs), radius, q)
    return InfimumProbe(grid_min, expected, grid_min - float(expected))
