"""Weighted barycenter of 2P+ and the Kähler-Einstein existence verdict.

Everything here is exact: the verdict is a sign decision on rational cone
coefficients, so no tolerance ever enters.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from groupke.errors import (
    DimensionMismatchError,
    GroupKEError,
    WeylInvarianceError,
    ZeroVolumeError,
)
from groupke.linalg import dot, sub
from groupke.polynomial import SparsePolynomial
from groupke.polytopes import (
    HPolytope,
    PolytopeValidation,
    canonicalize,
    dilate,
    integrate_polynomial,
    pi_polynomial,
    positive_part,
    validate_polytope,
)
from groupke.rational import Vector, unit_vector
from groupke.root_systems import ConeLocation, ConeTag, RootSystem, cone_locate


class Verdict(str, Enum):
    EXISTS = "Exists"
    SEMISTABLE_BOUNDARY = "SemistableBoundary"
    UNSTABLE = "Unstable"
    FUTAKI_OBSTRUCTED = "FutakiObstructed"


EXIT_CODES = {
    Verdict.EXISTS: 0,
    Verdict.SEMISTABLE_BOUNDARY: 10,
    Verdict.UNSTABLE: 11,
    Verdict.FUTAKI_OBSTRUCTED: 12,
}


@dataclass(frozen=True)
class StabilityReport:
    volume: Fraction
    barycenter: Vector
    central_component: Vector
    cone_location: ConeLocation
    fine: bool
    four_rho_interior: bool
    verdict: Verdict

    @property
    def coefficients(self) -> Vector:
        """c_i with b - 4rho = sum c_i alpha_i on the root span."""
        return self.cone_location.coefficients

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    @property
    def claim(self) -> str:
        if self.verdict is Verdict.FUTAKI_OBSTRUCTED:
            text = "Futaki invariant is nonzero: no Kähler-Einstein metric"
        elif self.verdict is Verdict.UNSTABLE:
            text = "barycenter criterion fails: no Kähler-Einstein metric"
        elif self.verdict is Verdict.SEMISTABLE_BOUNDARY:
            text = "barycenter lies on the boundary of the cone: K-semistable, existence not claimed"
        elif self.fine:
            text = "barycenter criterion holds: a Kähler-Einstein metric exists"
        else:
            text = "criterion satisfied, fineness false: existence claim qualified"
        if not self.four_rho_interior:
            text += "; 4rho is not interior to 2P, the Ding F-integral diverges"
        return text

    def predicted_slope(self, rs: RootSystem, k: int) -> Fraction:
        """Asymptotic slope 1/2 |alpha_k|^2 c_k of the Ding functional along the k-th test ray."""
        if not 1 <= k <= rs.rank:
            raise GroupKEError(f"Weight index {k} is outside 1..{rs.rank}")
        return rs.norm_sq(rs.simple_roots[k - 1]) / 2 * self.coefficients[k - 1]


@lru_cache(maxsize=64)
def positive_double(rs: RootSystem, P: HPolytope) -> HPolytope:
    """2P+ as a canonical polytope."""
    return positive_part(rs, dilate(canonicalize(P), 2))


@lru_cache(maxsize=64)
def barycenter(rs: RootSystem, P: HPolytope) -> tuple[Fraction, Vector]:
    """(V, b): pi-weighted volume and barycenter of 2P+."""
    if P.ambient_dim != rs.ambient_dim:
        raise DimensionMismatchError(
            f"Polytope lives in dimension {P.ambient_dim}, root data in {rs.ambient_dim}"
        )
    try:
        region = positive_double(rs, P)
    except ZeroVolumeError:
        raise ZeroVolumeError(
            "2P+ is a null set: the polytope misses the positive chamber"
        ) from None
    pi = pi_polynomial(rs)
    volume = integrate_polynomial(region, pi)
    if volume == 0:
        raise ZeroVolumeError("Weighted volume of 2P+ vanishes")
    coordinates = []
    for i in range(rs.ambient_dim):
        coordinate = SparsePolynomial.linear(unit_vector(rs.ambient_dim, i))
        moment = integrate_polynomial(region, coordinate * pi)
        coordinates.append(moment / volume)
    return volume, tuple(coordinates)


def _verdict(central: Vector, location: ConeLocation) -> Verdict:
    if any(c != 0 for c in central):
        return Verdict.FUTAKI_OBSTRUCTED
    if location.tag is ConeTag.INTERIOR:
        return Verdict.EXISTS
    if location.tag is ConeTag.BOUNDARY:
        return Verdict.SEMISTABLE_BOUNDARY
    return Verdict.UNSTABLE


def check_existence(
    rs: RootSystem, P: HPolytope, validation: PolytopeValidation | None = None
) -> StabilityReport:
    validation = validation or validate_polytope(rs, P)
    if not validation.w_invariant:
        raise WeylInvarianceError("Polytope fails W-invariance")
    volume, b = barycenter(rs, P)
    _, central = rs.decompose(b)
    span_part = sub(b, central)
    location = cone_locate(rs, sub(span_part, rs.four_rho))
    verdict = _verdict(central, location)
    report = StabilityReport(
        volume=volume,
        barycenter=b,
        central_component=central,
        cone_location=location,
        fine=validation.fine,
        four_rho_interior=validation.four_rho_interior,
        verdict=verdict,
    )
    logging.info(f"Barycenter {[str(c) for c in b]}, verdict {verdict.value}")
    if not validation.fine:
        logging.warning("Polytope is not fine: the existence claim is qualified")
    if not validation.four_rho_interior:
        logging.warning("4rho is not an interior point of 2P")
    return report


def futaki(rs: RootSystem, P: HPolytope, xi: Vector) -> Fraction:
    """b(2P+) paired with a central direction xi of the Lie algebra."""
    if len(xi) != rs.ambient_dim:
        raise DimensionMismatchError(
            f"xi has {len(xi)} coordinates, expected {rs.ambient_dim}"
        )
    for root in rs.simple_roots:
        if dot(xi, root) != 0:
            raise GroupKEError("xi is not central: it pairs nontrivially with a root")
    _, b = barycenter(rs, P)
    return dot(xi, b)

