"""Numerical probes of the Ding functional: test rays, linear paths, properness."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from groupke.criterion import check_existence
from groupke.ding.functional import (
    ding_functional,
    doubled,
    e1_distance,
    moment_integral,
)
from groupke.ding.functions import PLConvexFunction, linear_path, test_ray
from groupke.ding.quadrature import QuadratureConfig
from groupke.errors import DegenerateFitError, GroupKEError, RootSystemError
from groupke.polytopes import HPolytope
from groupke.rational import to_fraction
from groupke.root_systems import RootSystem

DEFAULT_CONVEXITY_TOLERANCE = 1e-3


class RayClass(str, Enum):
    DECREASING_UNBOUNDED = "decreasing_unbounded"
    BOUNDED_BELOW_GROWING = "bounded_below_growing"


@dataclass(frozen=True)
class RayScanReport:
    k: int
    lambdas: tuple[float, ...]
    values: tuple[float, ...]
    fitted_slope: float
    intercept: float
    predicted_slope: Fraction
    classification: RayClass


def fit_trailing_slope(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Least-squares line through the trailing half of the samples (at least two)."""
    n = len(xs)
    if n < 2:
        raise DegenerateFitError(f"Slope fit needs at least 2 grid points, got {n}")
    start = min(n // 2, n - 2)
    slope, intercept = np.polyfit(np.asarray(xs[start:]), np.asarray(ys[start:]), 1)
    return float(slope), float(intercept)


def ray_scan(
    rs: RootSystem,
    P: HPolytope,
    k: int,
    lambdas: Sequence[float | Fraction],
    q: QuadratureConfig | None = None,
) -> RayScanReport:
    """D(u_lambda) along the k-th test ray and its asymptotic slope."""
    if rs.is_toric:
        raise RootSystemError("Ray scan needs roots: toric data has no fundamental weights")
    grid = [to_fraction(lam) for lam in lambdas]
    if any(lam <= 0 for lam in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise GroupKEError("Ray grid must be positive and strictly increasing")
    if len(grid) < 2:
        raise DegenerateFitError(f"Slope fit needs at least 2 grid points, got {len(grid)}")
    report = check_existence(rs, P)
    predicted = report.predicted_slope(rs, k)
    P2 = doubled(P)
    values = []
    for i, lam in enumerate(grid, start=1):
        values.append(ding_functional(rs, P, test_ray(rs, P2, k, lam), q))
        logging.info(f"Ray {k}: lambda = {float(lam):.6g}, D = {values[-1]:.12g} ({i}/{len(grid)})")
    xs = [float(lam) for lam in grid]
    slope, intercept = fit_trailing_slope(xs, values)
    classification = (
        RayClass.DECREASING_UNBOUNDED if slope < 0 else RayClass.BOUNDED_BELOW_GROWING
    )
    logging.info(
        f"Fitted slope {slope:.6g}, predicted {float(predicted):.6g}: {classification.value}"
    )
    return RayScanReport(
        k=k,
        lambdas=tuple(xs),
        values=tuple(values),
        fitted_slope=slope,
        intercept=intercept,
        predicted_slope=predicted,
        classification=classification,
    )


@dataclass(frozen=True)
class ConvexityReport:
    ts: tuple[float, ...]
    values: tuple[float, ...]
    violations: tuple[float, ...]
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


def path_convexity_probe(
    rs: RootSystem,
    P: HPolytope,
    u0: PLConvexFunction,
    u1: PLConvexFunction,
    ts: Sequence[float | Fraction],
    q: QuadratureConfig | None = None,
    tolerance: float = DEFAULT_CONVEXITY_TOLERANCE,
) -> ConvexityReport:
    """Midpoint convexity of t -> D((1 - t) u0 + t u1) on a grid of [0, 1].

    Violations compare D at each interior grid point with the chord through
    its two neighbours; they are nonpositive for a convex path.
    """
    grid = [to_fraction(t) for t in ts]
    if any(t < 0 or t > 1 for t in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise GroupKEError("Path grid must be strictly increasing inside [0, 1]")
    values = [ding_functional(rs, P, linear_path(u0, u1, t), q) for t in grid]
    xs = [float(t) for t in grid]
    violations = []
    for i in range(1, len(xs) - 1):
        left, right = xs[i] - xs[i - 1], xs[i + 1] - xs[i]
        chord = (right * values[i - 1] + left * values[i + 1]) / (left + right)
        violations.append(values[i] - chord)
    max_violation = max(violations, default=0.0)
    logging.info(f"Path convexity: max violation {max_violation:.3g} over {len(xs)} points")
    return ConvexityReport(
        ts=tuple(xs),
        values=tuple(values),
        violations=tuple(violations),
        max_violation=max_violation,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class PropernessReport:
    integrals: tuple[float, ...]
    values: tuple[float, ...]
    c0: float | None
    C0: float
    min_margin: float
    best_index: int
    ratio: float | None
    margins: tuple[float, ...] = ()

    @property
    def proper(self) -> bool:
        return self.c0 is not None and self.c0 > 0


def _lower_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Vertices of the lower convex hull, left to right; collinear points are dropped."""
    lowest: dict[float, float] = {}
    for x, y in points:
        lowest[x] = min(y, lowest.get(x, math.inf))
    pts = sorted(lowest.items())
    if len(pts) <= 2:
        return pts
    arr = np.array(pts)
    spread = np.ptp(arr, axis=0)
    if spread[1] == 0:
        return [pts[0], pts[-1]]
    try:
        hull = ConvexHull((arr - arr.min(axis=0)) / spread)
    except QhullError:
        # all points on one line
        return [pts[0], pts[-1]]
    lower = hull.simplices[hull.equations[:, 1] < 0]
    return [pts[i] for i in sorted(set(lower.ravel().tolist()))]


def _held_out_margins(
    integrals: Sequence[float], values: Sequence[float], slope: float
) -> tuple[float, ...]:
    """D(u) - slope * integral(u pi) + C0 on the farther half of the samples.

    C0 is fitted on the nearer half only, so the margins go negative when D
    keeps falling below the line. With one sample it is evaluated on itself.
    """
    order = sorted(range(len(integrals)), key=integrals.__getitem__)
    split = max(1, len(order) // 2)
    leading, held_out = order[:split], order[split:] or order[:split]
    C0 = max(slope * integrals[j] - values[j] for j in leading)
    return tuple(values[j] - slope * integrals[j] + C0 for j in held_out)


def properness_probe(
    rs: RootSystem,
    P: HPolytope,
    samples: Sequence[PLConvexFunction],
    q: QuadratureConfig | None = None,
) -> PropernessReport:
    """Fit D(u) >= c0 * integral(u pi) - C0 over the samples.

    c0 is the slope of the last edge of the lower convex hull of the points
    (integral(u pi), D(u)). Margins refit C0 for max(c0, 0) on the nearer half
    of the samples and test the farther half. The ratio statistic is the
    infimum of (D(u) - D(u_best)) / d(u_best, u) over samples at distance at
    least 1 from the sample u_best of least D.
    """
    if not samples:
        raise GroupKEError("Properness probe needs at least one sample")
    integrals = [float(moment_integral(rs, P, u)) for u in samples]
    values = [ding_functional(rs, P, u, q) for u in samples]
    hull = _lower_hull(list(zip(integrals, values)))
    if len(hull) >= 2:
        (x1, y1), (x2, y2) = hull[-2], hull[-1]
        c0: float | None = (y2 - y1) / (x2 - x1)
    else:
        c0 = None
    slope = c0 or 0.0
    C0 = max(slope * i - d for i, d in zip(integrals, values))
    margins = _held_out_margins(integrals, values, max(slope, 0.0))

    best = min(range(len(samples)), key=values.__getitem__)
    ratio = math.inf
    for j, u in enumerate(samples):
        distance = float(e1_distance(rs, P, samples[best], u))
        if distance >= 1:
            ratio = min(ratio, (values[j] - values[best]) / distance)
    report = PropernessReport(
        integrals=tuple(integrals),
        values=tuple(values),
        c0=c0,
        C0=C0,
        min_margin=min(margins),
        best_index=best,
        ratio=None if ratio == math.inf else ratio,
        margins=margins,
    )
    logging.info(
        f"Properness probe: c0 = {c0}, C0 = {C0:.6g}, "
        f"min margin = {report.min_margin:.6g}, ratio = {report.ratio}"
    )
    return report
