import random
from fractions import Fraction

import pytest
from conftest import box, interval, random_even_function

from groupke.ding import (
    PLConvexFunction,
    RayClass,
    path_convexity_probe,
    properness_probe,
    ray_scan,
    test_ray,
    zero_function,
)
from groupke.ding.probes import _lower_hull, fit_trailing_slope
from groupke.errors import DegenerateFitError, GroupKEError, RootSystemError
from groupke.polytopes import dilate

KINKED = PLConvexFunction.from_pairs([((1,), 0), ((-1,), 0), ((3,), -2), ((-3,), -2)])


@pytest.mark.slow
def test_unstable_ray_decreases_at_the_predicted_rate(a1, unstable_interval, quadrature):
    lambdas = [Fraction(20 + 2 * i) for i in range(11)]
    report = ray_scan(a1, unstable_interval, 1, lambdas, quadrature)
    assert report.predicted_slope == Fraction(-1, 5)
    assert report.classification is RayClass.DECREASING_UNBOUNDED
    assert report.fitted_slope == pytest.approx(-0.2, rel=0.1)
    assert len(report.values) == 11


@pytest.mark.slow
def test_stable_ray_grows(a1, stable_interval, quadrature):
    lambdas = [Fraction(i) for i in range(2, 11)]
    report = ray_scan(a1, stable_interval, 1, lambdas, quadrature)
    assert report.classification is RayClass.BOUNDED_BELOW_GROWING
    assert report.fitted_slope == pytest.approx(1.0, rel=0.1)


def test_fit_needs_two_points():
    with pytest.raises(DegenerateFitError):
        fit_trailing_slope([1.0], [2.0])
    slope, intercept = fit_trailing_slope([1.0, 2.0, 3.0, 4.0], [0.0, 5.0, 7.0, 9.0])
    assert slope == pytest.approx(2.0)
    assert intercept == pytest.approx(1.0)


def test_ray_scan_argument_checks(a1, toric2, stable_interval, quadrature):
    with pytest.raises(DegenerateFitError):
        ray_scan(a1, stable_interval, 1, [Fraction(5)], quadrature)
    with pytest.raises(GroupKEError):
        ray_scan(a1, stable_interval, 1, [Fraction(2), Fraction(1)], quadrature)
    with pytest.raises(RootSystemError):
        ray_scan(toric2, box(2), 1, [Fraction(1), Fraction(2)], quadrature)


def test_convexity_along_a_ray(a1, stable_interval, quadrature):
    u1 = test_ray(a1, dilate(stable_interval, 2), 1, 4)
    ts = [Fraction(i, 4) for i in range(5)]
    report = path_convexity_probe(a1, stable_interval, zero_function(1), u1, ts, quadrature)
    assert report.passed
    assert len(report.violations) == 3
    assert all(v <= report.tolerance for v in report.violations)


def test_convexity_between_kinked_functions(a1, stable_interval, quadrature):
    u0 = test_ray(a1, dilate(stable_interval, 2), 1, Fraction(1, 2))
    report = path_convexity_probe(
        a1, stable_interval, u0, KINKED, [Fraction(i, 6) for i in range(7)], quadrature
    )
    assert report.passed
    assert report.max_violation <= report.tolerance


def test_constant_path_has_no_violation(a1, stable_interval, quadrature):
    ts = [Fraction(0), Fraction(1, 3), Fraction(1)]
    report = path_convexity_probe(a1, stable_interval, KINKED, KINKED, ts, quadrature)
    assert report.max_violation == pytest.approx(0.0, abs=1e-12)


def test_path_grid_must_lie_in_unit_interval(a1, stable_interval, quadrature):
    with pytest.raises(GroupKEError):
        path_convexity_probe(a1, stable_interval, KINKED, KINKED, [Fraction(0), Fraction(2)], quadrature)


def test_properness_with_a_single_sample(a1, stable_interval, quadrature):
    report = properness_probe(a1, stable_interval, [zero_function(1)], quadrature)
    assert report.c0 is None
    assert report.C0 == pytest.approx(-report.values[0])
    assert report.margins == (0.0,)
    assert report.min_margin == 0.0
    assert report.ratio is None
    assert not report.proper


def test_properness_of_stable_rays(a1, stable_interval, quadrature):
    P2 = dilate(stable_interval, 2)
    samples = [zero_function(1)] + [test_ray(a1, P2, 1, lam) for lam in range(2, 12, 2)]
    report = properness_probe(a1, stable_interval, samples, quadrature)
    assert report.proper
    assert report.c0 > 0
    assert len(report.margins) == 3
    assert report.min_margin > -5
    assert report.integrals[1] == pytest.approx(2 * 256)
    assert report.ratio is not None and report.ratio > 0


def test_unstable_rays_are_not_proper(a1, unstable_interval, quadrature):
    P2 = dilate(unstable_interval, 2)
    samples = [test_ray(a1, P2, 1, lam) for lam in range(10, 40, 5)]
    report = properness_probe(a1, unstable_interval, samples, quadrature)
    assert not report.proper
    assert report.best_index == len(samples) - 1


def test_properness_needs_samples(a1, stable_interval):
    with pytest.raises(GroupKEError):
        properness_probe(a1, stable_interval, [])


def test_toric_zero_sample(toric1, quadrature):
    report = properness_probe(toric1, interval(-1, 1), [zero_function(1)], quadrature)
    assert report.values[0] == pytest.approx(0.0, abs=1e-4)


@pytest.mark.slow
def test_convexity_along_random_paths(a1, stable_interval, quadrature):
    rng = random.Random(17)
    ts = [Fraction(i, 4) for i in range(5)]
    for _ in range(20):
        u0, u1 = random_even_function(rng), random_even_function(rng)
        report = path_convexity_probe(a1, stable_interval, u0, u1, ts, quadrature)
        assert report.passed, report.violations


def _mixed_samples(a1, P, rng):
    P2 = dilate(P, 2)
    rays = [test_ray(a1, P2, 1, lam) for lam in range(2, 42, 2)]
    return rays + [random_even_function(rng) for _ in range(30)]


@pytest.mark.slow
def test_properness_with_mixed_samples(a1, stable_interval, unstable_interval, quadrature):
    rng = random.Random(23)
    stable = properness_probe(a1, stable_interval, _mixed_samples(a1, stable_interval, rng), quadrature)
    assert stable.proper
    assert stable.min_margin > -5
    unstable = properness_probe(a1, unstable_interval, _mixed_samples(a1, unstable_interval, rng), quadrature)
    assert not unstable.proper


@pytest.mark.slow
def test_unstable_margins_fall_as_rays_extend(a1, unstable_interval, quadrature):
    P2 = dilate(unstable_interval, 2)
    short = [test_ray(a1, P2, 1, lam) for lam in range(10, 40, 5)]
    long = short + [test_ray(a1, P2, 1, lam) for lam in range(40, 60, 5)]
    near = properness_probe(a1, unstable_interval, short, quadrature)
    far = properness_probe(a1, unstable_interval, long, quadrature)
    assert near.min_margin < 0
    assert far.min_margin < near.min_margin - 1
    assert all(m < 0 for m in far.margins)


def test_lower_hull_drops_interior_and_collinear_points():
    points = [(0.0, 0.0), (1.0, -1.0), (1.0, 3.0), (2.0, -1.5), (3.0, -2.0), (4.0, 0.0), (2.0, 5.0)]
    assert _lower_hull(points) == [(0.0, 0.0), (1.0, -1.0), (3.0, -2.0), (4.0, 0.0)]
    assert _lower_hull([(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]) == [(0.0, 1.0), (2.0, 3.0)]
    assert _lower_hull([(5.0, 1.0), (5.0, 0.0)]) == [(5.0, 0.0)]
