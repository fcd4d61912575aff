import math
import random
from fractions import Fraction

import pytest
from conftest import interval, random_even_function

from groupke.criterion import check_existence
from groupke.ding import (
    PLConvexFunction,
    QuadratureConfig,
    chamber_infimum_probe,
    ding_functional,
    e1_distance,
    f_functional,
    l_functional,
    moment_integral,
    test_ray,
    zero_function,
)
from groupke.errors import DivergentIntegralError, WeylInvarianceError
from groupke.polytopes import dilate

ABS = PLConvexFunction.from_pairs([((1,), 0), ((-1,), 0)])
KINKED = PLConvexFunction.from_pairs([((1,), 0), ((-1,), 0), ((3,), -2), ((-3,), -2)])


def _rank_one_f_of_zero(s: Fraction) -> float:
    """-log of (1/4) integral_0^inf e^(-a x) (1 - e^(-2x))^2 dx with a = 2s - 2."""
    a = float(2 * s - 2)
    return -math.log((1 / a - 2 / (a + 2) + 1 / (a + 4)) / 4)


def test_l_of_zero_vanishes(a1, a2, stable_interval, a2_hexagon):
    assert l_functional(a1, stable_interval, zero_function(1)) == 0
    assert l_functional(a2, a2_hexagon, zero_function(2)) == 0


def test_toric_l_of_abs(toric1):
    # 2P = [-2, 2]: mean of |y| is 1, u(0) = 0
    assert l_functional(toric1, interval(-1, 1), ABS) == 1
    assert moment_integral(toric1, interval(-1, 1), ABS) == 4


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(7, 3), Fraction(40)])
def test_l_along_rank_one_ray_is_linear(a1, stable_interval, unstable_interval, lam):
    for P, slope in [(stable_interval, 1), (unstable_interval, Fraction(-1, 5))]:
        u = test_ray(a1, dilate(P, 2), 1, lam)
        assert l_functional(a1, P, u) == lam * slope


@pytest.mark.parametrize("k", [1, 2])
def test_l_along_a2_ray_matches_predicted_slope(a2, a2_hexagon, k):
    report = check_existence(a2, a2_hexagon)
    lam = Fraction(9, 4)
    u = test_ray(a2, dilate(a2_hexagon, 2), k, lam)
    assert l_functional(a2, a2_hexagon, u) == lam * report.predicted_slope(a2, k)


def test_l_rejects_invalid_functions(a1, stable_interval):
    with pytest.raises(WeylInvarianceError):
        l_functional(a1, stable_interval, PLConvexFunction.from_pairs([((1,), 0), ((0,), 0)]))


def test_toric_f_of_zero(toric1, quadrature):
    # integral of e^(-2|x|) over the line is 1
    assert f_functional(toric1, interval(-1, 1), zero_function(1), quadrature) == pytest.approx(0.0, abs=1e-4)


@pytest.mark.parametrize("s", [Fraction(2), Fraction(6, 5), Fraction(3)])
def test_rank_one_f_of_zero_closed_form(a1, quadrature, s):
    value = f_functional(a1, interval(-s, s), zero_function(1), quadrature)
    assert value == pytest.approx(_rank_one_f_of_zero(s), abs=1e-5)


def test_f_self_convergence(a1, stable_interval):
    u = test_ray(a1, dilate(stable_interval, 2), 1, 3)
    coarse = f_functional(a1, stable_interval, u, QuadratureConfig(step=0.01))
    fine = f_functional(a1, stable_interval, u, QuadratureConfig(step=0.005))
    assert coarse == pytest.approx(fine, abs=1e-4)


def test_f_ignores_representation(a1, stable_interval, quadrature):
    u = test_ray(a1, dilate(stable_interval, 2), 1, 2)
    redundant = PLConvexFunction(u.pieces + u.pieces + (PLConvexFunction.from_pairs([((0,), -1)]).pieces))
    assert f_functional(a1, stable_interval, redundant, quadrature) == pytest.approx(
        f_functional(a1, stable_interval, u, quadrature), abs=1e-12
    )


@pytest.mark.parametrize("s", [Fraction(1), Fraction(1, 2)])
def test_f_diverges_without_interior_four_rho(a1, quadrature, s):
    with pytest.raises(DivergentIntegralError):
        f_functional(a1, interval(-s, s), zero_function(1), quadrature)


def test_ding_is_l_plus_f(a1, stable_interval, quadrature):
    u = KINKED
    d = ding_functional(a1, stable_interval, u, quadrature)
    assert d == pytest.approx(float(l_functional(a1, stable_interval, u)) + f_functional(a1, stable_interval, u, quadrature))
    zero = ding_functional(a1, stable_interval, zero_function(1), quadrature)
    ray = ding_functional(a1, stable_interval, test_ray(a1, dilate(stable_interval, 2), 1, 0), quadrature)
    assert ray == zero


def test_f_is_invariant_under_the_weyl_group_reflection(a1, stable_interval, quadrature):
    flipped = PLConvexFunction(tuple(reversed(KINKED.pieces)))
    assert f_functional(a1, stable_interval, flipped, quadrature) == pytest.approx(
        f_functional(a1, stable_interval, KINKED, quadrature), abs=1e-12
    )


def test_toric_distance_closed_form(toric1):
    assert e1_distance(toric1, interval(-1, 1), ABS, zero_function(1)) == 4


def test_rank_one_distance_between_rays(a1, stable_interval):
    # integral over [0, 4] of |lam - mu| y * 4y^2
    P2 = dilate(stable_interval, 2)
    u, v = test_ray(a1, P2, 1, 1), test_ray(a1, P2, 1, 3)
    assert e1_distance(a1, stable_interval, u, v) == 2 * 256


def test_distance_axioms(a1, stable_interval):
    P2 = dilate(stable_interval, 2)
    functions = [zero_function(1), test_ray(a1, P2, 1, 2), KINKED, test_ray(a1, P2, 1, Fraction(1, 3))]
    for u in functions:
        assert e1_distance(a1, stable_interval, u, u) == 0
        for v in functions:
            duv = e1_distance(a1, stable_interval, u, v)
            assert duv == e1_distance(a1, stable_interval, v, u)
            for w in functions:
                assert duv <= e1_distance(a1, stable_interval, u, w) + e1_distance(a1, stable_interval, w, v)


def test_crossing_functions_distance(a1, stable_interval):
    # |KINKED - 2|y|| changes sign at |y| = 2
    P2 = dilate(stable_interval, 2)
    u = test_ray(a1, P2, 1, 2)
    # pieces of |KINKED - u| on [0, 4]: y on [0, 1], 2 - y on [1, 2], y - 2 on [2, 4]
    expected = 1 + Fraction(11, 3) + Fraction(272, 3)
    assert e1_distance(a1, stable_interval, KINKED, u) == expected


def test_infimum_probe(a1, stable_interval, quadrature):
    probe = chamber_infimum_probe(a1, stable_interval, zero_function(1), quadrature)
    assert probe.expected == 0
    assert -1e-12 <= probe.gap < 0.02

    u = test_ray(a1, dilate(stable_interval, 2), 1, 1)
    probe = chamber_infimum_probe(a1, stable_interval, u, quadrature)
    assert probe.expected == -2
    assert -1e-12 <= probe.gap < 0.05


def test_distance_axioms_on_random_triples(a1, stable_interval):
    rng = random.Random(3)
    zero = zero_function(1)
    for _ in range(20):
        u, v, w = (random_even_function(rng) for _ in range(3))
        duv = e1_distance(a1, stable_interval, u, v)
        assert duv >= 0
        assert duv == e1_distance(a1, stable_interval, v, u)
        assert duv <= e1_distance(a1, stable_interval, u, w) + e1_distance(a1, stable_interval, w, v)
        # u >= 0, so the distance to zero is the plain moment
        assert e1_distance(a1, stable_interval, u, zero) == moment_integral(a1, stable_interval, u)
