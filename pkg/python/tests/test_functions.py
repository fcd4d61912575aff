import random
from fractions import Fraction

import numpy as np
import pytest
from conftest import box, interval, random_even_function

from groupke.ding import (
    LegendreTransform,
    PLConvexFunction,
    legendre_eval,
    linear_path,
    refine_subdivision,
    test_ray,
    validate_pl_function,
    zero_function,
)
from groupke.errors import (
    DimensionMismatchError,
    GroupKEError,
    NormalizationError,
    RootSystemError,
    WeylInvarianceError,
)
from groupke.linalg import mat_vec
from groupke.polytopes import dilate, enumerate_vertices, support_function
from groupke.root_systems import generate_weyl_group

ABS = PLConvexFunction.from_pairs([((1,), 0), ((-1,), 0)])


def test_zero_function_is_valid(a1, a2, a2_hexagon):
    validate_pl_function(a1, interval(-2, 2), zero_function(1))
    validate_pl_function(a2, dilate(a2_hexagon, 2), zero_function(2))


def test_normalization_is_enforced(a1):
    P2 = interval(-4, 4)
    with pytest.raises(NormalizationError, match="u\\(O\\) = 0"):
        validate_pl_function(a1, P2, PLConvexFunction.from_pairs([((1,), 1), ((-1,), 1)]))
    with pytest.raises(NormalizationError):
        validate_pl_function(a1, P2, PLConvexFunction.from_pairs([((1,), 0)]))


def test_non_invariant_function_rejected(a1):
    u = PLConvexFunction.from_pairs([((1,), 0), ((0,), 0)])
    with pytest.raises(WeylInvarianceError, match="W-invariance"):
        validate_pl_function(a1, interval(-4, 4), u)


def test_empty_function_rejected():
    with pytest.raises(GroupKEError):
        PLConvexFunction(())
    with pytest.raises(DimensionMismatchError):
        PLConvexFunction.from_pairs([((1,), 0), ((1, 0), 0)])


def test_evaluation():
    u = PLConvexFunction.from_pairs([((1, 2), 0), ((-1, 0), "1/2")])
    assert u((Fraction(1), Fraction(1))) == 3
    assert u((Fraction(-2), Fraction(0))) == Fraction(5, 2)
    points = np.array([[1.0, 1.0], [-2.0, 0.0]])
    assert list(u.evaluate_many(points)) == pytest.approx([3.0, 2.5])


def test_rank_one_ray(a1):
    P2 = interval(-4, 4)
    u = test_ray(a1, P2, 1, 3)
    assert sorted(p.gradient for p in u.pieces) == [(-3,), (3,)]
    assert all(p.offset == 0 for p in u.pieces)
    validate_pl_function(a1, P2, u)
    assert u(a1.four_rho) == 6


def test_ray_at_zero_is_zero_function(a1):
    assert test_ray(a1, interval(-4, 4), 1, 0) == zero_function(1)


@pytest.mark.parametrize("k", [1, 2])
def test_a2_rays_are_valid(a2, a2_hexagon, k):
    P2 = dilate(a2_hexagon, 2)
    lam = Fraction(5, 2)
    u = test_ray(a2, P2, k, lam)
    validate_pl_function(a2, P2, u)
    weight = a2.fundamental_weights[k - 1]
    assert u(a2.four_rho) == lam * a2.inner(weight, a2.four_rho)
    for w in generate_weyl_group(a2):
        y = (Fraction(1, 3), Fraction(7, 5))
        assert u(mat_vec(w, y)) == u(y)


def test_ray_arguments(a1, toric1):
    with pytest.raises(GroupKEError):
        test_ray(a1, interval(-4, 4), 1, -1)
    with pytest.raises(GroupKEError):
        test_ray(a1, interval(-4, 4), 2, 1)
    with pytest.raises(RootSystemError):
        test_ray(toric1, interval(-4, 4), 1, 1)


def test_refined_subdivision_cells(a1, a2, a2_hexagon):
    P2 = interval(-4, 4)
    assert len(refine_subdivision(P2, zero_function(1))) == 1
    cells = refine_subdivision(P2, test_ray(a1, P2, 1, 1))
    assert {c.polytope for c in cells} == {interval(-4, 0), interval(0, 4)}

    P2 = dilate(a2_hexagon, 2)
    assert len(refine_subdivision(P2, test_ray(a2, P2, 1, 1))) == 3


def test_duplicate_pieces_do_not_duplicate_cells():
    P2 = interval(-4, 4)
    u = PLConvexFunction.from_pairs([((1,), 0), ((-1,), 0), ((1,), 0), ((0,), -5)])
    assert len(refine_subdivision(P2, u)) == 2


def test_legendre_transform_of_zero():
    P2 = interval(-2, 2)
    zero = zero_function(1)
    assert legendre_eval(P2, zero, (Fraction(3),)) == 6
    assert legendre_eval(P2, zero, (Fraction(0),)) == 0
    square = box(2, 2)
    x = (Fraction(1, 2), Fraction(-3))
    assert legendre_eval(square, zero_function(2), x) == support_function(square, x)


def test_legendre_transform_of_ray(a1):
    # psi(x) = 2s * max(|x| - lam, 0) with 2P = [-2s, 2s]
    s, lam = Fraction(2), Fraction(3)
    P2 = interval(-2 * s, 2 * s)
    u = test_ray(a1, P2, 1, lam)
    for x in [Fraction(0), Fraction(2), Fraction(3), Fraction(7, 2), Fraction(-10)]:
        assert legendre_eval(P2, u, (x,)) == 2 * s * max(abs(x) - lam, 0)


def test_fenchel_inequality_is_attained(a2, a2_hexagon):
    P2 = dilate(a2_hexagon, 2)
    u = test_ray(a2, P2, 2, 2)
    for x in [(Fraction(1), Fraction(0)), (Fraction(-2, 3), Fraction(5)), (Fraction(3), Fraction(3))]:
        psi = legendre_eval(P2, u, x)
        gaps = [psi + u(v) - sum(a * b for a, b in zip(x, v)) for v in enumerate_vertices(P2).points]
        assert min(gaps) >= 0
        touching = [
            psi + u(v) - sum(a * b for a, b in zip(x, v))
            for c in refine_subdivision(P2, u)
            for v in enumerate_vertices(c.polytope).points
        ]
        assert min(touching) == 0


def test_legendre_dominates_grid_sup(a2, a2_hexagon):
    P2 = dilate(a2_hexagon, 2)
    u = test_ray(a2, P2, 1, 3)
    psi = LegendreTransform(P2, u)
    normals = np.array([[float(c) for c in n] for n, _ in P2.facets])
    offsets = np.array([float(c) for _, c in P2.facets])
    axis = np.linspace(-20.0, 20.0, 201)
    grid = np.stack(np.meshgrid(axis, axis), axis=-1).reshape(-1, 2)
    inside = grid[(grid @ normals.T <= offsets).all(axis=1)]
    values = u.evaluate_many(inside)
    xs = np.array([[1.0, 0.5], [-2.0, 3.0], [0.25, -0.75]])
    exact = psi(xs)
    grid_sup = (xs @ inside.T - values).max(axis=1)
    assert np.all(exact >= grid_sup - 1e-9)
    assert np.all(exact - grid_sup < 3.0)


def test_linear_path_endpoints_and_midpoint(a1):
    P2 = interval(-4, 4)
    u0 = zero_function(1)
    u1 = test_ray(a1, P2, 1, 4)
    for y in [Fraction(-3), Fraction(0), Fraction(5, 2)]:
        assert linear_path(u0, u1, 0)((y,)) == u0((y,))
        assert linear_path(u0, u1, 1)((y,)) == u1((y,))
        assert linear_path(u0, u1, Fraction(1, 2))((y,)) == 2 * abs(y)
    with pytest.raises(DimensionMismatchError):
        linear_path(u0, zero_function(2), Fraction(1, 2))


def test_linear_path_of_two_abs_functions():
    u = PLConvexFunction.from_pairs([((3,), -2), ((-3,), -2), ((1,), 0), ((-1,), 0)])
    path = linear_path(ABS, u, Fraction(1, 4))
    for y in [Fraction(-4), Fraction(1, 2), Fraction(3)]:
        assert path((y,)) == Fraction(3, 4) * ABS((y,)) + Fraction(1, 4) * u((y,))


def test_legendre_matches_dense_grid_sup():
    rng = random.Random(5)
    sampler = np.random.default_rng(5)
    P2 = interval(-4, 4)
    ys = np.linspace(-4.0, 4.0, 8001)
    for _ in range(50):
        u = random_even_function(rng)
        values = u.evaluate_many(ys[:, None])
        xs = sampler.uniform(-10.0, 10.0, size=100)
        grid_sup = (np.outer(xs, ys) - values).max(axis=1)
        exact = LegendreTransform(P2, u)(xs[:, None])
        lipschitz = np.abs(xs) + max(abs(float(p.gradient[0])) for p in u.pieces)
        assert np.all(exact >= grid_sup - 1e-9)
        assert np.all(exact - grid_sup <= lipschitz * 5e-4 + 1e-9)
        x = Fraction(7, 3)
        assert float(legendre_eval(P2, u, (x,))) == pytest.approx(float(LegendreTransform(P2, u)(np.array([[7 / 3]]))[0]))
