import random
from fractions import Fraction

import pytest

from groupke.ding import PLConvexFunction, QuadratureConfig
from groupke.polytopes import HPolytope, from_vertices, make_polytope
from groupke.root_systems import RootSystem, build_root_system, weyl_orbit


def interval(low: Fraction | int, high: Fraction | int) -> HPolytope:
    """[low, high] on the line."""
    return make_polytope([((1,), high), ((-1,), -Fraction(low))], 1)


def box(dim: int, half_width: Fraction | int = 1) -> HPolytope:
    rows = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows.append((e, half_width))
        rows.append(([-c for c in e], half_width))
    return make_polytope(rows, dim)


def hexagon(rs: RootSystem, t: Fraction | int = 3) -> HPolytope:
    """Convex hull of the Weyl orbit of t * rho."""
    rho = tuple(Fraction(c, 2) * t for c in rs.two_rho)
    return from_vertices(weyl_orbit(rs, rho))


def random_even_function(rng: random.Random, pieces: int = 3) -> PLConvexFunction:
    """Random normalized PL function on the line, invariant under y -> -y."""
    pairs = []
    for j in range(pieces):
        a = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        b = Fraction(0) if j == 0 else -Fraction(rng.randint(0, 20), rng.randint(1, 4))
        pairs += [((a,), b), ((-a,), b)]
    return PLConvexFunction.from_pairs(pairs)


@pytest.fixture
def a1() -> RootSystem:
    return build_root_system("A1")


@pytest.fixture
def a2() -> RootSystem:
    return build_root_system("A2")


@pytest.fixture
def b2() -> RootSystem:
    return build_root_system("B2")


@pytest.fixture
def toric1() -> RootSystem:
    return build_root_system(central_dim=1)


@pytest.fixture
def toric2() -> RootSystem:
    return build_root_system(central_dim=2)


@pytest.fixture
def stable_interval() -> HPolytope:
    """[-2, 2] in units of alpha: c_1 = 1."""
    return interval(-2, 2)


@pytest.fixture
def unstable_interval() -> HPolytope:
    """[-6/5, 6/5]: c_1 = -1/5 while 4rho stays interior to 2P."""
    return interval(Fraction(-6, 5), Fraction(6, 5))


@pytest.fixture
def a2_hexagon(a2) -> HPolytope:
    return hexagon(a2)


@pytest.fixture
def quadrature() -> QuadratureConfig:
    return QuadratureConfig()


@pytest.fixture
def coarse_quadrature() -> QuadratureConfig:
    """Two-dimensional runs."""
    return QuadratureConfig(step=0.05, tail_tol=1e-6)
