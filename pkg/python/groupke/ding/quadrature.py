"""Midpoint-rule quadrature over the positive chamber with an analytic tail bound."""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from functools import cached_property

import numpy as np
from scipy import linalg, optimize

from groupke.errors import DivergentIntegralError, GroupKEError, TailBoundError
from groupke.polytopes import HPolytope, enumerate_vertices
from groupke.root_systems import RootSystem

CHUNK_SIZE = 1 << 18

# points per cube edge of the unit-sphere mesh, by dimension
_SPHERE_MESH = {3: 60, 4: 20}
CIRCLE_POINTS = 20_000


@dataclass(frozen=True)
class QuadratureConfig:
    step: float = 0.01
    radius: float = 500.0
    tail_tol: float = 1e-10
    decay_margin: float = 0.5
    workers: int = 1

    def __post_init__(self):
        if not self.step > 0:
            raise GroupKEError(f"Quadrature step must be positive, got {self.step}")
        if not self.radius > 0:
            raise GroupKEError(f"Truncation radius must be positive, got {self.radius}")
        if not self.tail_tol > 0:
            raise GroupKEError(f"Tail tolerance must be positive, got {self.tail_tol}")
        if not 0 < self.decay_margin <= 1:
            raise GroupKEError(f"Decay margin must lie in (0, 1], got {self.decay_margin}")
        if self.workers < 1:
            raise GroupKEError(f"Worker count must be at least 1, got {self.workers}")

    def with_overrides(self, **overrides) -> "QuadratureConfig":
        """Copy with every non-None override applied."""
        names = {f.name for f in fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise GroupKEError(f"Unknown quadrature settings: {sorted(unknown)}")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def chamber_matrix(rs: RootSystem) -> np.ndarray:
    """Columns alpha_i; x lies in the chamber iff x @ matrix >= 0."""
    if rs.is_toric:
        return np.zeros((rs.ambient_dim, 0))
    return np.array([[float(c) for c in a] for a in rs.simple_roots]).T


def positive_root_matrix(rs: RootSystem) -> np.ndarray:
    if rs.is_toric:
        return np.zeros((rs.ambient_dim, 0))
    return np.array([[float(c) for c in a] for a in rs.positive_roots]).T


def unit_sphere_mesh(dim: int) -> np.ndarray:
    """Directions covering the unit sphere: a circle in the plane, a normalized cube surface above."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        angles = np.linspace(0.0, 2 * math.pi, CIRCLE_POINTS, endpoint=False)
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    m = _SPHERE_MESH.get(dim, 10)
    axis = np.linspace(-1.0, 1.0, m + 1)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    points = points[np.isclose(np.abs(points).max(axis=1), 1.0)]
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def decay_rate(rs: RootSystem, P2: HPolytope, margin: float = 0.5) -> float:
    """margin * min over unit chamber directions of v_2P(x) - 4rho(x)."""
    mesh = unit_sphere_mesh(rs.ambient_dim)
    mesh = mesh[(mesh @ chamber_matrix(rs) >= 0).all(axis=1)]
    vertices = np.array([[float(c) for c in v] for v in enumerate_vertices(P2).points])
    four_rho = np.array([float(c) for c in rs.four_rho])
    gap = (mesh @ vertices.T).max(axis=1) - mesh @ four_rho
    rate = float(gap.min())
    if rate <= 0:
        raise DivergentIntegralError(
            "4rho is not an interior point of 2P: the F-integral diverges"
        )
    return margin * rate


def log_tail_mass(dim: int, rate: float, shift: float, radius: float) -> float:
    """log of e^shift * |S^(dim-1)| * integral_R^inf r^(dim-1) e^(-rate r) dr."""
    sphere = 2 * math.pi ** (dim / 2) / math.gamma(dim / 2)
    n = dim - 1
    radial = sum(
        math.factorial(n) / math.factorial(k) * radius**k / rate ** (n - k + 1)
        for k in range(n + 1)
    )
    return shift - rate * radius + math.log(sphere * radial)


def truncation_radius(dim: int, rate: float, shift: float, config: QuadratureConfig) -> float:
    """Smallest radius whose tail bound is below tail_tol, capped by config.radius."""
    target = math.log(config.tail_tol)

    def excess(radius: float) -> float:
        return log_tail_mass(dim, rate, shift, radius) - target

    if excess(config.radius) >= 0:
        raise TailBoundError(
            f"Tail bound exceeds {config.tail_tol} even at radius {config.radius}; "
            "raise --radius"
        )
    low = min(config.step, config.radius)
    if excess(low) < 0:
        return low
    root = optimize.brentq(excess, low, config.radius, xtol=1e-12)
    # strictly past the root, where the bound holds
    return min(root * (1 + 1e-9) + 1e-12, config.radius)


def cone_generators(chamber: np.ndarray) -> np.ndarray:
    """Columns spanning {x : x @ chamber >= 0} as a cone: chamber rays and the +- center."""
    dim, ncols = chamber.shape
    if ncols == 0:
        center = np.eye(dim)
        return np.hstack([center, -center])
    rays = chamber @ np.linalg.inv(chamber.T @ chamber)
    center = linalg.null_space(chamber.T)
    return np.hstack([rays, center, -center])


def cone_support(generators: np.ndarray, direction: np.ndarray) -> float:
    """max of <direction, x> over the cone part of the unit ball: the norm of the projection."""
    weights, _ = optimize.nnls(generators, direction)
    return float(np.linalg.norm(generators @ weights))


@dataclass(frozen=True, eq=False)
class ChamberGrid:
    """Midpoint grid of step h over the bounding box of the chamber part of a ball.

    Cells sit on the lattice (j + 1/2) h with -half <= j < half; only the
    indices reaching the box are walked.
    """

    chamber: np.ndarray
    radius: float
    step: float

    @property
    def dim(self) -> int:
        return self.chamber.shape[0]

    @property
    def half(self) -> int:
        return math.ceil(self.radius / self.step)

    @cached_property
    def index_range(self) -> tuple[np.ndarray, np.ndarray]:
        """First lattice index and cell count along each axis."""
        generators = cone_generators(self.chamber)
        first = np.empty(self.dim, dtype=np.int64)
        counts = np.empty(self.dim, dtype=np.int64)
        for i, axis in enumerate(np.eye(self.dim)):
            high = self.radius * cone_support(generators, axis)
            low = -self.radius * cone_support(generators, -axis)
            start = max(-self.half, math.floor(low / self.step) - 1)
            stop = min(self.half, math.ceil(high / self.step) + 1)
            first[i], counts[i] = start, max(stop - start, 0)
        return first, counts

    @property
    def size(self) -> int:
        return math.prod(int(c) for c in self.index_range[1])

    def points(self, start: int) -> np.ndarray:
        first, counts = self.index_range
        idx = np.arange(start, min(start + CHUNK_SIZE, self.size))
        coords = np.stack(np.unravel_index(idx, tuple(counts)), axis=1)
        x = (coords + first + 0.5) * self.step
        mask = (x * x).sum(axis=1) <= self.radius * self.radius
        if self.chamber.shape[1]:
            mask &= (x @ self.chamber >= 0).all(axis=1)
        return x[mask]

    def map_chunks(self, reduce: Callable[[np.ndarray], float], workers: int = 1) -> list[float]:
        """reduce applied to every chunk of grid points, in grid order."""
        starts = range(0, self.size, CHUNK_SIZE)

        def run(start: int) -> float:
            return reduce(self.points(start))

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(run, starts))
        return [run(s) for s in starts]


def chamber_grid_sum(
    integrand: Callable[[np.ndarray], np.ndarray],
    chamber: np.ndarray,
    radius: float,
    config: QuadratureConfig,
) -> float:
    """Midpoint rule for the integrand over the chamber part of B_radius."""
    grid = ChamberGrid(chamber, radius, config.step)
    partial = grid.map_chunks(
        lambda x: math.fsum(integrand(x)) if len(x) else 0.0, config.workers
    )
    logging.debug(
        f"Quadrature over {grid.size} grid points at step {grid.step}, radius {radius:.3f}"
    )
    return math.fsum(partial) * grid.step**grid.dim


def chamber_grid_min(
    func: Callable[[np.ndarray], np.ndarray],
    chamber: np.ndarray,
    radius: float,
    config: QuadratureConfig,
) -> float:
    grid = ChamberGrid(chamber, radius, config.step)
    partial = grid.map_chunks(
        lambda x: float(func(x).min()) if len(x) else math.inf, config.workers
    )
    return min(partial)
