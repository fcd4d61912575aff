"""Root data of a reductive group: roots, Weyl group, 2rho, fundamental weights.

Vectors of the weight space are rational coordinate tuples. The W-invariant
inner product is the rational Gram matrix carried by the root system, so
standard types stay exact: B_n and D_n use orthonormal coordinates, C_n the
standard ones with gram = I/2, A_n and G_2 simple-root coordinates. Long roots
have squared length 2 in every simple factor. Central directions are appended
as an orthonormal block.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache

from groupke.errors import DimensionMismatchError, RootSystemError, WeylGroupSizeError
from groupke.linalg import (
    add,
    block_diagonal,
    determinant,
    dot,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    scale,
    sub,
)
from groupke.rational import ONE, ZERO, Matrix, Vector, to_fraction, zero_vector

DEFAULT_MAX_WEYL_ORDER = 10_000

_COMPONENT = re.compile(r"^([ABCDG])(\d+)$")
_SEPARATORS = re.compile(r"\s*[xX×*+]\s*")


@dataclass(frozen=True)
class RootSystem:
    ambient_dim: int
    gram: Matrix
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    central_dim: int
    two_rho: Vector
    fundamental_weights: tuple[Vector, ...]
    weyl_generators: tuple[Matrix, ...]
    label: str = ""

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def is_toric(self) -> bool:
        return not self.simple_roots

    @property
    def four_rho(self) -> Vector:
        return scale(Fraction(2), self.two_rho)

    def inner(self, y: Vector, z: Vector) -> Fraction:
        return dot(y, mat_vec(self.gram, z))

    def norm_sq(self, v: Vector) -> Fraction:
        return self.inner(v, v)

    def lower(self, v: Vector) -> Vector:
        """Covector x with x . y = <v, y> for every y."""
        return mat_vec(self.gram, v)

    def reflect(self, root: Vector, y: Vector) -> Vector:
        return sub(y, scale(self.inner(self.coroot(root), y), root))

    def coroot(self, root: Vector) -> Vector:
        return scale(2 / self.norm_sq(root), root)

    @cached_property
    def roots(self) -> tuple[Vector, ...]:
        negatives = tuple(tuple(-c for c in a) for a in self.positive_roots)
        return self.positive_roots + negatives

    @cached_property
    def central_basis(self) -> tuple[Vector, ...]:
        """Basis of the orthogonal complement of the root span."""
        rows = [self.lower(a) for a in self.simple_roots]
        return tuple(nullspace(rows, self.ambient_dim))

    @cached_property
    def _simple_gram_inverse(self) -> Matrix:
        gram = tuple(
            tuple(self.inner(a, b) for b in self.simple_roots) for a in self.simple_roots
        )
        inv = inverse(gram) if gram else ()
        if inv is None:
            raise RootSystemError("Simple roots are linearly dependent")
        return inv

    def decompose(self, v: Vector) -> tuple[Vector, Vector]:
        """Split v into simple-root coefficients and the central remainder."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(
                f"Vector has {len(v)} coordinates, expected {self.ambient_dim}"
            )
        pairings = tuple(self.inner(a, v) for a in self.simple_roots)
        coefficients = mat_vec(self._simple_gram_inverse, pairings)
        projection = zero_vector(self.ambient_dim)
        for c, a in zip(coefficients, self.simple_roots):
            projection = add(projection, scale(c, a))
        return coefficients, sub(v, projection)

    def is_dominant(self, y: Vector) -> bool:
        return all(self.inner(a, y) >= 0 for a in self.simple_roots)


class ConeTag(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"
    NOT_IN_SPAN = "not_in_span"


@dataclass(frozen=True)
class ConeLocation:
    tag: ConeTag
    coefficients: Vector


def _type_a(n: int) -> tuple[list[Vector], Matrix]:
    roots = [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]
    gram = tuple(
        tuple(
            Fraction(2) if i == j else (Fraction(-1) if abs(i - j) == 1 else ZERO)
            for j in range(n)
        )
        for i in range(n)
    )
    return roots, gram


def _chain(n: int) -> list[Vector]:
    """e_i - e_{i+1} for i < n."""
    roots = []
    for i in range(n - 1):
        v = [ZERO] * n
        v[i], v[i + 1] = ONE, -ONE
        roots.append(tuple(v))
    return roots


def _type_b(n: int) -> tuple[list[Vector], Matrix]:
    last = [ZERO] * n
    last[-1] = ONE
    return _chain(n) + [tuple(last)], identity(n)


def _type_c(n: int) -> tuple[list[Vector], Matrix]:
    last = [ZERO] * n
    last[-1] = Fraction(2)
    half = tuple(tuple(Fraction(1, 2) if i == j else ZERO for j in range(n)) for i in range(n))
    return _chain(n) + [tuple(last)], half


def _type_d(n: int) -> tuple[list[Vector], Matrix]:
    last = [ZERO] * n
    last[-2], last[-1] = ONE, ONE
    return _chain(n) + [tuple(last)], identity(n)


def _type_g2() -> tuple[list[Vector], Matrix]:
    gram = ((Fraction(2, 3), Fraction(-1)), (Fraction(-1), Fraction(2)))
    return [(ONE, ZERO), (ZERO, ONE)], gram


def _component(letter: str, n: int) -> tuple[list[Vector], Matrix]:
    if letter == "A" and n >= 1:
        return _type_a(n)
    if letter == "B" and n >= 2:
        return _type_b(n)
    if letter == "C" and n >= 2:
        return _type_c(n)
    if letter == "D" and n >= 3:
        return _type_d(n)
    if letter == "G" and n == 2:
        return _type_g2()
    raise RootSystemError(f"Unsupported Cartan type: {letter}{n}")


def _embed(vectors: list[Vector], offset: int, dim: int) -> list[Vector]:
    out = []
    for v in vectors:
        full = [ZERO] * dim
        full[offset : offset + len(v)] = v
        out.append(tuple(full))
    return out


def _check_gram(gram: Matrix) -> None:
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise RootSystemError("Gram matrix must be square")
    if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
        raise RootSystemError("Gram matrix must be symmetric")
    for k in range(1, n + 1):
        if determinant([row[:k] for row in gram[:k]]) <= 0:
            raise RootSystemError("Gram matrix must be positive definite")


def _reflection_matrix(gram: Matrix, root: Vector) -> Matrix:
    covector = mat_vec(gram, root)
    factor = 2 / dot(root, covector)
    n = len(root)
    return tuple(
        tuple((ONE if p == q else ZERO) - factor * root[p] * covector[q] for q in range(n))
        for p in range(n)
    )


def _close_roots(
    simple: tuple[Vector, ...], generators: tuple[Matrix, ...], bound: int
) -> set[Vector]:
    roots = set(simple)
    queue = deque(simple)
    while queue:
        root = queue.popleft()
        for s in generators:
            image = mat_vec(s, root)
            if image not in roots:
                roots.add(image)
                queue.append(image)
                if len(roots) > bound:
                    raise WeylGroupSizeError(
                        f"Root closure exceeded {bound} elements; input roots do not "
                        "generate a finite reflection group"
                    )
    return roots


def _from_simple_roots(
    simple: list[Vector],
    gram: Matrix,
    label: str,
    allow_noncrystallographic: bool,
    max_weyl_order: int,
) -> RootSystem:
    dim = len(gram)
    _check_gram(gram)
    for a in simple:
        if len(a) != dim:
            raise DimensionMismatchError(
                f"Simple root {list(map(str, a))} has {len(a)} coordinates, expected {dim}"
            )
    if rank(simple) != len(simple):
        raise RootSystemError("Simple roots are linearly dependent")

    def inner(y: Vector, z: Vector) -> Fraction:
        return dot(y, mat_vec(gram, z))

    for i, a in enumerate(simple):
        for j, b in enumerate(simple):
            if i == j:
                continue
            if inner(a, b) > 0:
                raise RootSystemError(
                    f"Simple roots {i + 1} and {j + 1} form an acute angle"
                )
            if allow_noncrystallographic:
                continue
            a_ij = 2 * inner(a, b) / inner(b, b)
            a_ji = 2 * inner(b, a) / inner(a, a)
            if a_ij.denominator != 1 or a_ij * a_ji not in (0, 1, 2, 3):
                raise RootSystemError(
                    f"Non-crystallographic angle between simple roots {i + 1} and {j + 1}"
                )

    simple_t = tuple(simple)
    generators = tuple(_reflection_matrix(gram, a) for a in simple_t)
    all_roots = _close_roots(simple_t, generators, max_weyl_order)

    partial = RootSystem(
        ambient_dim=dim,
        gram=gram,
        simple_roots=simple_t,
        positive_roots=(),
        central_dim=dim - len(simple_t),
        two_rho=zero_vector(dim),
        fundamental_weights=(),
        weyl_generators=generators,
        label=label,
    )
    positive = sorted(
        (r for r in all_roots if all(c >= 0 for c in partial.decompose(r)[0])),
        key=lambda r: (sum(partial.decompose(r)[0]), r),
    )
    two_rho = zero_vector(dim)
    for r in positive:
        two_rho = add(two_rho, r)

    weights = []
    gram_inv = partial._simple_gram_inverse
    for j, a in enumerate(simple_t):
        rhs = tuple(inner(a, a) / 2 if i == j else ZERO for i in range(len(simple_t)))
        coefficients = mat_vec(gram_inv, rhs)
        w = zero_vector(dim)
        for c, b in zip(coefficients, simple_t):
            w = add(w, scale(c, b))
        weights.append(w)

    rs = RootSystem(
        ambient_dim=dim,
        gram=gram,
        simple_roots=simple_t,
        positive_roots=tuple(positive),
        central_dim=dim - len(simple_t),
        two_rho=two_rho,
        fundamental_weights=tuple(weights),
        weyl_generators=generators,
        label=label,
    )
    logging.debug(
        f"Built root system {label or 'explicit'}: rank {rs.rank}, "
        f"|positive roots| = {len(positive)}, central_dim = {rs.central_dim}"
    )
    return rs


def build_root_system(
    cartan_type: str | None = None,
    *,
    simple_roots: list[list[object]] | None = None,
    gram: list[list[object]] | None = None,
    central_dim: int = 0,
    allow_noncrystallographic: bool = False,
    max_weyl_order: int = DEFAULT_MAX_WEYL_ORDER,
) -> RootSystem:
    """Build root data from a Cartan label such as ``"A2"`` or ``"B2xA1"``,
    or from explicit simple roots (with an optional Gram matrix).

    ``central_dim`` orthonormal central coordinates are appended in both cases.
    With neither a label nor roots the result is the toric case.
    """
    if central_dim < 0:
        raise RootSystemError("central_dim must be non-negative")
    if cartan_type is not None and simple_roots is not None:
        raise RootSystemError("Give either a Cartan type or explicit simple roots, not both")

    if cartan_type is not None:
        blocks: list[tuple[list[Vector], Matrix]] = []
        for part in _SEPARATORS.split(cartan_type.strip()):
            match = _COMPONENT.match(part.upper())
            if match is None:
                raise RootSystemError(f"Unsupported Cartan type: {part!r}")
            blocks.append(_component(match.group(1), int(match.group(2))))
        blocks.append(([], identity(central_dim)))
        dim = sum(len(g) for _, g in blocks)
        roots: list[Vector] = []
        offset = 0
        for local_roots, local_gram in blocks:
            roots += _embed(local_roots, offset, dim)
            offset += len(local_gram)
        full_gram = block_diagonal([g for _, g in blocks])
        return _from_simple_roots(
            roots, full_gram, cartan_type.strip(), allow_noncrystallographic, max_weyl_order
        )

    if simple_roots is not None:
        vectors = [tuple(to_fraction(c) for c in v) for v in simple_roots]
        if not vectors:
            raise RootSystemError("simple_roots is empty; omit it for the toric case")
        base_dim = len(vectors[0])
        if gram is None:
            base_gram = identity(base_dim)
        else:
            base_gram = tuple(tuple(to_fraction(c) for c in row) for row in gram)
            if len(base_gram) != base_dim:
                raise DimensionMismatchError(
                    f"Gram matrix is {len(base_gram)}x{len(base_gram)}, "
                    f"simple roots have {base_dim} coordinates"
                )
        dim = base_dim + central_dim
        full_gram = block_diagonal([base_gram, identity(central_dim)])
        roots = [v + zero_vector(central_dim) for v in vectors]
        return _from_simple_roots(
            roots, full_gram, "", allow_noncrystallographic, max_weyl_order
        )

    if central_dim == 0:
        raise RootSystemError("Toric root data needs central_dim >= 1")
    return _from_simple_roots(
        [], identity(central_dim), f"T{central_dim}", False, max_weyl_order
    )


@lru_cache(maxsize=64)
def generate_weyl_group(
    rs: RootSystem, max_order: int = DEFAULT_MAX_WEYL_ORDER
) -> tuple[Matrix, ...]:
    """All elements of W as rational matrices, identity first."""
    unit = identity(rs.ambient_dim)
    elements = {unit: None}
    queue = deque([unit])
    while queue:
        g = queue.popleft()
        for s in rs.weyl_generators:
            h = mat_mul(s, g)
            if h not in elements:
                elements[h] = None
                queue.append(h)
                if len(elements) > max_order:
                    raise WeylGroupSizeError(
                        f"Weyl group closure exceeded {max_order} elements"
                    )
    logging.debug(f"Weyl group of {rs.label or 'explicit roots'} has {len(elements)} elements")
    return tuple(elements)


def weyl_orbit(rs: RootSystem, v: Vector) -> tuple[Vector, ...]:
    """Distinct images w(v), in first-seen order."""
    seen: dict[Vector, None] = {}
    for w in generate_weyl_group(rs):
        seen.setdefault(mat_vec(w, v), None)
    return tuple(seen)


def cone_locate(rs: RootSystem, v: Vector) -> ConeLocation:
    """Position of v relative to the cone spanned by the positive roots."""
    coefficients, central = rs.decompose(v)
    if any(c != 0 for c in central):
        return ConeLocation(ConeTag.NOT_IN_SPAN, ())
    if all(c > 0 for c in coefficients):
        tag = ConeTag.INTERIOR
    elif all(c >= 0 for c in coefficients):
        tag = ConeTag.BOUNDARY
    else:
        tag = ConeTag.OUTSIDE
    return ConeLocation(tag, coefficients)
