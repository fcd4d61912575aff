from groupke.criterion import StabilityReport, Verdict, barycenter, check_existence, futaki
from groupke.polytopes import (
    HPolytope,
    Simplex,
    VertexSet,
    dilate,
    enumerate_vertices,
    from_vertices,
    integrate_polynomial,
    make_polytope,
    monomial_simplex_integral,
    pi_polynomial,
    positive_part,
    triangulate,
    validate_polytope,
)
from groupke.root_systems import (
    ConeLocation,
    ConeTag,
    RootSystem,
    build_root_system,
    cone_locate,
    generate_weyl_group,
)

__all__ = [
    "ConeLocation",
    "ConeTag",
    "HPolytope",
    "RootSystem",
    "Simplex",
    "StabilityReport",
    "Verdict",
    "VertexSet",
    "barycenter",
    "build_root_system",
    "check_existence",
    "cone_locate",
    "dilate",
    "enumerate_vertices",
    "from_vertices",
    "futaki",
    "generate_weyl_group",
    "integrate_polynomial",
    "make_polytope",
    "monomial_simplex_integral",
    "pi_polynomial",
    "positive_part",
    "triangulate",
    "validate_polytope",
]
