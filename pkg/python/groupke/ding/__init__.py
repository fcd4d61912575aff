from groupke.ding.functional import (
    InfimumProbe,
    chamber_infimum_probe,
    ding_functional,
    e1_distance,
    f_functional,
    l_functional,
    moment_integral,
)
from groupke.ding.functions import (
    AffinePiece,
    Cell,
    LegendreTransform,
    PLConvexFunction,
    legendre_eval,
    linear_path,
    refine_subdivision,
    rho_pairing,
    test_ray,
    validate_pl_function,
    zero_function,
)
from groupke.ding.probes import (
    ConvexityReport,
    PropernessReport,
    RayClass,
    RayScanReport,
    path_convexity_probe,
    properness_probe,
    ray_scan,
)
from groupke.ding.quadrature import QuadratureConfig, decay_rate

__all__ = [
    "AffinePiece",
    "Cell",
    "ConvexityReport",
    "InfimumProbe",
    "LegendreTransform",
    "PLConvexFunction",
    "PropernessReport",
    "QuadratureConfig",
    "RayClass",
    "RayScanReport",
    "chamber_infimum_probe",
    "decay_rate",
    "ding_functional",
    "e1_distance",
    "f_functional",
    "l_functional",
    "legendre_eval",
    "linear_path",
    "moment_integral",
    "path_convexity_probe",
    "properness_probe",
    "ray_scan",
    "refine_subdivision",
    "rho_pairing",
    "test_ray",
    "validate_pl_function",
    "zero_function",
]
