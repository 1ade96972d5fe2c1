"""Weighted isoperimetry in the upper half-plane.

Sharp constants, optimal sets, Euler-Lagrange shooting, polygonal
functionals, discrete spectral bounds, and verification sweeps for the
isoperimetric problem with perimeter weight y**alpha and area weight
y**beta on {y > 0}.
"""

from halfiso.config_io import (
    ConfigError,
    RunConfig,
    SUITE_NAMES,
    default_config,
    load_config,
    parse_config,
    parse_grid,
    parse_polygon,
    serialize_grid,
    serialize_polygon,
)
from halfiso.euler import EulerTrajectory, compare_to_profile, curvature, shoot
from halfiso.geometry import (
    Classification,
    HalfPlanePolygon,
    SliceProfile,
    WeightPair,
    isoperimetric_ratio,
    scale,
    sharp_violation,
    slice_profile,
    steiner_symmetrize,
    weighted_area,
    weighted_perimeter,
)
from halfiso.harness import (
    SweepReport,
    ball_sequence,
    full_report,
    lemma_a_sweep,
    oracle_sweep,
    random_polygon_stress,
    rectangle_sequence,
    run_suite,
    spectral_suite,
)
from halfiso.optimal_set import (
    OptimalFunctionals,
    OptimalProfile,
    compute_profile,
    inclusion_vs_halfdisk,
    mu_closed_form,
    optimal_functionals,
    profile_f,
    sample_optimal_polygon,
)
from halfiso.special import (
    QuadratureConfig,
    QuadratureError,
    QuadratureResult,
    beta,
    integrate_de,
    log_gamma,
)
from halfiso.spectral import (
    CheegerBound,
    EigenParams,
    GridFunction,
    cheeger_lower_bound,
    eigenvalue_lower_bound,
    in_region,
    inverse_param_map,
    param_map,
    rayleigh_quotient,
    sobolev_check,
    subset_ratio_check,
)

__version__ = "0.1.0"

__all__ = [
    "CheegerBound",
    "Classification",
    "ConfigError",
    "EigenParams",
    "EulerTrajectory",
    "GridFunction",
    "HalfPlanePolygon",
    "OptimalFunctionals",
    "OptimalProfile",
    "QuadratureConfig",
    "QuadratureError",
    "QuadratureResult",
    "RunConfig",
    "SUITE_NAMES",
    "SliceProfile",
    "SweepReport",
    "WeightPair",
    "__version__",
    "ball_sequence",
    "beta",
    "cheeger_lower_bound",
    "compare_to_profile",
    "compute_profile",
    "curvature",
    "default_config",
    "eigenvalue_lower_bound",
    "full_report",
    "in_region",
    "inclusion_vs_halfdisk",
    "integrate_de",
    "inverse_param_map",
    "isoperimetric_ratio",
    "lemma_a_sweep",
    "load_config",
    "log_gamma",
    "mu_closed_form",
    "optimal_functionals",
    "oracle_sweep",
    "param_map",
    "parse_config",
    "parse_grid",
    "parse_polygon",
    "profile_f",
    "random_polygon_stress",
    "rayleigh_quotient",
    "rectangle_sequence",
    "run_suite",
    "sample_optimal_polygon",
    "scale",
    "serialize_grid",
    "serialize_polygon",
    "sharp_violation",
    "shoot",
    "slice_profile",
    "sobolev_check",
    "spectral_suite",
    "steiner_symmetrize",
    "subset_ratio_check",
    "weighted_area",
    "weighted_perimeter",
]
