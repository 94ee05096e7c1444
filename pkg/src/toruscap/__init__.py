"""Arakelov-Green's function, logarithmic capacity and Bergman kernel ratio
on complex tori C/(Z + tau*Z), with a certified-truncation theta/eta core and
a grid + simplex minimizer for the ratio functional F(tau) = log(pi*K/c^2).
"""

from .optimize import (
    FSurface,
    MinimizeResult,
    ParityResult,
    grid_min,
    matlab_grid_min,
    minimize,
    parity_scan,
    sweep,
)
from .specfun import (
    DEFAULT_CONFIG,
    IM_FLOOR,
    NonConvergenceError,
    SeriesConfig,
    Tau,
    eta,
    eta_norm,
    nome,
    sum_log_abs_one_minus_q2n,
    theta_norm,
    theta_product,
    theta_series,
    theta_truncation_index,
)
from .torus import (
    CoincidentPointsError,
    RatioComponents,
    TorusPoint,
    bergman_density,
    canonical_rep,
    capacity,
    dist_omega,
    f_ratio,
    green_function,
)
from .verify import (
    CheckReport,
    check_capacity_limit,
    check_laplacian,
    check_mean_zero,
    check_theta_identity,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "CoincidentPointsError",
    "DEFAULT_CONFIG",
    "FSurface",
    "IM_FLOOR",
    "MinimizeResult",
    "NonConvergenceError",
    "ParityResult",
    "RatioComponents",
    "SeriesConfig",
    "Tau",
    "TorusPoint",
    "bergman_density",
    "canonical_rep",
    "capacity",
    "check_capacity_limit",
    "check_laplacian",
    "check_mean_zero",
    "check_theta_identity",
    "dist_omega",
    "eta",
    "eta_norm",
    "f_ratio",
    "green_function",
    "grid_min",
    "matlab_grid_min",
    "minimize",
    "nome",
    "parity_scan",
    "run_suite",
    "sum_log_abs_one_minus_q2n",
    "sweep",
    "theta_norm",
    "theta_product",
    "theta_series",
    "theta_truncation_index",
]
