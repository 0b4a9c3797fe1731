"""Heat flow on real hyperbolic space: kernels, spherical functions, mass functions."""

from ._core import (
    ConfigError,
    NumericalError,
    __version__,
    concentration_defect,
    converge,
    critical_region,
    heat_kernel,
    heat_kernel_log,
    lp_norm_log,
    mass,
    phi,
    phi0_log,
    plancherel_density,
    plancherel_density_log,
    root_system_json,
    solution_log,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "__version__",
    "concentration_defect",
    "converge",
    "critical_region",
    "heat_kernel",
    "heat_kernel_log",
    "lp_norm_log",
    "mass",
    "phi",
    "phi0_log",
    "plancherel_density",
    "plancherel_density_log",
    "root_system_json",
    "solution_log",
]
