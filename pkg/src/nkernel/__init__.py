"""Finite-n integral kernels of radial normal matrix ensembles.

Exact log-domain kernel evaluation, its large-n asymptotic form with
measured deviation, determinantal correlation scaling limits, the
saddle-point and Euler-Maclaurin machinery behind the asymptotics, and a
seeded radial sampler. Hot loops run under numba when available; set
NKERNEL_NO_JIT=1 to force the pure numpy path.
"""

from ._kernels import backend_name
from .asymptotic import (
    SectorSpec,
    asymptotic_kernel,
    conformal_rescaled_kernel,
    density_limit,
    error_ratio,
    in_sector,
    segal_bargmann,
)
from .correlations import (
    CorrelationResult,
    LimitComparison,
    det_scaled,
    gauge_check,
    kernel_matrix,
    scaled_points,
    scaling_limit_check,
)
from .errors import (
    ContractViolationError,
    DegenerateConfigError,
    DomainError,
    InternalConsistencyError,
    NKernelError,
    NumericalError,
    RangeError,
    SingularityError,
)
from .euler_maclaurin import (
    EmParts,
    PartitionSpec,
    concave_error_bound,
    convex_error_bound,
    em_decompose,
    trapezoid_error,
)
from .kernel_exact import (
    KernelParams,
    density_exact,
    kernel,
    kernel_tilde,
    monomial_log_norm,
    orthonormality_defect,
)
from .saddle import (
    SummandContext,
    find_xstar,
    g_eval,
    gmax_asymptotic,
    h_eval,
    offset_decay,
    saddle_point,
    steepest_descent_sum,
    term_sum,
    xstar_asymptotic,
)
from .sampler import RadialSample, empirical_radial_density, sample_radii
from .specfun import ScaledComplex, digamma, log_gamma, scaled_sum
from .truncation import remainder_error, sector_radius, truncated_exp

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "NKernelError",
    "DomainError",
    "SingularityError",
    "RangeError",
    "NumericalError",
    "ContractViolationError",
    "InternalConsistencyError",
    "DegenerateConfigError",
    "ScaledComplex",
    "log_gamma",
    "digamma",
    "scaled_sum",
    "KernelParams",
    "monomial_log_norm",
    "kernel_tilde",
    "kernel",
    "density_exact",
    "orthonormality_defect",
    "SectorSpec",
    "in_sector",
    "asymptotic_kernel",
    "error_ratio",
    "segal_bargmann",
    "conformal_rescaled_kernel",
    "density_limit",
    "SummandContext",
    "g_eval",
    "term_sum",
    "find_xstar",
    "xstar_asymptotic",
    "gmax_asymptotic",
    "offset_decay",
    "saddle_point",
    "h_eval",
    "steepest_descent_sum",
    "PartitionSpec",
    "trapezoid_error",
    "convex_error_bound",
    "concave_error_bound",
    "EmParts",
    "em_decompose",
    "CorrelationResult",
    "LimitComparison",
    "kernel_matrix",
    "det_scaled",
    "scaled_points",
    "scaling_limit_check",
    "gauge_check",
    "RadialSample",
    "sample_radii",
    "empirical_radial_density",
    "truncated_exp",
    "remainder_error",
    "sector_radius",
]
