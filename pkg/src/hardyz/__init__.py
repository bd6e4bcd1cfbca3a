"""hardyz: Hardy's Z-function, its zeros, and moments of Z' over them.

Evaluation (zeta/Z/Z1) runs through a single Euler-Maclaurin engine backed
by either a compiled kernel or a NumPy fallback (see hardyz._kernels);
asymptotic main terms are assembled from Stieltjes/Laurent data and checked
against exact sieve sums.
"""

from ._kernels import BACKEND as kernel_backend
from .config import DEFAULT_CONFIG, PrecisionConfig
from .laurent import (
    LaurentSeries,
    StieltjesTable,
    eta_coeffs,
    residue_main_term,
    series_ops,
    series_zeta,
    stieltjes,
)
from .moments import (
    MainTermPolynomial,
    MomentReport,
    continuous_moment,
    discrete_moment,
    hall_poly,
    main_term_theorem,
    w_poly,
    weighted_continuous_moment,
)
from .specfun import chi, digamma, log_gamma, omega, riemann_siegel_theta, theta_deriv
from .zeros import ZeroRecord, ZeroSet, count_expected, scan_zeros
from .zeta_engine import Z1Value, ZetaEvaluation, hardy_z, hardy_z_prime, z1, zeta

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG",
    "PrecisionConfig",
    "LaurentSeries",
    "StieltjesTable",
    "stieltjes",
    "series_zeta",
    "series_ops",
    "eta_coeffs",
    "residue_main_term",
    "MainTermPolynomial",
    "MomentReport",
    "w_poly",
    "hall_poly",
    "main_term_theorem",
    "continuous_moment",
    "discrete_moment",
    "weighted_continuous_moment",
    "log_gamma",
    "digamma",
    "chi",
    "omega",
    "riemann_siegel_theta",
    "theta_deriv",
    "ZeroRecord",
    "ZeroSet",
    "scan_zeros",
    "count_expected",
    "zeta",
    "hardy_z",
    "hardy_z_prime",
    "z1",
    "ZetaEvaluation",
    "Z1Value",
    "kernel_backend",
]
