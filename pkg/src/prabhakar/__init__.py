"""Numerical toolkit for the three-parameter Mittag-Leffler function on the
negative real axis: series and Laplace-inversion evaluators, spectral
densities, closed-form oracles, and complete-monotonicity audits."""

from .audit import (
    CMReport,
    DensityAudit,
    DerivativeAudit,
    audit_density,
    audit_derivatives,
    check_criterion,
    full_report,
    parameter_grid,
    verify_laplace_identity,
)
from .closed_forms import (
    ORACLE_CASES,
    OracleCase,
    counterexample,
    example_b,
    example_c1,
    example_c2,
    levy_smirnov,
)
from .errors import (
    InversionQualityError,
    NumericsError,
    PrecisionLossError,
    QuadratureError,
    SeriesNonconvergenceError,
)
from .inversion import (
    DensityCurve,
    EvalResult,
    TalbotConfig,
    density_curve,
    density_f,
    density_f_grid,
    density_g,
    eval_auto,
    eval_integral_rep,
    geometric_grid,
    talbot_invert,
    talbot_invert_with_residual,
)
from .params import MLParams, QuadratureConfig
from .series import (
    SeriesResult,
    eval_series,
    nth_derivative_signed,
    reduce_classic,
    reduce_wiman,
)
from .special import bessel_k, bessel_k_via_integral, complex_pow, gamma, ln_gamma

__version__ = "0.1.0"

__all__ = [
    "CMReport",
    "DensityAudit",
    "DensityCurve",
    "DerivativeAudit",
    "EvalResult",
    "InversionQualityError",
    "MLParams",
    "NumericsError",
    "ORACLE_CASES",
    "OracleCase",
    "PrecisionLossError",
    "QuadratureConfig",
    "QuadratureError",
    "SeriesNonconvergenceError",
    "SeriesResult",
    "TalbotConfig",
    "audit_density",
    "audit_derivatives",
    "bessel_k",
    "bessel_k_via_integral",
    "check_criterion",
    "complex_pow",
    "counterexample",
    "density_curve",
    "density_f",
    "density_f_grid",
    "density_g",
    "eval_auto",
    "eval_integral_rep",
    "eval_series",
    "example_b",
    "example_c1",
    "example_c2",
    "full_report",
    "gamma",
    "geometric_grid",
    "levy_smirnov",
    "ln_gamma",
    "nth_derivative_signed",
    "parameter_grid",
    "reduce_classic",
    "reduce_wiman",
    "talbot_invert",
    "talbot_invert_with_residual",
    "verify_laplace_identity",
    "__version__",
]
