"""Complete-monotonicity audit of E(alpha, beta, gamma; -x).

Combines four kinds of evidence:

* the parameter criterion (0 < alpha < 1, gamma > 0, beta >= alpha*gamma),
* nonnegativity of the auxiliary density over a y grid (the Bernstein
  route: E(-x) is completely monotone iff the spectral weight in its
  Laplace representation is nonnegative),
* alternating derivative signs of E(-x) itself, and
* the Laplace-transform identity relating E(-x t^alpha) to its image.

The verdict follows the criterion; numerics appear as evidence and can
only falsify on a grid, never certify.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import NumericsError, PrecisionLossError, SeriesNonconvergenceError
from .inversion import (
    DEFAULT_QUADRATURE,
    DEFAULT_TALBOT,
    TalbotConfig,
    density_f,
    density_f_grid_with_floors,
    eval_auto,
    geometric_grid,
)
from .params import MLParams, QuadratureConfig
from .series import eval_series, nth_derivative_signed
from .special import ln_gamma

#: Relative floor below which density samples count as violations.
DENSITY_SIGN_TOL = 1e-9

#: Floor for the alternating-derivative checks.
DERIVATIVE_SIGN_TOL = 1e-10

DEFAULT_MAX_ORDER = 8


def default_y_grid() -> np.ndarray:
    """Geometric y grid on [1e-3, 50], 200 points per decade."""
    return geometric_grid(1e-3, 50.0, 200)


def default_x_grid() -> np.ndarray:
    """Log-spaced x grid on [1e-3, 50], 48 points."""
    return np.geomspace(1e-3, 50.0, 48)


def check_criterion(p: MLParams) -> bool:
    """True iff 0 < alpha < 1, gamma > 0 and beta >= alpha*gamma."""
    return p.cm_condition


@dataclass(frozen=True)
class DensityAudit:
    """Outcome of a density sweep."""

    min_value: float
    argmin: float
    violation_locus: tuple[float, float] | None
    grid_too_coarse: bool


def _bisect_sign_change(p: MLParams, lo: float, hi: float, threshold: float,
                        tcfg: TalbotConfig, tol: float = 1e-6) -> float:
    """Locate where density_f crosses ``threshold`` between lo and hi."""
    f_lo = density_f(p, lo, tcfg) - threshold
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = density_f(p, mid, tcfg) - threshold
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def audit_density(
    p: MLParams,
    y_grid: np.ndarray | None = None,
    tcfg: TalbotConfig = DEFAULT_TALBOT,
) -> DensityAudit:
    """Sweep the auxiliary density over a y grid and report the minimum and
    the maximal contiguous violation interval (if any), with endpoints
    refined by bisection to 1e-6.

    A sample counts as a violation only when it sits below both the
    -1e-9 * max|f| tolerance and its own inversion noise floor, so
    unresolvable near-zero values cannot refute.
    """
    grid = default_y_grid() if y_grid is None else np.asarray(y_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("y grid must be nonempty")
    values, floors = density_f_grid_with_floors(p, grid, tcfg)
    i_min = int(np.argmin(values))
    scale = float(np.max(np.abs(values)))
    threshold = -DENSITY_SIGN_TOL * scale
    spread = float(np.max(values) - np.min(values))
    too_coarse = bool(spread > 0.0 and np.any(np.abs(np.diff(values)) > 0.5 * spread))

    violating = values < np.minimum(threshold, -4.0 * floors)
    locus: tuple[float, float] | None = None
    if np.any(violating):
        # Maximal (longest) contiguous run of violating samples.
        runs: list[tuple[int, int]] = []
        start = None
        for i, bad in enumerate(violating):
            if bad and start is None:
                start = i
            elif not bad and start is not None:
                runs.append((start, i - 1))
                start = None
        if start is not None:
            runs.append((start, len(violating) - 1))
        first, last = max(runs, key=lambda r: r[1] - r[0])
        lo = float(grid[first])
        if first > 0:
            lo = _bisect_sign_change(p, float(grid[first - 1]), lo, threshold, tcfg)
        hi = float(grid[last])
        if last < len(grid) - 1:
            hi = _bisect_sign_change(p, hi, float(grid[last + 1]), threshold, tcfg)
        locus = (lo, hi)
    return DensityAudit(float(values[i_min]), float(grid[i_min]), locus, too_coarse)


def refuting_density_audit(p: MLParams, tcfg: TalbotConfig = DEFAULT_TALBOT) -> DensityAudit:
    """Density audit on the default grid, extended toward larger y when a
    criterion-false triple shows no violation there.

    As beta approaches alpha*gamma from below, the tail sign change of the
    density retreats toward infinity (its leading tail coefficient
    1/Gamma(beta - alpha*gamma) shrinks), so near-boundary refutations
    need a wider sweep than the default [1e-3, 50] window.
    """
    da = audit_density(p, None, tcfg)
    if da.violation_locus is not None or check_criterion(p):
        return da
    for lo, hi in ((50.0, 5e3), (5e3, 5e5)):
        ext = audit_density(p, geometric_grid(lo, hi, 100), tcfg)
        if ext.violation_locus is not None:
            if da.min_value <= ext.min_value:
                min_value, argmin = da.min_value, da.argmin
            else:
                min_value, argmin = ext.min_value, ext.argmin
            return DensityAudit(
                min_value, argmin, ext.violation_locus,
                da.grid_too_coarse or ext.grid_too_coarse,
            )
    return da


@dataclass(frozen=True)
class DerivativeAudit:
    """Outcome of the alternating-sign derivative sweep."""

    passed: bool
    max_order: int
    checked_points: int
    skipped_points: int
    first_violation: tuple[float, int, float] | None  # (x, order, value)

    @property
    def conclusive(self) -> bool:
        return self.checked_points > 0


def audit_derivatives(
    p: MLParams,
    x_grid: np.ndarray | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> DerivativeAudit:
    """Check (-1)^n d^n/dx^n E(-x) >= -tol*scale for n = 0..max_order over
    the x grid.  Points where the series signals precision loss are skipped
    and counted."""
    if not 0 <= max_order <= 12:
        raise ValueError("max_order must lie in [0, 12]")
    grid = default_x_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    checked = 0
    skipped = 0
    first_violation: tuple[float, int, float] | None = None
    for x in grid:
        x = float(x)
        try:
            scale = abs(eval_series(p, x).value) + 1.0
        except (PrecisionLossError, SeriesNonconvergenceError):
            skipped += 1 + max_order
            continue
        for n in range(0, max_order + 1):
            try:
                value = nth_derivative_signed(p, x, n)
            except (PrecisionLossError, SeriesNonconvergenceError):
                skipped += 1
                continue
            checked += 1
            if value < -DERIVATIVE_SIGN_TOL * scale and first_violation is None:
                first_violation = (x, n, value)
    return DerivativeAudit(first_violation is None, max_order, checked, skipped, first_violation)


VERIFY_QUADRATURE = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=200)


def verify_laplace_identity(
    p: MLParams,
    x: float,
    s: float,
    qcfg: QuadratureConfig = VERIFY_QUADRATURE,
) -> float:
    """Relative residual of the Laplace-transform identity

        int_0^inf t^(beta-1) E(alpha, beta, gamma; -x t^alpha) e^(-s t) dt
            = s^(alpha*gamma - beta) / (x + s^alpha)^gamma

    for real s > x^(1/alpha) > 0 (the real-axis validity region).  The
    left side is integrated adaptively with the E factor evaluated by
    whichever route is trustworthy at each point.
    """
    if not (x > 0.0 and math.isfinite(x)):
        raise ValueError(f"verify_laplace_identity requires x > 0, got {x!r}")
    if not (s > 0.0 and math.isfinite(s)):
        raise ValueError(f"verify_laplace_identity requires s > 0, got {s!r}")
    if s <= x ** (1.0 / p.alpha):
        raise ValueError(
            f"(x={x}, s={s}) lies outside the validity region s > x^(1/alpha) "
            f"= {x ** (1.0 / p.alpha):.6g}"
        )
    alpha, beta, gamma_ = p.alpha, p.beta, p.gamma
    rhs = s ** (alpha * gamma_ - beta) / (x + s**alpha) ** gamma_

    # |E(-w)| never strays far above E(0) on the negative axis; this slack
    # bound only gates a negligibility short-circuit.
    e_bound = 10.0 * math.exp(-ln_gamma(beta))
    cutoff = 1e-18 * rhs

    # Substituting t = u^(1/beta) absorbs the t^(beta-1) endpoint weight
    # exactly: t^(beta-1) dt = du / beta.
    t_cap = (45.0 + 5.0 * math.log1p(beta)) / s

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        t = u ** (1.0 / beta)
        damp = math.exp(-s * t)
        if damp * e_bound / beta < cutoff:
            return 0.0
        try:
            e_val = eval_auto(p, x * t**alpha).value
        except (PrecisionLossError, SeriesNonconvergenceError):
            # Inside the validity region the series only dies at large
            # x*t^alpha, where E has decayed to o(1) while e^{-st} has
            # decayed exponentially; the slack bound overstates the lost
            # mass by many orders.
            if damp * e_bound / beta < 1e-9 * rhs:
                return 0.0
            raise
        return e_val * damp / beta

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        lhs, _ = quad(
            integrand,
            0.0,
            t_cap**beta,
            epsabs=qcfg.abs_tol,
            epsrel=qcfg.rel_tol,
            limit=qcfg.max_subdivisions,
            points=sorted(q**beta for q in qcfg.split_points if q < t_cap) or None,
        )
    return abs(lhs - rhs) / abs(rhs)


@dataclass(frozen=True)
class CMReport:
    """Verdict plus numeric evidence for one parameter triple."""

    params: MLParams
    criterion_satisfied: bool
    density_min: float | None = None
    density_argmin: float | None = None
    violation_locus: tuple[float, float] | None = None
    derivative_sign_ok: bool | None = None
    max_order_checked: int = 0
    skipped_points: int = 0
    laplace_residual: float | None = None
    consistency: str = "consistent"
    errors: dict = field(default_factory=dict)


def full_report(
    p: MLParams,
    y_grid: np.ndarray | None = None,
    x_grid: np.ndarray | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
    tcfg: TalbotConfig = DEFAULT_TALBOT,
    qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
    laplace_point: tuple[float, float] = (1.0, 2.0),
) -> CMReport:
    """Run every audit route and assemble a CMReport.

    The verdict equals the parameter criterion; the consistency field says
    whether the numerical evidence agrees with it.  Routes that cannot run
    (density for alpha outside (0,1), failed quadratures) record an error
    marker instead of aborting the report.
    """
    criterion = check_criterion(p)
    errors: dict[str, str] = {}

    density_min = density_argmin = None
    locus = None
    density_verdict: bool | None = None
    if 0.0 < p.alpha < 1.0:
        try:
            if y_grid is None:
                da = refuting_density_audit(p, tcfg)
            else:
                da = audit_density(p, y_grid, tcfg)
            density_min, density_argmin, locus = da.min_value, da.argmin, da.violation_locus
            density_verdict = locus is None
            if da.grid_too_coarse:
                errors["density"] = "grid too coarse: adjacent samples differ by >50% of range"
        except NumericsError as exc:
            errors["density"] = str(exc)
    else:
        errors["density"] = "density route requires 0 < alpha < 1"

    deriv = audit_derivatives(p, x_grid, max_order)
    derivative_verdict = deriv.passed if deriv.conclusive else None
    if not deriv.conclusive:
        errors["derivatives"] = "series evaluator signalled precision loss at every grid point"

    laplace_residual = None
    try:
        lx, ls = laplace_point
        ls = max(ls, 1.5 * lx ** (1.0 / p.alpha))
        laplace_residual = verify_laplace_identity(p, lx, ls, qcfg)
    except NumericsError as exc:
        errors["laplace"] = str(exc)

    evidence = [v for v in (density_verdict, derivative_verdict) if v is not None]
    consistency = "consistent"
    if evidence and any(e != criterion for e in evidence):
        consistency = "inconsistent"
    if density_verdict is not None and derivative_verdict is not None \
            and density_verdict != derivative_verdict:
        consistency = "inconsistent"
        errors["routes"] = "density and derivative routes disagree"

    return CMReport(
        params=p,
        criterion_satisfied=criterion,
        density_min=density_min,
        density_argmin=density_argmin,
        violation_locus=locus,
        derivative_sign_ok=deriv.passed if deriv.conclusive else None,
        max_order_checked=deriv.max_order,
        skipped_points=deriv.skipped_points,
        laplace_residual=laplace_residual,
        consistency=consistency,
        errors=errors,
    )


def parameter_grid(n: int = 5) -> list[MLParams]:
    """The n x n x n audit grid: alpha in [0.2, 0.8], gamma in [0.5, 3],
    beta in [0.3, 3], uniformly spaced."""
    alphas = np.linspace(0.2, 0.8, n)
    gammas = np.linspace(0.5, 3.0, n)
    betas = np.linspace(0.3, 3.0, n)
    return [
        MLParams(float(a), float(b), float(g))
        for a in alphas
        for g in gammas
        for b in betas
    ]
