"""Fixed-Talbot numerical inverse Laplace transformation, the spectral
densities built from it, and the integral representation of E(-w).

The Bromwich contour is deformed onto the cotangent-shaped fixed-Talbot
contour s(theta) = sigma * theta * (cot(theta) + i), theta in (-pi, pi),
which wraps the branch point of the image at the origin without crossing
the principal-branch cut on the negative real axis.  Both contour halves
are evaluated explicitly: for a transform of a real original the two
halves are conjugate, so the imaginary part of the node sum is a
self-diagnostic that flags images violating that symmetry (a branch or
analyticity error) while costing nothing when all is well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import (
    InversionQualityError,
    PrecisionLossError,
    QuadratureError,
    SeriesNonconvergenceError,
)
from .params import MLParams, QuadratureConfig
from .series import DEFAULT_TOL, SeriesResult, eval_series
from .special import ln_gamma

# sigma = CONTOUR_SCALE_COEFF * nodes / t reproduces the Abate-Valko rule
# r = (2/5) * M_half with M_half = nodes / 2 nodes per contour half.
# Calibrated against the closed-form density cases; see tests.
CONTOUR_SCALE_COEFF = 0.2


@dataclass(frozen=True)
class TalbotConfig:
    """Node count and contour shape for fixed-Talbot inversion.

    ``nodes`` counts image evaluations across the full symmetric contour
    (must be even, >= 16).  ``scale`` fixes the contour parameter sigma;
    when None it defaults per evaluation to CONTOUR_SCALE_COEFF*nodes/t.
    When the imaginary-residue diagnostic exceeds ``residual_tol`` the node
    count is doubled up to ``max_doublings`` times before giving up.
    """

    nodes: int = 64
    scale: float | None = None
    residual_tol: float = 1e-8
    max_doublings: int = 2

    def __post_init__(self) -> None:
        if not (isinstance(self.nodes, int) and self.nodes >= 16 and self.nodes % 2 == 0):
            raise ValueError(f"nodes must be an even integer >= 16, got {self.nodes!r}")
        if self.scale is not None and not self.scale > 0.0:
            raise ValueError(f"scale must be positive, got {self.scale!r}")
        if not self.residual_tol > 0.0:
            raise ValueError("residual_tol must be positive")
        if self.max_doublings < 0:
            raise ValueError("max_doublings must be >= 0")


DEFAULT_TALBOT = TalbotConfig()
DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class DensityCurve:
    """Sampled (y, f(y)) pairs with parameter metadata."""

    params: MLParams
    points: tuple[tuple[float, float], ...]
    method: str  # "talbot" or "closed_form"

    def __post_init__(self) -> None:
        if self.method not in ("talbot", "closed_form"):
            raise ValueError(f"method must be 'talbot' or 'closed_form', got {self.method!r}")
        ys = [y for y, _ in self.points]
        if any(y <= 0.0 for y in ys):
            raise ValueError("all y must be positive")
        if any(b <= a for a, b in zip(ys, ys[1:])):
            raise ValueError("y values must be strictly increasing")

    @property
    def y(self) -> np.ndarray:
        return np.array([y for y, _ in self.points])

    @property
    def f(self) -> np.ndarray:
        return np.array([f for _, f in self.points])


_EPS = float(np.finfo(float).eps)

# Noise-floor multiplier for the inversion-quality gate: an imaginary part
# below this multiple of eps * sum|terms| is indistinguishable from benign
# roundoff, however large it is relative to a near-zero real part.
_FLOOR_FACTOR = 16.0


def _talbot_nodes(t: float, nodes: int, scale: float | None) -> tuple[np.ndarray, np.ndarray, float]:
    """Contour nodes and quadrature weights for the full symmetric contour."""
    m_half = nodes // 2
    sigma = scale if scale is not None else CONTOUR_SCALE_COEFF * nodes / t
    theta = np.arange(1, m_half) * (math.pi / m_half)
    cot = 1.0 / np.tan(theta)
    s_upper = sigma * theta * (cot + 1j)
    w_upper = 1.0 + 1j * theta * (1.0 + cot**2) - 1j * cot
    s = np.concatenate(([sigma + 0j], s_upper, np.conj(s_upper)))
    w = np.concatenate(([1.0 + 0j], w_upper, np.conj(w_upper)))
    return s, w, sigma


def talbot_invert_with_residual(
    image: Callable[[np.ndarray], np.ndarray],
    t: float,
    cfg: TalbotConfig = DEFAULT_TALBOT,
) -> tuple[float, float]:
    """Fixed-Talbot quadrature of (1/2 pi i) int e^{st} image(s) ds.

    ``image`` must accept a complex ndarray and evaluate elementwise.
    Returns (value, residual) where residual = |Im sum| / |Re sum| is the
    inversion-quality diagnostic: the sum over the symmetric contour is
    exactly real for a conjugate-symmetric (Schwarz) image, so a large
    residual flags a branch or analyticity violation.
    """
    value, residual, _ = _talbot_eval(image, t, cfg.nodes, cfg.scale)
    return value, residual


def _talbot_eval(
    image: Callable[[np.ndarray], np.ndarray],
    t: float,
    nodes: int,
    scale: float | None,
) -> tuple[float, float, bool]:
    """One Talbot pass: (value, residual, quality_ok)."""
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0.0):
        raise ValueError(f"talbot inversion requires t > 0, got {t!r}")
    s, w, sigma = _talbot_nodes(t, nodes, scale)
    values = np.asarray(image(s), dtype=complex)
    if values.shape != s.shape:
        raise ValueError("image must evaluate elementwise on a complex ndarray")
    terms = np.exp(s * t) * values * w
    total = terms.sum() * (sigma / nodes)
    value = float(total.real)
    imag = abs(float(total.imag))
    residual = imag / max(abs(value), 1e-300)
    floor = _FLOOR_FACTOR * _EPS * float(np.abs(terms).sum()) * (sigma / nodes)
    ok = imag <= max(1e-8 * abs(value), floor)
    return value, residual, ok


def talbot_invert(
    image: Callable[[np.ndarray], np.ndarray],
    t: float,
    cfg: TalbotConfig = DEFAULT_TALBOT,
) -> float:
    """Invert a Laplace image at t.

    The imaginary part of the contour sum must sit below either
    ``cfg.residual_tol`` relative to the result or the roundoff floor of
    the node sum; otherwise nodes are doubled, and InversionQualityError is
    raised when doubling never helps.
    """
    nodes = cfg.nodes
    for _ in range(cfg.max_doublings + 1):
        value, residual, ok = _talbot_eval(image, t, nodes, cfg.scale)
        if ok or residual <= cfg.residual_tol:
            return value
        nodes *= 2
    raise InversionQualityError(
        f"talbot inversion at t={t} kept imaginary residue {residual:.3g} "
        f"above {cfg.residual_tol:g} after doubling to {nodes} nodes"
    )


def _saddle_exponent(p: MLParams, y: np.ndarray | float) -> np.ndarray | float:
    """Exponent (1-alpha) * (alpha/y)^(alpha/(1-alpha)) of the essential
    decay of the auxiliary density as y -> 0+."""
    a = p.alpha
    return (1.0 - a) * (a / y) ** (a / (1.0 - a))


# Densities below exp(-_KNEE) of unit scale are far beneath every tolerance
# in the package; short-circuit them to zero instead of asking the contour
# quadrature for impossible cancellation.
_KNEE = 60.0


def _require_density_domain(p: MLParams) -> None:
    if not 0.0 < p.alpha < 1.0:
        raise ValueError(
            f"density route requires 0 < alpha < 1 (talbot contour degenerates), got alpha={p.alpha}"
        )


def _density_batch(
    p: MLParams, y_sub: np.ndarray, nodes: int, scale: float | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batched fused-exponential Talbot pass for the density image.

    The term z^rho * exp(s*y - z^alpha) is evaluated through a single
    exponential of rho*Log z + s*y - z^alpha, which cannot overflow in
    parts the way separate factors can.  Returns (values, imag_parts,
    noise_floors)."""
    m_half = nodes // 2
    theta = np.arange(1, m_half) * (math.pi / m_half)
    cot = 1.0 / np.tan(theta)
    base_up = theta * (cot + 1j)
    base_w = 1.0 + 1j * theta * (1.0 + cot**2) - 1j * cot
    base = np.concatenate(([1.0 + 0j], base_up, np.conj(base_up)))
    w = np.concatenate(([1.0 + 0j], base_w, np.conj(base_w)))
    if scale is not None:
        sigma = np.full_like(y_sub, scale)
    else:
        sigma = CONTOUR_SCALE_COEFF * nodes / y_sub
    s = sigma[:, None] * base[None, :]
    rho = p.laplace_power
    exponent = s * y_sub[:, None] - s**p.alpha
    if rho != 0.0:
        exponent = exponent + rho * np.log(s)
    real_part = exponent.real
    if np.any(real_part > 700.0):
        raise InversionQualityError(
            "density contour cannot resolve this parameter/argument range "
            "(node magnitudes overflow; alpha close to 1 with small y)"
        )
    terms = np.exp(exponent) * w[None, :]
    totals = terms.sum(axis=1) * (sigma / nodes)
    floors = _FLOOR_FACTOR * _EPS * np.abs(terms).sum(axis=1) * (sigma / nodes)
    return totals.real, np.abs(totals.imag), floors


def density_f_grid_with_floors(
    p: MLParams,
    y: Sequence[float] | np.ndarray,
    cfg: TalbotConfig = DEFAULT_TALBOT,
) -> tuple[np.ndarray, np.ndarray]:
    """Batched density sweep returning (values, noise_floors).

    Each floor bounds the absolute error of its inversion: the larger of
    the roundoff noise of the node sum and a truncation estimate from a
    half-node comparison pass.  Sign decisions below the floor are
    meaningless and the audit treats them accordingly.  Points beneath the
    essential-decay knee (true value below e^-60 of unit scale) are
    short-circuited to exactly zero.
    """
    _require_density_domain(p)
    y_arr = np.asarray(y, dtype=float)
    if y_arr.ndim != 1 or y_arr.size == 0:
        raise ValueError("y grid must be a nonempty 1-d array")
    if np.any(~np.isfinite(y_arr)) or np.any(y_arr <= 0.0):
        raise ValueError("y grid must be positive and finite")

    values = np.zeros_like(y_arr)
    floors = np.zeros_like(y_arr)
    live = _saddle_exponent(p, y_arr) < _KNEE
    if not np.any(live):
        return values, floors

    y_live = y_arr[live]
    vals, imags, fls = _density_batch(p, y_live, cfg.nodes, cfg.scale)
    coarse, _, _ = _density_batch(p, y_live, max(cfg.nodes // 2, 16), cfg.scale)
    fls = np.maximum(fls, np.abs(vals - coarse))
    nodes = cfg.nodes
    for _ in range(cfg.max_doublings):
        bad = ~(imags <= np.maximum(cfg.residual_tol * np.abs(vals), fls))
        if not np.any(bad):
            break
        nodes *= 2
        prev = vals[bad]
        new_vals, new_imags, new_fls = _density_batch(p, y_live[bad], nodes, cfg.scale)
        vals[bad] = new_vals
        imags[bad] = new_imags
        fls[bad] = np.maximum(new_fls, np.abs(new_vals - prev))
    bad = ~(imags <= np.maximum(cfg.residual_tol * np.abs(vals), fls))
    if np.any(bad):
        worst = float(y_live[np.argmax(np.where(bad, imags, 0.0))])
        raise InversionQualityError(
            f"talbot inversion kept imaginary residue above {cfg.residual_tol:g} "
            f"after doubling to {nodes} nodes (worst y={worst:g})"
        )
    values[live] = vals
    floors[live] = fls
    return values, floors


def density_f_grid(
    p: MLParams,
    y: Sequence[float] | np.ndarray,
    cfg: TalbotConfig = DEFAULT_TALBOT,
) -> np.ndarray:
    """Vectorized density sweep: one batched Talbot inversion per y value."""
    values, _ = density_f_grid_with_floors(p, y, cfg)
    return values


def density_f(p: MLParams, y: float, cfg: TalbotConfig = DEFAULT_TALBOT) -> float:
    """Auxiliary density f(y): the inverse Laplace transform of
    z^(alpha*gamma - beta) * exp(-z^alpha), for 0 < alpha < 1."""
    _require_density_domain(p)
    if not (isinstance(y, (int, float)) and math.isfinite(y) and y > 0.0):
        raise ValueError(f"density_f requires y > 0, got {y!r}")
    values, _ = density_f_grid_with_floors(p, np.array([float(y)]), cfg)
    return float(values[0])


def density_g(p: MLParams, y: float, cfg: TalbotConfig = DEFAULT_TALBOT) -> float:
    """Spectral density g(y) = (alpha / Gamma(gamma)) * y^(-beta) * f(y)."""
    f = density_f(p, y, cfg)
    return p.alpha * math.exp(-ln_gamma(p.gamma)) * y ** (-p.beta) * f


def density_curve(
    p: MLParams,
    y: Sequence[float] | np.ndarray,
    cfg: TalbotConfig = DEFAULT_TALBOT,
) -> DensityCurve:
    """Sample f on a y grid via the batched Talbot sweep."""
    values = density_f_grid(p, y, cfg)
    pts = tuple((float(yi), float(fi)) for yi, fi in zip(np.asarray(y, dtype=float), values))
    return DensityCurve(p, pts, "talbot")


def geometric_grid(y_min: float = 1e-3, y_max: float = 50.0, per_decade: int = 200) -> np.ndarray:
    """Geometric grid with the given resolution in points per decade."""
    if not (0.0 < y_min < y_max):
        raise ValueError("need 0 < y_min < y_max")
    if per_decade < 1:
        raise ValueError("per_decade must be >= 1")
    n = int(round(per_decade * math.log10(y_max / y_min))) + 1
    return np.geomspace(y_min, y_max, max(n, 2))


def eval_integral_rep(
    p: MLParams,
    w: float,
    qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tcfg: TalbotConfig = DEFAULT_TALBOT,
) -> float:
    """E(alpha, beta, gamma; -w) from its spectral representation

        E(-w) = (1/alpha) int_0^inf e^{-w u} u^{-1-1/alpha} g(u^{-1/alpha}) du
              = int_0^inf exp(-w y^(-alpha)) g(y) dy   (y = u^{-1/alpha}),

    where g is the spectral density built from Talbot inversions.  Valid
    for 0 < alpha < 1, w >= 0.

    Integrated in the u variable: near u = 0 the integrand behaves like
    u^(gamma-1), absorbed exactly by u = q^(1/gamma), and the exponential
    damping is analytic in u.  (The y form develops an algebraic boundary
    layer z^(alpha) in its mapped tail that defeats adaptive quadrature
    when alpha*gamma is large; it is kept only as the cross-check below.)
    """
    _require_density_domain(p)
    if not (isinstance(w, (int, float)) and math.isfinite(w) and w >= 0.0):
        raise ValueError(f"eval_integral_rep requires w >= 0, got {w!r}")

    g_pref = p.alpha * math.exp(-ln_gamma(p.gamma))
    alpha, beta, gamma_ = p.alpha, p.beta, p.gamma

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        damp = math.exp(-w * u) if w > 0.0 else 1.0
        if damp == 0.0:
            return 0.0
        y = u ** (-1.0 / alpha)
        f = density_f(p, y, tcfg)
        if f == 0.0:
            return 0.0
        return damp * u ** (-1.0 - 1.0 / alpha) * g_pref * y ** (-beta) * f

    opts = dict(epsabs=qcfg.abs_tol, epsrel=qcfg.rel_tol, limit=qcfg.max_subdivisions)
    if gamma_ >= 1.0:
        # integrand ~ u^(gamma-1) is bounded at 0; integrate directly
        head_splits = sorted(s for s in qcfg.split_points if s < 1.0)
        head, head_err = quad(integrand, 0.0, 1.0, points=head_splits or None, **opts)
    else:
        # absorb the endpoint singularity exactly: u = q^(1/gamma)
        head_splits = sorted(s**gamma_ for s in qcfg.split_points if s < 1.0)
        head, head_err = quad(
            lambda q: integrand(q ** (1.0 / gamma_)) * q ** (1.0 / gamma_ - 1.0) / gamma_,
            0.0, 1.0, points=head_splits or None, **opts,
        )
    tail, tail_err = quad(integrand, 1.0, math.inf, **opts)

    value = (head + tail) / alpha
    err = (head_err + tail_err) / alpha
    if err > max(qcfg.abs_tol * 100.0, 1e-7 * max(abs(value), 1.0)):
        raise QuadratureError(
            f"integral representation at w={w} converged only to {err:.3g}"
        )
    return value


def _eval_integral_rep_y_form(
    p: MLParams,
    w: float,
    qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tcfg: TalbotConfig = DEFAULT_TALBOT,
) -> float:
    """The y-substituted form int_0^inf exp(-w y^-alpha) g(y) dy, split at
    y = 1 with a logarithmic variable on (0, 1].  Retained as the
    re-derivation cross-check of the substitution in eval_integral_rep."""
    _require_density_domain(p)
    g_pref = p.alpha * math.exp(-ln_gamma(p.gamma))
    alpha, beta = p.alpha, p.beta

    def g_times_damp(y: float) -> float:
        damp = math.exp(-w * y ** (-alpha)) if w > 0.0 else 1.0
        if damp == 0.0:
            return 0.0
        f = density_f(p, y, tcfg)
        if f == 0.0:
            return 0.0
        return damp * g_pref * y ** (-beta) * f

    opts = dict(epsabs=qcfg.abs_tol, epsrel=qcfg.rel_tol, limit=qcfg.max_subdivisions)
    head, _ = quad(lambda v: g_times_damp(math.exp(-v)) * math.exp(-v), 0.0, 60.0, **opts)
    tail, _ = quad(g_times_damp, 1.0, math.inf, **opts)
    return head + tail


# Past this cancellation ratio the double-precision series carries fewer
# correct digits than the integral representation delivers, so eval_auto
# switches routes even though the series has not formally failed.
SERIES_CANCELLATION_SWITCH = 1e6


@dataclass(frozen=True)
class EvalResult:
    """Value of E(-x) together with the route that produced it."""

    value: float
    method: str  # "series" or "integral"
    terms_or_nodes: int
    cancellation_ratio: float | None


def eval_auto(
    p: MLParams,
    x: float,
    tol: float = DEFAULT_TOL,
    qcfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tcfg: TalbotConfig = DEFAULT_TALBOT,
    cancellation_switch: float = SERIES_CANCELLATION_SWITCH,
) -> EvalResult:
    """Evaluate E(alpha, beta, gamma; -x) by the series where it is
    trustworthy, falling back to the integral representation otherwise.

    For alpha outside (0, 1) there is no integral route and series errors
    propagate.
    """
    series_error: Exception | None = None
    try:
        r: SeriesResult = eval_series(p, x, tol)
        if r.cancellation_ratio <= cancellation_switch:
            return EvalResult(r.value, "series", r.terms_used, r.cancellation_ratio)
    except (PrecisionLossError, SeriesNonconvergenceError) as exc:
        series_error = exc
    if not 0.0 < p.alpha < 1.0:
        if series_error is not None:
            raise series_error
        return EvalResult(r.value, "series", r.terms_used, r.cancellation_ratio)
    value = eval_integral_rep(p, x, qcfg, tcfg)
    return EvalResult(value, "integral", tcfg.nodes, None)
