"""Series evaluation of the three-parameter Mittag-Leffler function
E(alpha, beta, gamma; -x) on the negative real axis, with derivatives via
index-shifted series.

The series is alternating for x > 0 and loses all significant digits once
the peak partial sum dwarfs the result; the evaluator measures that
cancellation and refuses (PrecisionLossError) past a hard guard instead of
returning noise.  Callers should then switch to the integral representation
in :mod:`prabhakar.inversion`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PrecisionLossError, SeriesNonconvergenceError
from .params import MLParams
from .special import ln_gamma

MAX_TERMS = 100_000
CANCELLATION_LIMIT = 1e12
DEFAULT_TOL = 1e-14

# Terms beyond e^700 guarantee the cancellation guard fires (results on the
# negative axis are many orders below that), so bail before exp() overflows.
_LN_TERM_BAIL = 700.0


@dataclass(frozen=True)
class SeriesResult:
    """Value plus convergence diagnostics of one series evaluation."""

    value: float
    terms_used: int
    cancellation_ratio: float


def eval_series(p: MLParams, x: float, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Sum the defining series of E(alpha, beta, gamma; -x) for x >= 0.

    Terms are built by a log-space recurrence and accumulated with
    Neumaier-compensated summation.  Terminates once |t_r| < tol*|S_r| and
    the following term is smaller still.

    Raises SeriesNonconvergenceError past ``MAX_TERMS`` terms and
    PrecisionLossError when the cancellation ratio max|S_r| / |S| exceeds
    ``CANCELLATION_LIMIT``.
    """
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x >= 0.0):
        raise ValueError(f"eval_series requires x >= 0, got {x!r}")
    if not 1e-15 <= tol <= 1e-3:
        raise ValueError(f"tol must lie in [1e-15, 1e-3], got {tol!r}")

    lg_beta = ln_gamma(p.beta)
    term0 = math.exp(-lg_beta)
    if x == 0.0:
        return SeriesResult(term0, 1, 1.0)

    lnx = math.log(x)
    # Neumaier running sum (s, comp) with the r = 0 term in place.
    s = term0
    comp = 0.0
    max_abs = term0
    abs_sum = term0
    ln_cur = -lg_beta
    lg_prev = lg_beta
    sign = 1.0
    r = 0
    while True:
        lg_next = ln_gamma(p.alpha * (r + 1) + p.beta)
        ln_next = ln_cur + math.log(p.gamma + r) - math.log(r + 1.0) + lnx + lg_prev - lg_next
        total = s + comp
        if math.exp(ln_cur) < tol * abs(total) and ln_next < ln_cur:
            break
        r += 1
        if r >= MAX_TERMS:
            raise SeriesNonconvergenceError(
                f"series for {p} at x={x} did not converge within {MAX_TERMS} terms"
            )
        if ln_next > _LN_TERM_BAIL:
            raise PrecisionLossError(
                f"series for {p} at x={x} requires cancellation beyond e^700; "
                "use the integral representation",
            )
        sign = -sign
        abs_t = math.exp(ln_next)
        t = sign * abs_t
        tmp = s + t
        if abs(s) >= abs_t:
            comp += (s - tmp) + t
        else:
            comp += (t - tmp) + s
        s = tmp
        abs_sum += abs_t
        abs_total = abs(s + comp)
        if abs_total > max_abs:
            max_abs = abs_total
        ln_cur = ln_next
        lg_prev = lg_next

    value = s + comp
    # Terms carry ~1e-12 relative error through the log recurrence at worst,
    # so a result below that fraction of the absolute term mass has no
    # trustworthy digits even when the partial-sum ratio looks tame.
    if value == 0.0 or abs_sum * (1.0 / CANCELLATION_LIMIT) > abs(value):
        ratio = abs_sum / abs(value) if value != 0.0 else float("inf")
        raise PrecisionLossError(
            f"series for {p} at x={x} lost all significant digits "
            f"(term mass exceeds {CANCELLATION_LIMIT:.0e} times the result); "
            "use the integral representation",
            cancellation_ratio=ratio,
        )
    ratio = max_abs / abs(value)
    if ratio > CANCELLATION_LIMIT:
        raise PrecisionLossError(
            f"series for {p} at x={x} lost all significant digits "
            f"(cancellation ratio {ratio:.3g}); use the integral representation",
            cancellation_ratio=ratio,
        )
    return SeriesResult(value, r + 1, ratio)


def nth_derivative_signed(p: MLParams, x: float, n: int, tol: float = DEFAULT_TOL) -> float:
    """(-1)^n d^n/dx^n E(alpha, beta, gamma; -x).

    Term-wise differentiation of the series gives
    d^n/dz^n E(alpha, beta, gamma; z)
        = (gamma)_n * E(alpha, beta + n*alpha, gamma + n; z),
    so the signed derivative is that rising-factorial multiple of the
    shifted series at -x.  Nonnegative for all n when E(-x) is completely
    monotone.
    """
    if not (isinstance(n, int) and 0 <= n <= 12):
        raise ValueError(f"derivative order must be an integer in [0, 12], got {n!r}")
    if n == 0:
        return eval_series(p, x, tol).value
    pochhammer = math.exp(ln_gamma(p.gamma + n) - ln_gamma(p.gamma))
    return pochhammer * eval_series(p.shifted(n), x, tol).value


def reduce_wiman(alpha: float, beta: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """Two-parameter (Wiman) function E(alpha, beta; -x) = gamma = 1 case."""
    return eval_series(MLParams(alpha, beta, 1.0), x, tol).value


def reduce_classic(alpha: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """Classic one-parameter Mittag-Leffler E(alpha; -x) = beta = gamma = 1 case."""
    return eval_series(MLParams(alpha, 1.0, 1.0), x, tol).value
