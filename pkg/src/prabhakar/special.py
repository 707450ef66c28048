"""Scalar special functions: log-gamma, gamma, principal-branch complex
powers, and the modified Bessel function K_nu restricted to nu in [0, 1].

All functions are pure and reentrant.  Gamma functions reject nonpositive
arguments instead of extending the domain through reflection.
"""

from __future__ import annotations

import cmath
import math

from .errors import SeriesNonconvergenceError

# Lanczos approximation, g = 607/128, 14-term coefficient set (Godfrey).
# |relative error| < 1e-14 for x > 0 away from the zeros of ln Gamma.
_LANCZOS_SHIFT = 607.0 / 128.0 + 0.5  # = 5.2421875
_LANCZOS_SER0 = 0.999999999999997092
_LANCZOS_COF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005

# Largest x with Gamma(x) representable in double precision.
GAMMA_OVERFLOW_X = 171.624

_BESSEL_MAX_ITER = 20000
_BESSEL_EPS = 1e-16

# Odd Taylor coefficients a_k of 1/Gamma(1+t), k = 1, 3, ..., 21.  They give
# (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) = -(a1 + a3 mu^2 + a5 mu^4 + ...)
# without subtractive cancellation for |mu| <= 1/2.
_INV_GAMMA_ODD = (
    0.5772156649015329,
    -0.042002635034095235,
    -0.042197734555544337,
    0.0072189432466630995,
    -0.00021524167411495097,
    -2.0134854780788239e-05,
    1.1330272319816959e-06,
    6.1160951044814158e-09,
    -1.1812745704870201e-09,
    7.7822634399050713e-12,
    5.1003702874544760e-13,
)


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Accuracy is ~1e-14 relative to max(1, |ln Gamma(x)|) on (0, 1e6].
    """
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"ln_gamma requires a finite argument, got {x!r}")
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    y = float(x)
    tmp = x + _LANCZOS_SHIFT
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_SER0
    for c in _LANCZOS_COF:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_2PI * ser / x)


def gamma(x: float) -> float:
    """Gamma(x) for x > 0; raises OverflowError once past double range."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"gamma requires a finite argument, got {x!r}")
    if x <= 0.0:
        raise ValueError(f"gamma requires x > 0, got {x!r}")
    if x > GAMMA_OVERFLOW_X:
        raise OverflowError(f"gamma({x}) exceeds double-precision range (x > {GAMMA_OVERFLOW_X})")
    return math.exp(ln_gamma(x))


def complex_pow(z: complex, p: float) -> complex:
    """Principal-branch power exp(p * (ln|z| + i Arg z)) with Arg in (-pi, pi]."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"complex_pow requires finite components, got {z!r}")
    if z == 0:
        if p > 0.0:
            return 0j
        raise ValueError("complex_pow(0, p) is undefined for p <= 0")
    if p == 0.0:
        return 1.0 + 0j
    return cmath.exp(p * cmath.log(z))


def _gam_helpers(mu: float) -> tuple[float, float, float, float]:
    """Temme's gamma combinations for |mu| <= 1/2.

    Returns (gam1, gam2, gampl, gammi) with gampl = 1/Gamma(1+mu),
    gammi = 1/Gamma(1-mu), gam2 = (gammi + gampl)/2 and
    gam1 = (gammi - gampl)/(2 mu), the latter by its even power series to
    avoid cancellation near mu = 0.
    """
    gampl = 1.0 / math.exp(ln_gamma(1.0 + mu))
    gammi = 1.0 / math.exp(ln_gamma(1.0 - mu))
    mu2 = mu * mu
    acc = 0.0
    for a in reversed(_INV_GAMMA_ODD):
        acc = acc * mu2 + a
    gam1 = -acc
    gam2 = 0.5 * (gammi + gampl)
    return gam1, gam2, gampl, gammi


def _bessel_k_temme(mu: float, x: float) -> tuple[float, float]:
    """K_mu(x), K_{mu+1}(x) by Temme's series; |mu| <= 1/2, 0 < x <= 2."""
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if abs(pimu) < 1e-15 else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 if abs(e) < 1e-15 else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _gam_helpers(mu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    summ = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    sum1 = p
    for i in range(1, _BESSEL_MAX_ITER + 1):
        ff = (i * ff + p + q) / (i * i - mu * mu)
        c *= d / i
        p /= i - mu
        q /= i + mu
        dl = c * ff
        summ += dl
        dl1 = c * (p - i * ff)
        sum1 += dl1
        if abs(dl) < abs(summ) * _BESSEL_EPS:
            return summ, sum1 * (2.0 / x)
    raise SeriesNonconvergenceError("bessel_k series failed to converge")


def _bessel_k_cf2(mu: float, x: float) -> tuple[float, float]:
    """K_mu(x), K_{mu+1}(x) by the Thompson-Barnett CF2 evaluation; x > 2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu * mu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _BESSEL_MAX_ITER + 1):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _BESSEL_EPS:
            k_mu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
            k_mu1 = k_mu * (mu + x + 0.5 - a1 * h) / x
            return k_mu, k_mu1
    raise SeriesNonconvergenceError("bessel_k continued fraction failed to converge")


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel function of the second kind K_nu(x).

    Restricted to nu in [0, 1]; relative error <= 1e-10 for x in
    [1e-6, 500].  Uses Temme's series for x <= 2 and a continued-fraction
    evaluation for x > 2, both through the order pair (mu, mu+1) with
    |mu| <= 1/2.
    """
    if not (isinstance(nu, (int, float)) and 0.0 <= nu <= 1.0):
        raise ValueError(f"bessel_k requires nu in [0, 1], got {nu!r}")
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"bessel_k requires a finite argument, got {x!r}")
    if x <= 0.0:
        raise ValueError(f"bessel_k requires x > 0, got {x!r}")
    mu = nu if nu <= 0.5 else nu - 1.0
    if x <= 2.0:
        k_mu, k_mu1 = _bessel_k_temme(mu, x)
    else:
        k_mu, k_mu1 = _bessel_k_cf2(mu, x)
    return k_mu if nu <= 0.5 else k_mu1


def bessel_k_via_integral(nu: float, x: float) -> float:
    """Reference evaluation of K_nu(x) from the integral representation

        K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt

    by adaptive quadrature.  Slow; retained as the independent oracle for
    the fast path above.
    """
    if not 0.0 <= nu <= 1.0:
        raise ValueError(f"bessel_k_via_integral requires nu in [0, 1], got {nu!r}")
    if x <= 0.0:
        raise ValueError(f"bessel_k_via_integral requires x > 0, got {x!r}")
    from scipy.integrate import quad

    # Integrand underflows once x cosh t > ~745; cap the interval there.
    t_max = math.acosh(745.0 / x) + 1.0 if x < 745.0 else 1.0

    def integrand(t: float) -> float:
        u = x * math.cosh(t)
        if u > 745.0:
            return 0.0
        return math.exp(-u) * math.cosh(nu * t)

    value, _ = quad(integrand, 0.0, t_max, epsabs=0.0, epsrel=1e-13, limit=400)
    return value
