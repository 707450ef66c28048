"""Shared parameter types: the (alpha, beta, gamma) triple and quadrature
configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class MLParams:
    """Parameter triple of the three-parameter Mittag-Leffler function.

    The defining series converges for any ``alpha > 0``; the spectral-density
    and audit routes additionally require ``0 < alpha < 1``.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
            if value <= 0.0:
                raise ValueError(f"{name} must be > 0, got {value!r}")

    @property
    def cm_condition(self) -> bool:
        """Parameter criterion for complete monotonicity of E(-x).

        True iff 0 < alpha < 1 and beta >= alpha*gamma (gamma > 0 is enforced
        by the constructor).  Recomputed on access, never cached.
        """
        return 0.0 < self.alpha < 1.0 and self.beta >= self.alpha * self.gamma

    @property
    def laplace_power(self) -> float:
        """Exponent alpha*gamma - beta of the algebraic factor in the
        Laplace image of the auxiliary density."""
        return self.alpha * self.gamma - self.beta

    def shifted(self, order: int) -> "MLParams":
        """Parameters of the order-``order`` derivative series:
        (alpha, beta + order*alpha, gamma + order)."""
        return MLParams(self.alpha, self.beta + order * self.alpha, self.gamma + order)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and interval-splitting policy for the semi-infinite
    integrals (integral representation and Laplace-identity check)."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    split_points: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not 1e-14 <= value <= 1e-4:
                raise ValueError(f"{name} must lie in [1e-14, 1e-4], got {value!r}")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be a positive integer")
        if any(not (p > 0.0 and math.isfinite(p)) for p in self.split_points):
            raise ValueError("split_points must be positive finite reals")
