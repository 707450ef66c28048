"""Closed-form expressions for the auxiliary density f(y) at specific
parameter triples, used as independent oracles for the Talbot engine.

These are coded straight from the printed formulas and share no code with
the inversion module; that independence is what makes them oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .params import MLParams
from .special import bessel_k

_SQRT_PI = math.sqrt(math.pi)
_SQRT_3 = math.sqrt(3.0)


def _require_positive(y: float) -> None:
    if not (isinstance(y, (int, float)) and math.isfinite(y) and y > 0.0):
        raise ValueError(f"density oracles require y > 0, got {y!r}")


def levy_smirnov(y: float) -> float:
    """One-sided stable (Levy-Smirnov) density y^(-3/2) e^(-1/(4y)) / (2 sqrt(pi)).

    Equals the auxiliary density for alpha = 1/2 on the boundary line
    beta = alpha*gamma: the Laplace image degenerates to exp(-sqrt(z))
    there, so the measured proportionality constant is 1 for every gamma
    on that line (verified numerically in the tests).
    """
    _require_positive(y)
    return y ** (-1.5) * math.exp(-0.25 / y) / (2.0 * _SQRT_PI)


def example_b(y: float) -> float:
    """Density for (alpha, beta, gamma) = (1/2, 3/2, 2): e^(-1/(4y)) / sqrt(pi y)."""
    _require_positive(y)
    return math.exp(-0.25 / y) / math.sqrt(math.pi * y)


def example_c1(y: float) -> float:
    """Density for (1/3, 2, 5): K_{2/3}(2 / (3 sqrt(3y))) / (pi y sqrt(3))."""
    _require_positive(y)
    return bessel_k(2.0 / 3.0, 2.0 / (3.0 * math.sqrt(3.0 * y))) / (math.pi * y * _SQRT_3)


def example_c2(y: float) -> float:
    """Density for (2/3, 2, 2): e^(-2/(27 y^2)) K_{1/3}(2/(27 y^2)) / (sqrt(3) pi y)."""
    _require_positive(y)
    arg = 2.0 / (27.0 * y * y)
    return math.exp(-arg) * bessel_k(1.0 / 3.0, arg) / (_SQRT_3 * math.pi * y)


def counterexample(y: float) -> float:
    """Density for (1/2, 3/2, 4): (1 - 2y) e^(-1/(4y)) / (4 sqrt(pi) y^(5/2)).

    Negative for all y > 1/2, which refutes complete monotonicity for this
    triple (alpha*gamma > beta there).
    """
    _require_positive(y)
    return (1.0 - 2.0 * y) * math.exp(-0.25 / y) / (4.0 * _SQRT_PI * y**2.5)


@dataclass(frozen=True)
class OracleCase:
    """A closed form, the parameter triple it belongs to, and its sign."""

    formula_id: str
    params: MLParams
    fn: Callable[[float], float]
    expected_sign: str  # "nonnegative" or "changes_sign"

    def __post_init__(self) -> None:
        if self.expected_sign not in ("nonnegative", "changes_sign"):
            raise ValueError(f"bad expected_sign {self.expected_sign!r}")


ORACLE_CASES: dict[str, OracleCase] = {
    "levy_smirnov": OracleCase(
        "levy_smirnov", MLParams(0.5, 0.5, 1.0), levy_smirnov, "nonnegative"
    ),
    "example_b": OracleCase(
        "example_b", MLParams(0.5, 1.5, 2.0), example_b, "nonnegative"
    ),
    "example_c1": OracleCase(
        "example_c1", MLParams(1.0 / 3.0, 2.0, 5.0), example_c1, "nonnegative"
    ),
    "example_c2": OracleCase(
        "example_c2", MLParams(2.0 / 3.0, 2.0, 2.0), example_c2, "nonnegative"
    ),
    "counterexample": OracleCase(
        "counterexample", MLParams(0.5, 1.5, 4.0), counterexample, "changes_sign"
    ),
}
