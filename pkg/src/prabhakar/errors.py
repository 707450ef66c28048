"""Exception hierarchy for numerical failure modes.

Domain errors (bad arguments) use plain ValueError throughout the package;
the classes here signal that a computation was attempted and could not be
carried to the requested accuracy.
"""


class NumericsError(Exception):
    """Base class for numerical-failure signals."""


class SeriesNonconvergenceError(NumericsError):
    """Series did not terminate within the hard term cap."""


class PrecisionLossError(NumericsError):
    """Alternating-series cancellation destroyed the working precision.

    Carries the observed (or lower-bounded) cancellation ratio; the caller
    should switch to the integral representation.
    """

    def __init__(self, message: str, cancellation_ratio: float = float("inf")):
        super().__init__(message)
        self.cancellation_ratio = cancellation_ratio


class InversionQualityError(NumericsError):
    """Talbot inversion produced an untrustworthy result.

    Raised when the imaginary residue of the contour sum stays above the
    configured threshold even after node doubling, which indicates the
    transform is not analytic to the right of the deformed contour (or not
    conjugate-symmetric).
    """


class QuadratureError(NumericsError):
    """Adaptive quadrature failed to reach the requested tolerance."""
