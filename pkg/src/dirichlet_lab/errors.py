"""Exception types shared across the laboratory."""


class DirichletLabError(Exception):
    """Base class for all errors raised by this package."""


class MissingPrimeAngle(DirichletLabError):
    """A character is queried at a prime it carries no angle for."""


class DegenerateDenominator(DirichletLabError):
    """Frostman-shift denominator 1 - conj(xi)*f(s) is numerically zero."""


class PoleHit(DirichletLabError):
    """Blaschke product evaluated at a reflected zero -conj(alpha)."""


class QuadratureNonconvergence(DirichletLabError):
    """Panel refinement exhausted without the two-estimate agreement."""


class TooManyPrimes(DirichletLabError):
    """Torus quadrature requested over more than the supported prime count."""


class ZeroOnLine(DirichletLabError):
    """A log-modulus quadrature node landed on a numerical zero of f."""


class SingularPoint(DirichletLabError):
    """Area integrand |f|^(p-2)|f'|^2 requested at a zero of f with p < 2."""


class BoundaryZeroSuspected(DirichletLabError):
    """|f| is numerically zero on a contour sample; the rectangle must be jittered."""


class DepthExceeded(DirichletLabError):
    """Zero isolation hit the subdivision depth cap; partial results attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class HypothesisFailed(DirichletLabError):
    """A sampled hypothesis (e.g. |f| >= c on a vertical line) does not hold."""


class TruncationOverflow(DirichletLabError):
    """Requested series degree exceeds what the FFT grid can resolve."""


class InsufficientCover(DirichletLabError):
    """The Kronecker flow exits the covering set before the scheduled horizon."""


class InputError(DirichletLabError):
    """Malformed input file or configuration."""
