"""Exception types raised across the package."""


class RotorMubError(Exception):
    """Base class for all package errors."""


class DegenerateTheta(RotorMubError, ValueError):
    """The complex Gaussian form is singular at theta = 0."""


class DegenerateAngles(RotorMubError, ValueError):
    """Two labels belong to the same basis; their overlap is a delta, not a number."""


class AliasingError(RotorMubError, ValueError):
    """Angular grid too coarse for the requested angular-momentum band."""


class TruncationMismatch(RotorMubError, ValueError):
    """States or operators live on different truncations."""


class PoleAtPi(RotorMubError, ValueError):
    """Evaluation requested at the stereographic pole phi = pi."""


class QuadratureNoConvergence(RotorMubError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


class NoConvergence(RotorMubError, ArithmeticError):
    """Abel extrapolation disagrees across radii beyond tolerance."""


class IllConditioned(RotorMubError, ArithmeticError):
    """Requested quantity lives on the regularized (1 + E) null space."""


class InterpolationLoss(RotorMubError, ArithmeticError):
    """Input state carries weight near the pole; resampling would be lossy."""
