"""Exception types raised by fracsg."""


class FracsgError(Exception):
    """Base class for all library errors."""


class PoleError(FracsgError, ValueError):
    """Gamma function evaluated at a nonpositive integer."""


class DomainError(FracsgError, ValueError):
    """Argument outside the domain where an operation is defined."""


class NonConvergenceError(FracsgError, ArithmeticError):
    """An iterative method failed to reach its tolerance."""


class QuadratureError(NonConvergenceError):
    """Quadrature did not converge, or its truncated tail is too large."""


class NonDiagonalizableError(FracsgError, ValueError):
    """Eigenvector matrix too ill-conditioned for spectral calculus."""


class UnsupportedNormError(FracsgError, ValueError):
    """No closed form exists for the requested norm."""
