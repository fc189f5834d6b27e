"""Fractional semigroups of matrices: special functions, logarithmic norms,
two evaluators for ``E_{a,b}(t**a A) x`` and checks of their growth bound."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    FracsgError,
    NonConvergenceError,
    NonDiagonalizableError,
    PoleError,
    QuadratureError,
    UnsupportedNormError,
)
from .fracode import Trajectory, contraction_demo, laplacian_1d, solve_volterra
from .normcore import (
    P1,
    P2,
    PINF,
    NormSpec,
    dini_derivative_check,
    log_norm,
    log_norm_limit,
    norm,
    semi_inner,
    semi_inner_limit,
)
from .quadrature import QuadSpec
from .semigroup import (
    BoundReport,
    Generator,
    bound_check,
    expm,
    expm_action,
    frac_action_spectral,
    frac_action_subordination,
)
from .specfun import (
    MLParams,
    gamma_fn,
    laplace_identity_residual,
    ml_deriv,
    ml_eval,
    wright_cutoff,
    wright_eval,
    wright_moment,
)
