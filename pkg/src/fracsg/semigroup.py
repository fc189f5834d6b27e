"""Classical and fractional matrix semigroups and growth-bound checks.

``T_t(A) = exp(tA)`` is computed by scaling and squaring around a degree-13
Pade approximant. The fractional family ``S_t(A) = E_{a,b}(t**a A)`` has two
independent realizations:

* spectral: apply ``E_{a,b}`` to the eigenvalues of a diagonalizable ``A``;
* subordination: average the classical semigroup against the Wright density,
  ``S_t x = int_0^inf W_{-a,b-a}(z) exp(t**a z A) x dz``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NonConvergenceError, NonDiagonalizableError, QuadratureError
from .normcore import P2, NormSpec, log_norm, norm
from .quadrature import QuadSpec, integrate_adaptive
from .specfun import MLParams, ml_eval, wright_cutoff, wright_eval

__all__ = [
    "Generator",
    "BoundReport",
    "expm",
    "expm_action",
    "frac_action",
    "frac_action_spectral",
    "frac_action_subordination",
    "bound_check",
    "holds_with",
]

_COND_LIMIT = 1e8
_RECON_TOL = 1e-10
_IMAG_TOL = 1e-9


class Generator:
    """A dense real square matrix together with its eigendecomposition.

    The decomposition is computed once, at construction. ``diagonalizable``
    is set when the eigenvector matrix has 2-norm condition below 1e8 and
    reproduces the matrix to ``1e-10 * ||A||_F``.
    """

    __slots__ = ("_matrix", "eigenvalues", "vectors", "inverse", "condition", "diagonalizable")

    def __init__(self, matrix):
        a = np.array(matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DomainError(f"generator must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("generator has non-finite entries")
        a.setflags(write=False)
        self._matrix = a
        lam, vec = np.linalg.eig(a)
        self.eigenvalues = lam
        self.vectors = vec
        self.condition = float(np.linalg.cond(vec))
        self.inverse = None
        self.diagonalizable = False
        if self.condition < _COND_LIMIT:
            inv = np.linalg.inv(vec)
            recon = (vec * lam) @ inv
            scale = max(np.linalg.norm(a, "fro"), np.finfo(float).tiny)
            if np.linalg.norm(recon - a, "fro") <= _RECON_TOL * scale:
                self.inverse = inv
                self.diagonalizable = True

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    def __repr__(self) -> str:
        return f"Generator(n={self.n}, diagonalizable={self.diagonalizable})"


def _as_generator(a) -> Generator:
    return a if isinstance(a, Generator) else Generator(a)


def _as_vector(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DomainError(f"vector of length {n} expected, got shape {x.shape}")
    return x


# ---------------------------------------------------------------------------
# matrix exponential

_THETA13 = 5.371920351148152
_PADE13 = np.array([
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
])
_MAX_SQUARINGS = 1000


def expm(a) -> np.ndarray:
    """Matrix exponential of one matrix or a stack of shape ``(..., n, n)``.

    Each matrix is scaled by ``2**-s`` with ``s`` chosen from its 1-norm so
    that the [13/13] Pade approximant is accurate to unit roundoff, then
    squared ``s`` times.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected square matrices, got shape {a.shape}")
    n = a.shape[-1]
    batch = a.reshape(-1, n, n)
    if not np.all(np.isfinite(batch)):
        raise OverflowError("matrix exponential of a non-finite matrix")
    norms = np.abs(batch).sum(axis=1).max(axis=1)
    with np.errstate(divide="ignore"):
        s = np.where(norms > _THETA13, np.ceil(np.log2(norms / _THETA13)), 0.0)
    if np.any(s > _MAX_SQUARINGS):
        raise OverflowError("argument too large for the matrix exponential")
    s = s.astype(int)
    x = batch * np.exp2(-s)[:, None, None]

    b = _PADE13
    eye = np.broadcast_to(np.eye(n), x.shape)
    x2 = x @ x
    x4 = x2 @ x2
    x6 = x2 @ x4
    u = x @ (x6 @ (b[13] * x6 + b[11] * x4 + b[9] * x2)
             + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * eye)
    v = x6 @ (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * eye
    r = np.linalg.solve(v - u, v + u)

    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(int(s.max(initial=0))):
            active = s > step
            r[active] = r[active] @ r[active]
    if not np.all(np.isfinite(r)):
        raise OverflowError("matrix exponential overflowed")
    return r.reshape(a.shape)


def expm_action(a, t: float, x) -> np.ndarray:
    """``exp(tA) x``."""
    gen = _as_generator(a)
    x = _as_vector(x, gen.n)
    if t < 0 or not math.isfinite(t):
        raise DomainError(f"t must be finite and nonnegative, got {t}")
    if t == 0:
        return x.copy()
    return expm(t * gen.matrix) @ x


# ---------------------------------------------------------------------------
# fractional semigroup


def _check_params(alpha: float, beta: float, t: float, alpha_open: bool = False) -> None:
    hi_ok = alpha < 1 if alpha_open else alpha <= 1
    if not (alpha > 0 and hi_ok):
        span = "(0, 1)" if alpha_open else "(0, 1]"
        raise DomainError(f"alpha must lie in {span}, got {alpha}")
    if not 0 < beta <= 1:
        raise DomainError(f"beta must lie in (0, 1], got {beta}")
    if t < 0 or not math.isfinite(t):
        raise DomainError(f"t must be finite and nonnegative, got {t}")


def frac_action_spectral(a, alpha: float, beta: float, t: float, x) -> np.ndarray:
    """``E_{alpha,beta}(t**alpha A) x`` through the eigendecomposition of ``A``."""
    gen = _as_generator(a)
    x = _as_vector(x, gen.n)
    _check_params(alpha, beta, t)
    if not gen.diagonalizable:
        raise NonDiagonalizableError(
            f"eigenvector condition {gen.condition:.3e} is too large for spectral calculus"
        )
    params = MLParams(alpha, beta)
    scale = t ** alpha
    # conjugate eigenvalues give conjugate values; evaluate each distinct one once
    cache = {}
    values = np.empty(gen.n, dtype=complex)
    for k, lam in enumerate(gen.eigenvalues):
        key = complex(lam)
        if key.conjugate() in cache:
            values[k] = cache[key.conjugate()].conjugate()
            continue
        if key not in cache:
            cache[key] = ml_eval(params, scale * key)
        values[k] = cache[key]
    y = gen.vectors @ (values * (gen.inverse @ x))
    size = np.linalg.norm(y.real)
    if np.linalg.norm(y.imag) > _IMAG_TOL * max(size, np.finfo(float).tiny):
        raise NonConvergenceError("spectral action left a non-negligible imaginary part")
    return y.real


def _subordination_range(alpha: float, b: float, growth: float, tol: float) -> float:
    """Truncation point where the weighted Wright kernel is below ``tol * 1e-2``."""
    z = wright_cutoff(alpha, b)
    if growth <= 0:
        return z

    def small(zz):
        # probe two nearby points so a sign change of the kernel cannot fake decay
        probe = np.array([zz, 1.1 * zz])
        with np.errstate(over="ignore"):
            w = np.abs(wright_eval(alpha, b, probe)) * np.exp(growth * probe)
        return bool(np.all(w < tol * 1e-2))

    while not small(z):
        z *= 2.0
        if z > 1e6:
            raise QuadratureError("no truncation point found for the subordination integral")
    return z


def frac_action_subordination(a, alpha: float, beta: float, t: float, x,
                              quad: QuadSpec | None = None) -> np.ndarray:
    """``E_{alpha,beta}(t**alpha A) x`` by the subordination integral.

    ``quad.tol`` is the target relative accuracy of the result.
    """
    gen = _as_generator(a)
    x = _as_vector(x, gen.n)
    _check_params(alpha, beta, t, alpha_open=True)
    quad = quad or QuadSpec()
    b = beta - alpha
    nx = float(np.linalg.norm(x))
    if nx == 0:
        return np.zeros_like(x)
    if t == 0:
        # exp(0) = I, so only the kernel mass remains
        return x * _kernel_mass(alpha, b, quad)

    tau = t ** alpha
    mu_plus = max(log_norm(gen.matrix, P2), 0.0)
    z_max = quad.z_max or _subordination_range(alpha, b, tau * mu_plus, quad.tol)
    mat = gen.matrix

    def integrand(z):
        kernel = wright_eval(alpha, b, z)
        flows = expm(tau * z[:, None, None] * mat) @ x
        return kernel[:, None] * flows

    # geometric edges resolve the fast initial decay of exp(tau z A)
    decay = tau * float(np.max(np.abs(mat).sum(axis=0)))
    edges = [0.0]
    if decay > 0:
        edge = min(1.0 / decay, z_max)
        while edge < z_max:
            edges.append(edge)
            edge *= 4.0
    edges.append(z_max)
    edges = np.unique(np.linspace(0.0, z_max, quad.panels + 1).tolist() + edges)

    value, err = integrate_adaptive(integrand, 0.0, z_max, tol=quad.tol * nx * 1e-6,
                                    nodes=quad.nodes_per_panel, initial_edges=edges,
                                    rtol=quad.tol)
    tail = float(np.linalg.norm(integrand(np.array([z_max]))[0])) * max(z_max, 1.0)
    if tail > quad.tol * max(float(np.linalg.norm(value)), nx * 1e-6):
        raise QuadratureError(f"subordination tail ~{tail:.2e} exceeds tolerance")
    return np.asarray(value, dtype=float)


def _kernel_mass(alpha: float, b: float, quad: QuadSpec) -> float:
    z_max = quad.z_max or wright_cutoff(alpha, b)
    value, _ = integrate_adaptive(lambda z: wright_eval(alpha, b, z), 0.0, z_max,
                                  tol=1e-15, nodes=quad.nodes_per_panel, rtol=quad.tol)
    return float(value)


def frac_action(a, alpha: float, beta: float, t: float, x, method: str = "auto",
                quad: QuadSpec | None = None) -> np.ndarray:
    """Fractional action by ``method`` in {"spectral", "subordination", "auto"}.

    ``auto`` uses the exponential for alpha = beta = 1, the spectral route for
    diagonalizable generators and subordination otherwise.
    """
    gen = _as_generator(a)
    if method == "spectral":
        return frac_action_spectral(gen, alpha, beta, t, x)
    if method == "subordination":
        return frac_action_subordination(gen, alpha, beta, t, x, quad)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if alpha == 1 and beta == 1:
        _check_params(alpha, beta, t)
        return expm_action(gen, t, x)
    if gen.diagonalizable:
        return frac_action_spectral(gen, alpha, beta, t, x)
    if alpha < 1:
        return frac_action_subordination(gen, alpha, beta, t, x, quad)
    raise NonDiagonalizableError("alpha = 1 with beta < 1 needs a diagonalizable generator")


# ---------------------------------------------------------------------------
# growth bounds


def holds_with(lhs: float, rhs: float, rtol: float = 1e-8) -> bool:
    """The acceptance rule ``lhs <= rhs * (1 + rtol) + 1e-12``."""
    return bool(lhs <= rhs * (1.0 + rtol) + 1e-12)


@dataclass(frozen=True)
class BoundReport:
    """One check of ``||S_t x|| <= E_{alpha,beta}(t**alpha mu) ||x||``."""

    alpha: float
    beta: float
    t: float
    norm: str
    mu: float
    lhs: float
    rhs: float
    margin: float
    holds: bool
    status: str = "ok"
    rtol: float = field(default=1e-8, compare=False)

    @property
    def rel_excess(self) -> float:
        """``(lhs - rhs) / |rhs|``; positive when the bound is exceeded."""
        if self.status != "ok":
            return math.nan
        denom = abs(self.rhs)
        if math.isinf(denom):
            return -1.0 if math.isfinite(self.lhs) else math.nan
        if denom == 0:
            return math.inf if self.lhs > 0 else 0.0
        return (self.lhs - self.rhs) / denom

    @classmethod
    def failed(cls, alpha, beta, t, spec: NormSpec, status: str, rtol: float = 1e-8) -> "BoundReport":
        nan = math.nan
        return cls(alpha, beta, t, spec.label, nan, nan, nan, nan, False, status, rtol)


def bound_check(a, alpha: float, beta: float, t: float, x, spec: NormSpec = P2,
                method: str = "auto", quad: QuadSpec | None = None,
                rtol: float = 1e-8) -> BoundReport:
    """Evaluate both sides of the fractional growth bound.

    With alpha = beta = 1 this is the classical bound
    ``||exp(tA) x|| <= exp(t mu(A)) ||x||``.
    """
    gen = _as_generator(a)
    y = frac_action(gen, alpha, beta, t, x, method=method, quad=quad)
    lhs = norm(y, spec)
    mu = log_norm(gen.matrix, spec)
    scale = 0.0 if t == 0 else t ** alpha * mu
    if alpha == 1 and beta == 1:
        growth = math.exp(scale) if scale < 709.0 else math.inf
    else:
        try:
            growth = ml_eval(MLParams(alpha, beta), scale).real
        except OverflowError:
            # only reachable for large positive arguments, where E grows without bound
            growth = math.inf
    rhs = growth * norm(x, spec)
    return BoundReport(alpha, beta, t, spec.label, mu, lhs, rhs, rhs - lhs,
                       holds_with(lhs, rhs, rtol), "ok", rtol)
