"""Norms, the right-defined semi-inner-product and logarithmic norms.

For a norm on R^N the semi-inner-product is

    <v, w> = ||w|| * lim_{e -> 0+} (||w + e v|| - ||w||) / e

and the logarithmic norm is ``mu(A) = sup <Av, v> / ||v||**2``, equivalently
``lim_{e -> 0+} (||I + e A|| - 1) / e`` for the induced operator norm.
Both limits are available numerically (``*_limit``) and, for p in
{1, 2, inf}, in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, NonConvergenceError, UnsupportedNormError

__all__ = [
    "NormSpec",
    "P1",
    "P2",
    "PINF",
    "LimitEstimate",
    "norm",
    "semi_inner",
    "semi_inner_limit",
    "dini_derivative_check",
    "log_norm",
    "log_norm_limit",
    "operator_norm",
]


@dataclass(frozen=True)
class NormSpec:
    """An l^p norm; ``p`` is 1, 2, ``math.inf`` or any real >= 1."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1:
            raise DomainError(f"l^p norms need p >= 1, got {self.p}")
        object.__setattr__(self, "p", p)

    @classmethod
    def parse(cls, text) -> "NormSpec":
        """Accepts ``1``, ``2``, ``inf``/``PInf``/``P1``... or a float."""
        if isinstance(text, NormSpec):
            return text
        key = str(text).strip().lower()
        if key.startswith("p") and key not in ("pinf",):
            key = key[1:]
        if key in ("inf", "pinf", "infinity", "max"):
            return cls(math.inf)
        return cls(float(key))

    @property
    def closed_form(self) -> bool:
        return self.p in (1.0, 2.0, math.inf)

    @property
    def label(self) -> str:
        if self.p == math.inf:
            return "inf"
        return f"{self.p:g}"

    def __str__(self) -> str:
        return self.label


P1 = NormSpec(1)
P2 = NormSpec(2)
PINF = NormSpec(math.inf)


class LimitEstimate(NamedTuple):
    """A one-sided limit evaluated numerically, with an error bar."""

    value: float
    uncertainty: float


def norm(v, spec: NormSpec = P2) -> float:
    v = np.asarray(v, dtype=float)
    if spec.p == math.inf:
        return float(np.max(np.abs(v))) if v.size else 0.0
    if spec.p == 1.0:
        return float(np.sum(np.abs(v)))
    # scale first so squaring neither overflows nor underflows
    scale = np.max(np.abs(v)) if v.size else 0.0
    if scale == 0:
        return 0.0
    return float(scale * np.sum((np.abs(v) / scale) ** spec.p) ** (1.0 / spec.p))


# ---------------------------------------------------------------------------
# one-sided limits


_MACH = float(np.finfo(float).eps)
_EPS0 = 1e-2
_LEVELS = 21


def _right_limit(quotient: Callable[[float], float], noise: Callable[[float], float],
                 stop: float = 1e-9) -> LimitEstimate:
    """Limit of ``quotient(e)`` as e -> 0+ by Richardson extrapolation.

    Quotients are sampled at ``1e-2 * 2**-k`` and extrapolated with two
    levels assuming an expansion in integer powers of e. ``noise(e)`` bounds
    the rounding error of one quotient evaluation.
    """
    raw, lvl1, lvl2 = [], [], []
    best = None
    for k in range(_LEVELS):
        eps = _EPS0 * 2.0 ** -k
        raw.append(quotient(eps))
        if k >= 1:
            lvl1.append(2.0 * raw[k] - raw[k - 1])
        if k >= 2:
            lvl2.append((4.0 * lvl1[-1] - lvl1[-2]) / 3.0)
        if len(lvl2) >= 2:
            change = abs(lvl2[-1] - lvl2[-2])
            # the extrapolants combine quotients with weights summing to ~5
            est = LimitEstimate(lvl2[-1], change + 6.0 * noise(eps))
            if best is None or est.uncertainty < best.uncertainty:
                best = est
            if change < stop:
                return est
    return best


def semi_inner_limit(v, w, spec: NormSpec = P2) -> LimitEstimate:
    """Semi-inner-product ``<v, w>`` evaluated from its defining limit."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    nw = norm(w, spec)
    if nw == 0:
        return LimitEstimate(0.0, 0.0)

    def quotient(eps):
        return (norm(w + eps * v, spec) - nw) / eps

    scale = nw + norm(v, spec)
    lim = _right_limit(quotient, lambda eps: 4.0 * _MACH * scale * (1.0 / eps + 1.0))
    return LimitEstimate(lim.value * nw, lim.uncertainty * nw)


def _max_tolerance(w: np.ndarray) -> np.ndarray:
    top = np.max(np.abs(w))
    return np.abs(w) >= top * (1.0 - 1e-12)


def semi_inner(v, w, spec: NormSpec = P2) -> float:
    """Closed-form semi-inner-product ``<v, w>`` for p in {1, 2, inf}."""
    if not spec.closed_form:
        raise UnsupportedNormError(f"no closed form for p={spec.p}; use semi_inner_limit")
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if spec.p == 2.0:
        return float(np.dot(v, w))
    nw = norm(w, spec)
    if nw == 0:
        return 0.0
    if spec.p == 1.0:
        slope = np.where(w != 0, np.sign(w) * v, np.abs(v))
        return nw * float(np.sum(slope))
    attained = _max_tolerance(w)
    return nw * float(np.max(np.sign(w[attained]) * v[attained]))


def dini_derivative_check(v: Callable[[float], np.ndarray], dv: Callable[[float], np.ndarray],
                          t: float, spec: NormSpec = P2, h: float = 1e-7) -> float:
    """Residual between the right Dini derivative of ``||v(t)||`` and ``<v'(t), v(t)> / ||v(t)||``.

    The derivative is estimated by a forward difference with step ``h``
    (``h / 2`` Richardson-combined, so the error is O(h**2) on smooth pieces).
    """
    vt = np.asarray(v(t), dtype=float)
    nv = norm(vt, spec)
    if nv == 0:
        raise DomainError("Dini derivative identity is singular where v(t) = 0")
    d1 = (norm(v(t + h), spec) - nv) / h
    d2 = (norm(v(t + h / 2), spec) - nv) / (h / 2)
    forward = 2.0 * d2 - d1
    pairing = semi_inner(dv(t), vt, spec) if spec.closed_form else semi_inner_limit(dv(t), vt, spec).value
    return abs(forward - pairing / nv)


# ---------------------------------------------------------------------------
# logarithmic norms


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def log_norm(a, spec: NormSpec = P2) -> float:
    """Closed-form logarithmic norm for p in {1, 2, inf}."""
    a = _as_square(a)
    if not spec.closed_form:
        raise UnsupportedNormError(f"no closed form for p={spec.p}")
    if spec.p == 2.0:
        try:
            return float(np.linalg.eigvalsh(0.5 * (a + a.T))[-1])
        except np.linalg.LinAlgError as exc:
            raise NonConvergenceError(f"symmetric eigensolver failed: {exc}") from exc
    diag = np.diag(a)
    off = np.abs(a) - np.diag(np.abs(diag))
    if spec.p == 1.0:
        return float(np.max(diag + off.sum(axis=0)))
    return float(np.max(diag + off.sum(axis=1)))


def _top_eigenvalue(sym: np.ndarray, rtol: float = 1e-12, max_iter: int = 10000) -> float:
    """Largest eigenvalue of a symmetric matrix by shifted power iteration.

    Stops when the residual ``||Mx - lam x||`` is below ``sqrt(rtol) * lam``;
    for symmetric M the Rayleigh quotient error is then O(rtol * lam / gap).
    """
    n = sym.shape[0]
    shift = float(np.linalg.norm(sym, ord="fro"))
    if shift == 0:
        return 0.0
    m = sym + shift * np.eye(n)
    x = np.ones(n) + 1e-3 * np.arange(n)
    x /= np.linalg.norm(x)
    for _ in range(max_iter):
        y = m @ x
        lam = float(x @ y)
        if np.linalg.norm(y - lam * x) <= math.sqrt(rtol) * lam:
            return lam - shift
        x = y / np.linalg.norm(y)
    raise NonConvergenceError("power iteration did not converge")


def operator_norm(a, spec: NormSpec = P2) -> float:
    """Induced matrix norm for p in {1, 2, inf}; p = 2 by power iteration on A^T A."""
    a = _as_square(a)
    if spec.p == 1.0:
        return float(np.max(np.abs(a).sum(axis=0)))
    if spec.p == math.inf:
        return float(np.max(np.abs(a).sum(axis=1)))
    if spec.p == 2.0:
        return math.sqrt(max(_top_eigenvalue(a.T @ a), 0.0))
    raise UnsupportedNormError(f"induced norm for p={spec.p} is not implemented")


def log_norm_limit(a, spec: NormSpec = P2) -> LimitEstimate:
    """Logarithmic norm from ``lim (||I + e A|| - 1) / e``.

    For p = 2 the quotient is rewritten without cancellation:
    ``||I + eA||**2 = 1 + e * nu(e)`` with
    ``nu(e) = lambda_max(A + A^T + e A^T A)``, so the quotient equals
    ``nu / (1 + sqrt(1 + e nu))``.
    """
    a = _as_square(a)
    n = a.shape[0]
    if not spec.closed_form:
        raise UnsupportedNormError(f"induced norm for p={spec.p} is not implemented")
    if spec.p == 2.0:
        sym = a + a.T
        gram = a.T @ a

        def quotient(eps):
            nu = _top_eigenvalue(sym + eps * gram)
            return nu / (1.0 + math.sqrt(max(1.0 + eps * nu, 0.0)))

        # power-iteration tolerance on a matrix shifted by its Frobenius norm
        size = np.linalg.norm(sym, ord="fro") + np.linalg.norm(gram, ord="fro")
        return _right_limit(quotient, lambda eps: 4e-12 * size + 4.0 * _MACH)
    eye = np.eye(n)

    def quotient(eps):
        return (operator_norm(eye + eps * a, spec) - 1.0) / eps

    return _right_limit(quotient, lambda eps: 4.0 * _MACH * (1.0 + operator_norm(a, spec)) / eps)
