"""Gamma, Mittag-Leffler and Wright functions for real parameters.

The Mittag-Leffler function

    E_{a,b}(z) = sum_k z**k / Gamma(b + a*k)

is summed directly (compensated) near the origin and otherwise recovered by
inverting its Laplace transform ``s**(a-b) / (s**a - z)`` on an optimal
parabolic contour, adding the residues of the poles it leaves on its right.

The Wright function of negative first parameter

    W_{a,b}(z) = sum_k (-z)**k / (k! * Gamma(b - a*k)),    0 < a < 1,

is summed directly while its terms stay small. Past that point the terms
grow as exp(c * z**(1/(1-a))) before cancelling down to a tiny value, so the
series is replaced by its Hankel integral taken along the steepest-descent
path through the saddle point, where the exponent is real.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, NonConvergenceError, PoleError, QuadratureError
from .quadrature import QuadSpec, composite_gl, integrate_doubling

__all__ = [
    "MLParams",
    "gamma_fn",
    "rgamma",
    "ml_eval",
    "ml_deriv",
    "wright_eval",
    "wright_cutoff",
    "wright_moment",
    "laplace_identity_residual",
]

_LOG_MACHINE_EPS = math.log(np.finfo(float).eps)
_SERIES_RADIUS = 5.0
_MAX_CANCELLATION = 1e5
_KUMMER_CANCELLATION = 2e4
WRIGHT_FLOOR = 1e-18
# pi - th reaches (pi/2) e**-44 ~ 1e-19
_SADDLE_UMAX = 44.0
# above this alpha the series and the angular saddle form both degrade near z = 1
_NEAR_ONE = 0.997


@dataclass(frozen=True)
class MLParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive, got {self.beta}")


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma_fn(x: float) -> float:
    """Gamma function on the real line.

    Raises :class:`PoleError` at 0, -1, -2, ... and ``OverflowError`` once
    the result leaves the double range (x > 171.62...).
    """
    x = float(x)
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError:
        raise OverflowError(f"Gamma({x}) overflows") from None


def rgamma(x: float) -> float:
    """Reciprocal Gamma, extended by zero at the poles."""
    x = float(x)
    if _is_pole(x) or (x < 0 and abs(x - round(x)) < 1e-13 * max(1.0, abs(x))):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    if x < -170.0:
        # reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        s = math.sin(math.pi * (x - 2.0 * math.floor(x / 2.0)))
        return math.copysign(math.exp(math.lgamma(1.0 - x) + math.log(abs(s)) - math.log(math.pi)), s)
    return 1.0 / math.gamma(x)


# --------------------------------------------------------------------------
# Mittag-Leffler


def _neumaier_add(total: float, comp: float, value: float) -> tuple[float, float]:
    t = total + value
    if abs(total) >= abs(value):
        comp += (total - t) + value
    else:
        comp += (value - t) + total
    return t, comp


def _ml_series(alpha: float, beta: float, z: complex, max_terms: int = 3000):
    """Compensated power series. Returns ``(value, sum_of_abs_terms)`` or ``None``."""
    re = im = cre = cim = 0.0
    absum = 0.0
    logz = cmath.log(z)
    zk = 1.0 + 0.0j
    small = 0
    prev_mag = math.inf
    for k in range(max_terms):
        arg = beta + alpha * k
        if arg < 170.0 and abs(zk) < 1e300:
            term = zk / math.gamma(arg)
            zk *= z
        else:
            term = cmath.exp(k * logz - math.lgamma(arg))
        re, cre = _neumaier_add(re, cre, term.real)
        im, cim = _neumaier_add(im, cim, term.imag)
        mag = abs(term)
        absum += mag
        total = abs(complex(re + cre, im + cim))
        if mag <= 1e-17 * max(total, 1e-300) and mag <= prev_mag:
            small += 1
            if small >= 2:
                return complex(re + cre, im + cim), absum
        else:
            small = 0
        prev_mag = mag
    return None


def _ml_kummer(beta: float, z: complex, max_terms: int = 3000):
    """``E_{1,beta}(z) = exp(z) 1F1(beta-1; beta; -z) / Gamma(beta)`` (Kummer's transform).

    The 1F1 series has no cancellation on the positive real axis of ``-z``;
    returns ``(value, sum_of_abs_terms / |sum|)`` or ``None``.
    """
    w = -z
    a = beta - 1.0
    term = 1.0 + 0.0j
    re, im, cre, cim = 1.0, 0.0, 0.0, 0.0
    absum = 1.0
    for k in range(max_terms):
        # (a)_{k+1} / (beta)_{k+1} = (a)_k / (beta)_k * (a + k) / (beta + k)
        term *= (a + k) / (beta + k) * w / (k + 1)
        re, cre = _neumaier_add(re, cre, term.real)
        im, cim = _neumaier_add(im, cim, term.imag)
        mag = abs(term)
        absum += mag
        total = complex(re + cre, im + cim)
        if term == 0 or (k > abs(w) and mag <= 1e-17 * abs(total)):
            if total == 0:
                return cmath.exp(z) * rgamma(beta) * total, 1.0
            return cmath.exp(z) * rgamma(beta) * total, absum / abs(total)
    return None


def _optimal_param_rb(t, phi_j, phi_j1, pj, qj, log_epsilon):
    """Parabola parameters for a region bounded by two singularities."""
    fac = 1.01
    f_max = math.exp(log_epsilon - _LOG_MACHINE_EPS)
    sq_phi_j = math.sqrt(phi_j)
    threshold = 2.0 * math.sqrt((log_epsilon - _LOG_MACHINE_EPS) / t)
    sq_phi_j1 = min(math.sqrt(phi_j1), threshold - sq_phi_j)

    if pj < 1e-14 and qj < 1e-14:
        sq_bar_j, sq_bar_j1, f_bar = sq_phi_j, sq_phi_j1, 1.0
    elif pj < 1e-14:
        sq_bar_j = sq_phi_j
        f_min = fac * (sq_phi_j / (sq_phi_j1 - sq_phi_j)) ** qj if sq_phi_j > 0 else fac
        if f_min >= f_max:
            return 0.0, 0.0, math.inf
        f_bar = f_min + f_min / f_max * (f_max - f_min)
        fq = f_bar ** (-1.0 / qj)
        sq_bar_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq)
    elif qj < 1e-14:
        sq_bar_j1 = sq_phi_j1
        f_min = fac * (sq_phi_j1 / (sq_phi_j1 - sq_phi_j)) ** pj
        if f_min >= f_max:
            return 0.0, 0.0, math.inf
        f_bar = f_min + f_min / f_max * (f_max - f_min)
        fp = f_bar ** (-1.0 / pj)
        sq_bar_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp)
    else:
        f_min = fac * (sq_phi_j + sq_phi_j1) / (sq_phi_j1 - sq_phi_j) ** max(pj, qj)
        if f_min >= f_max:
            return 0.0, 0.0, math.inf
        f_min = max(f_min, 1.5)
        f_bar = f_min + f_min / f_max * (f_max - f_min)
        fp = f_bar ** (-1.0 / pj)
        fq = f_bar ** (-1.0 / qj)
        w = -phi_j1 * t / log_epsilon
        den = 2.0 + w - (1.0 + w) * fp + fq
        sq_bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den
        sq_bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den

    log_epsilon = log_epsilon - math.log(f_bar)
    w = -sq_bar_j1 ** 2 * t / log_epsilon
    mu = (((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w)) ** 2
    h = (-2.0 * math.pi / log_epsilon * (sq_bar_j1 - sq_bar_j)
         / ((1.0 + w) * sq_bar_j + sq_bar_j1))
    if not (mu > 0 and h > 0):
        return 0.0, 0.0, math.inf
    n = math.ceil(math.sqrt(1.0 - log_epsilon / t / mu) / h)
    return mu, h, n


def _optimal_param_ru(t, phi_j, pj, log_epsilon):
    """Parabola parameters for the unbounded region right of every singularity."""
    sq_phi_j = math.sqrt(phi_j)
    phibar = phi_j * 1.01 if phi_j > 0 else 0.01
    sq_phibar = math.sqrt(phibar)
    f_min, f_max, f_tar = 1.0, 10.0, 5.0
    for _ in range(200):
        phi_t = phibar * t
        log_eps_phi_t = log_epsilon / phi_t
        n = math.ceil(phi_t / math.pi * (1.0 - 1.5 * log_eps_phi_t + math.sqrt(1.0 - 2.0 * log_eps_phi_t)))
        a = math.pi * n / phi_t
        sq_mu = sq_phibar * abs(4.0 - a) / abs(7.0 - math.sqrt(1.0 + 12.0 * a))
        fbar = ((sq_phibar - sq_phi_j) / sq_mu) ** (-pj)
        if pj < 1e-14 or f_min < fbar < f_max:
            break
        sq_phibar = f_tar ** (-1.0 / pj) * sq_mu + sq_phi_j
        phibar = sq_phibar ** 2
    mu = sq_mu ** 2
    h = (-3.0 * a - 2.0 + 2.0 * math.sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n

    threshold = (log_epsilon - _LOG_MACHINE_EPS) / t
    if mu > threshold:
        q = 0.0 if abs(pj) < 1e-14 else f_tar ** (-1.0 / pj) * math.sqrt(mu)
        phibar = (q + math.sqrt(phi_j)) ** 2
        if phibar < threshold:
            w = math.sqrt(_LOG_MACHINE_EPS / (_LOG_MACHINE_EPS - log_epsilon))
            u = math.sqrt(-phibar * t / _LOG_MACHINE_EPS)
            mu = threshold
            n = math.ceil(w * log_epsilon / 2.0 / math.pi / (u * w - 1.0))
            h = w / n
        else:
            return 0.0, 0.0, math.inf
    return mu, h, n


def _ml_contour(alpha: float, beta: float, z: complex, tol: float = 1e-15,
                max_nodes: int = 400, accept_tol: float = 1e-10) -> complex:
    """Laplace-transform inversion of ``t**(b-1) E_{a,b}(z t**a)`` at t = 1."""
    t = 1.0
    log_epsilon = math.log(tol)
    theta = cmath.phase(z)
    kmin = math.ceil(-alpha / 2.0 - theta / (2.0 * math.pi))
    kmax = math.floor(alpha / 2.0 - theta / (2.0 * math.pi))
    ks = np.arange(kmin, kmax + 1)
    poles = abs(z) ** (1.0 / alpha) * np.exp(1j * (theta + 2.0 * np.pi * ks) / alpha)
    phi = (poles.real + np.abs(poles)) / 2.0
    order = np.argsort(phi, kind="stable")
    poles, phi = poles[order], phi[order]
    keep = phi > 1e-15
    poles = np.concatenate(([0.0 + 0.0j], poles[keep]))
    phi = np.concatenate(([0.0], phi[keep], [math.inf]))
    n_sing = len(poles)
    p = [max(0.0, -2.0 * (alpha - beta + 1.0))] + [1.0] * (n_sing - 1)
    q = [1.0] * (n_sing - 1) + [math.inf]

    while True:
        limit = (log_epsilon - _LOG_MACHINE_EPS) / t
        regions = [j for j in range(n_sing) if phi[j] < limit and phi[j] < phi[j + 1]]
        best = (math.inf, 0.0, 0.0, -1)
        for j in regions:
            if j < n_sing - 1:
                mu, h, n = _optimal_param_rb(t, phi[j], phi[j + 1], p[j], q[j], log_epsilon)
            else:
                mu, h, n = _optimal_param_ru(t, phi[j], p[j], log_epsilon)
            if n < best[0]:
                best = (n, mu, h, j)
        if best[0] <= max_nodes:
            break
        log_epsilon += math.log(10.0)
        if log_epsilon > math.log(accept_tol) + 1e-12:
            raise NonConvergenceError(
                f"Mittag-Leffler contour inversion failed for alpha={alpha}, beta={beta}, z={z}"
            )

    n, mu, h, region = best
    u = h * np.arange(-n, n + 1)
    s = mu * (1j * u + 1.0) ** 2
    ds = -2.0 * mu * u + 2.0j * mu
    integrand = np.exp(s) * s ** (alpha - beta) / (s ** alpha - z) * ds
    value = h * np.sum(integrand) / (2.0j * np.pi)
    right = poles[region + 1:]
    if right.size:
        value += np.sum(right ** (1.0 - beta) * np.exp(right)) / alpha
    return complex(value)


def ml_eval(params: MLParams, z: complex) -> complex:
    """Two-parameter Mittag-Leffler function ``E_{alpha,beta}(z)``.

    Real ``z`` yields a real-valued complex (zero imaginary part).
    """
    alpha, beta = params.alpha, params.beta
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")
    real_input = z.imag == 0.0
    if z == 0:
        return complex(rgamma(beta))
    value = None
    if abs(z) <= _SERIES_RADIUS:
        res = _ml_series(alpha, beta, z)
        if res is not None:
            total, absum = res
            if absum <= _MAX_CANCELLATION * abs(total):
                value = total
    if value is None and alpha == 1.0 and z.real < 0:
        # exponentially small results: the contour only resolves them absolutely
        res = _ml_kummer(beta, z)
        if res is not None and res[1] <= _KUMMER_CANCELLATION:
            value = res[0]
    if value is None:
        with np.errstate(over="ignore", invalid="ignore"):
            value = _ml_contour(alpha, beta, z)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError(f"E_{{{alpha},{beta}}}({z}) is not representable")
    if real_input:
        value = complex(value.real, 0.0)
    return value


def ml_deriv(alpha: float, lam: float, z: float) -> float:
    """``d/dz E_{alpha,1}(lam * z**alpha)`` via ``lam z^(alpha-1) E_{alpha,alpha}(lam z^alpha)``."""
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not z > 0:
        raise DomainError(f"z must be positive, got {z}")
    if lam == 0:
        return 0.0
    za = z ** alpha
    return lam * z ** (alpha - 1.0) * ml_eval(MLParams(alpha, alpha), lam * za).real


# --------------------------------------------------------------------------
# Wright


def _check_wright_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def _series_limit(alpha: float) -> float:
    """Largest z for which the largest series term stays below about e**3."""
    kstar = min(3.0 / (1.0 - alpha), 600.0)
    return kstar ** (1.0 - alpha) / alpha ** alpha


@lru_cache(maxsize=256)
def _wright_coefficients(alpha: float, beta: float, count: int) -> np.ndarray:
    """``1 / (k! Gamma(beta - alpha k))`` with zeros at the Gamma poles."""
    coef = np.empty(count)
    for k in range(count):
        x = beta - alpha * k
        if x > 0:
            coef[k] = math.exp(-math.lgamma(k + 1.0) - math.lgamma(x))
            continue
        # reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        frac = x - 2.0 * math.floor(x / 2.0)
        s = math.sin(math.pi * frac)
        if abs(x - round(x)) < 1e-13 * max(1.0, abs(x)) or s == 0.0:
            coef[k] = 0.0
            continue
        log_mag = math.lgamma(1.0 - x) - math.lgamma(k + 1.0) + math.log(abs(s) / math.pi)
        coef[k] = math.copysign(math.exp(log_mag), s)
    return coef


def _wright_series(alpha: float, beta: float, z: np.ndarray, max_terms: int = 10000) -> np.ndarray:
    """Direct summation, truncated per entry after two consecutive terms
    below 1e-16 of the partial sum (and at least 20 terms)."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    todo = np.arange(z.size)
    total = np.zeros(z.size)
    zk = np.ones(z.size)
    prev_small = np.zeros(z.size, dtype=bool)
    block = 64
    k = 0
    while todo.size and k < max_terms:
        coef = _wright_coefficients(alpha, beta, k + block)[k:]
        steps = np.empty((todo.size, block))
        steps[:, 0] = 1.0
        steps[:, 1:] = -z[todo, None]
        powers = zk[:, None] * np.cumprod(steps, axis=1)
        terms = coef * powers
        partial = total[:, None] + np.cumsum(terms, axis=1)
        small = np.abs(terms) <= 1e-16 * np.abs(partial)
        pair = small & np.concatenate([prev_small[:, None], small[:, :-1]], axis=1)
        pair[:, : max(0, 19 - k)] = False
        hit = pair.any(axis=1)
        first = pair.argmax(axis=1)
        out[todo[hit]] = partial[hit, first[hit]]
        keep = ~hit
        todo = todo[keep]
        total = partial[keep, -1]
        zk = powers[keep, -1] * -z[todo]
        prev_small = small[keep, -1]
        k += block
    if todo.size:
        raise NonConvergenceError(f"Wright series did not converge in {max_terms} terms")
    return out


def _wright_saddle(alpha: float, beta: float, z: np.ndarray, nodes: int = 24) -> np.ndarray:
    """Hankel integral on the path where ``s - z s**alpha`` is real.

    Parametrized by the polar angle ``th`` in (0, pi):
    ``rho(th) = (z sin(alpha th) / sin th) ** (1 / (1 - alpha))``.
    The path runs off to infinity as ``th -> pi`` and, for small z, the
    integrand concentrates in an ever thinner layer there, so the upper half
    is integrated in ``u = -log((pi - th) / (pi / 2))``.
    """
    logz = np.log(z)[:, None]

    def integrand(th):
        th = th[None, :]
        s_a = np.sin(alpha * th)
        s_1 = np.sin(th)
        log_rho = (logz + np.log(s_a) - np.log(s_1)) / (1.0 - alpha)
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            rho = np.exp(log_rho)
            expo = -rho * np.sin((1.0 - alpha) * th) / s_a + (1.0 - beta) * log_rho
            dlog = (alpha / np.tan(alpha * th) - 1.0 / np.tan(th)) / (1.0 - alpha)
            phase = (1.0 - beta) * th
            val = np.exp(expo) * (dlog * np.sin(phase) + np.cos(phase))
        return np.where(np.isfinite(val), val, 0.0).T

    def mapped(u):
        gap = 0.5 * np.pi * np.exp(-u)
        return integrand(np.pi - gap) * gap[:, None]

    head = composite_gl(integrand, 0.0, 0.5 * np.pi, edges=np.pi * np.array([0.0, 0.125, 0.25, 0.5]),
                        nodes=nodes)
    tail = composite_gl(mapped, 0.0, _SADDLE_UMAX, edges=np.arange(0.0, _SADDLE_UMAX + 1.0, 2.0),
                        nodes=nodes)
    return (head + tail) / np.pi


def _path_shape(alpha: float, th: np.ndarray):
    """``D = log(sin(alpha th) / (alpha sin th))`` and ``D' / (1 - alpha)`` on the path.

    Both are written without the cancellation that the direct forms suffer
    when alpha is close to 1.
    """
    c = 1.0 - alpha
    s_1 = np.sin(th)
    s_a = np.sin(alpha * th)
    # sin(alpha th) - alpha sin th, as a sum that stays accurate for small 1 - alpha
    gap = -2.0 * np.cos(0.5 * (1.0 + alpha) * th) * np.sin(0.5 * c * th) + c * s_1
    d = np.log1p(gap / (alpha * s_1))
    # (alpha cot(alpha th) - cot th) / (1 - alpha)
    dd = (np.sin(c * th) / c - np.cos(alpha * th) * s_1) / (s_a * s_1)
    return d, dd


def _tail_shape(alpha: float, tau: np.ndarray):
    """``_path_shape`` at ``th = pi - tau``, written in ``tau`` so that tiny
    angles are not lost to rounding in ``pi - tau``."""
    c = 1.0 - alpha
    s_1 = np.sin(tau)
    s_a = np.sin(c * np.pi + alpha * tau)
    gap = 2.0 * np.cos(0.5 * c * np.pi + 0.5 * (1.0 + alpha) * tau) * np.sin(0.5 * c * (np.pi - tau)) + c * s_1
    d = np.log1p(gap / (alpha * s_1))
    dd = (np.sin(c * (np.pi - tau)) / c + np.cos(c * np.pi + alpha * tau) * s_1) / (s_a * s_1)
    return d, dd


def _path_angle(alpha: float, target: np.ndarray) -> np.ndarray:
    """Solve ``D(pi - tau) = target`` for ``tau`` in (0, pi/2] by Newton in ``log tau``."""
    c = 1.0 - alpha
    # D ~ log(1 + c pi / (alpha tau)) for small tau
    tau = np.minimum(c * np.pi / (alpha * np.expm1(target)), 0.5 * np.pi)
    log_tau = np.log(tau)
    for _ in range(60):
        d, dd = _tail_shape(alpha, np.exp(log_tau))
        # dD/dlog(tau) = -tau D'(th) = -tau c dd
        step = (d - target) / (np.exp(log_tau) * dd * c)
        log_tau = np.minimum(log_tau + step, math.log(0.5 * np.pi))
        if np.all(np.abs(step) < 1e-12):
            break
    else:
        raise NonConvergenceError("Hankel path inversion did not converge")
    return np.exp(log_tau)


def _wright_near_one(alpha: float, beta: float, z: float, nodes: int = 24) -> float:
    """Hankel integral on the same path as ``_wright_saddle``, for alpha close to 1.

    On the path ``y = log rho = s + D(th) / (1 - alpha)`` with
    ``s = log(alpha z) / (1 - alpha)``. When z is near or below 1 the
    integrand jumps across a layer of width about ``1 / |s|`` in any
    angular variable, yet varies on unit scale in ``y``; the upper half of
    the path is therefore integrated in ``y`` on a mesh graded towards both
    ends.
    """
    c = 1.0 - alpha
    s = (math.log(z) + math.log(alpha)) / c

    def weight(y, th, tau):
        # exp(-rho sin(c th) / sin(alpha th)) rho**(1 - beta), with rho = e**y
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            decay = np.exp(y) * np.sin(c * th) / np.sin(c * np.pi + alpha * tau)
            out = np.exp(-decay + (1.0 - beta) * y)
        return np.where(np.isfinite(out), out, 0.0)

    def head(th):
        d, dd = _path_shape(alpha, th)
        y = s + d / c
        phase = (1.0 - beta) * th
        return weight(y, th, np.pi - th) * (dd * np.sin(phase) + np.cos(phase))

    def tail(y):
        tau = _path_angle(alpha, c * (y - s))
        th = np.pi - tau
        _, dd = _tail_shape(alpha, tau)
        phase = (1.0 - beta) * th
        # the Jacobian dth/dy = 1 / dd
        return weight(y, th, tau) * (np.sin(phase) + np.cos(phase) / dd)

    total = composite_gl(head, 0.0, 0.5 * np.pi, edges=np.pi * np.array([0.0, 0.125, 0.25, 0.5]),
                         nodes=nodes)

    y_lo = s + _path_shape(alpha, np.array([0.5 * np.pi]))[0][0] / c
    # past y_hi the factor exp(-rho G) is below e**-60 since G >= G(pi/2) on the tail
    g_lo = math.sin(0.5 * c * np.pi) / math.sin(0.5 * alpha * np.pi)
    y_hi = math.log(60.0 / g_lo)
    y_hi = math.log((60.0 + max(1.0 - beta, 0.0) * max(y_hi, 0.0)) / g_lo)
    if y_hi > y_lo:
        edges = [y_lo]
        y = y_lo
        while y < y_hi:
            # the angle changes on the scale y - s; the decay needs unit panels past y = -10
            w = 1.0 if y >= -10.0 else max(1.0, min(0.5 * (y - s), -10.0 - y))
            y = min(y + w, y_hi)
            edges.append(y)
        total += composite_gl(tail, y_lo, y_hi, edges=np.array(edges), nodes=nodes)
    return float(total / np.pi)


def _near_one_mask(alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    if alpha <= _NEAR_ONE:
        return np.zeros(z.shape, dtype=bool)
    mask = z >= 0.98
    if beta > 1.0:
        # rho**(1 - beta) grows like exp((beta - 1) |s|) near the start of the path
        with np.errstate(divide="ignore"):
            s = (np.log(z) + math.log(alpha)) / (1.0 - alpha)
        mask &= (beta - 1.0) * np.maximum(-s, 0.0) <= 2.0
    return mask


def wright_eval(alpha: float, beta: float, z):
    """Wright function ``W_{-alpha,beta}(z)`` for ``0 < alpha < 1`` and ``z >= 0``.

    Accepts a scalar or an array of arguments.
    """
    _check_wright_alpha(alpha)
    arr = np.asarray(z, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("Wright function is evaluated for finite z >= 0 only")
    flat = arr.ravel()
    out = np.empty_like(flat)
    one = _near_one_mask(alpha, float(beta), flat)
    for i in np.flatnonzero(one):
        out[i] = _wright_near_one(alpha, float(beta), float(flat[i]))
    near = (flat <= _series_limit(alpha)) & ~one
    if np.any(near):
        out[near] = _wright_series(alpha, float(beta), flat[near])
    far = ~near & ~one
    if np.any(far):
        out[far] = _wright_saddle(alpha, float(beta), flat[far])
    out = out.reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=1024)
def wright_cutoff(alpha: float, beta: float, floor: float = WRIGHT_FLOOR) -> float:
    """Point past which ``|W_{-alpha,beta}|`` stays below ``floor``.

    Found by doubling from z = 1 until the value drops below ``floor``,
    then bisecting between the last two probes.
    """
    _check_wright_alpha(alpha)
    lo = 1.0
    while abs(wright_eval(alpha, beta, lo)) < floor and lo > 1e-3:
        lo /= 2.0
    hi = lo
    while abs(wright_eval(alpha, beta, hi)) >= floor:
        lo, hi = hi, 2.0 * hi
        if hi > 1e6:
            raise NonConvergenceError("Wright cutoff search diverged")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if abs(wright_eval(alpha, beta, mid)) >= floor:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-10 * hi:
            break
    return hi


def _tail_bound(f, z_max: float) -> float:
    # crude remainder estimate: |f(z_max)| over one decay length
    return abs(float(np.max(np.abs(f(np.array([z_max])))))) * max(z_max, 1.0)


def _widen(f, z_max: float, tol: float) -> float:
    # a weight such as z**n can keep the integrand above tol past the Wright cutoff
    for _ in range(60):
        if _tail_bound(f, z_max) <= 1e-2 * tol:
            break
        z_max *= 1.25
    return z_max


def _integrate_halfline(f, z_max: float, quad: QuadSpec):
    value, _ = integrate_doubling(
        f, 0.0, z_max, nodes=quad.nodes_per_panel, panels=quad.panels, tol=quad.tol
    )
    tail = _tail_bound(f, z_max)
    if tail > quad.tol:
        raise QuadratureError(f"truncation at z_max={z_max} leaves tail ~{tail:.2e}")
    return value


def wright_moment(alpha: float, beta: float, n: int, quad: QuadSpec | None = None) -> float:
    """``int_0^inf z**n W_{-alpha,beta}(z) dz`` by quadrature."""
    _check_wright_alpha(alpha)
    if n < 0:
        raise DomainError("moment order must be nonnegative")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    quad = quad or QuadSpec()

    def f(x):
        return x ** n * wright_eval(alpha, beta, x)

    z_max = quad.z_max or _widen(f, wright_cutoff(alpha, beta), quad.tol)
    return _integrate_halfline(f, z_max, quad)


def laplace_integral(alpha: float, beta: float, z: float, quad: QuadSpec | None = None) -> float:
    """``int_0^inf W_{-alpha,beta-alpha}(t) exp(-t z) dt`` by quadrature."""
    _check_wright_alpha(alpha)
    if z < 0:
        raise DomainError(f"z must be nonnegative, got {z}")
    quad = quad or QuadSpec()
    b = beta - alpha
    z_max = quad.z_max or wright_cutoff(alpha, b)
    return _integrate_halfline(lambda t: wright_eval(alpha, b, t) * np.exp(-t * z), z_max, quad)


def laplace_identity_residual(alpha: float, beta: float, z: float, quad: QuadSpec | None = None) -> float:
    """Gap between the Laplace transform of the Wright kernel and ``E_{alpha,beta}(-z)``."""
    lhs = laplace_integral(alpha, beta, z, quad)
    return abs(lhs - ml_eval(MLParams(alpha, beta), -z).real)
