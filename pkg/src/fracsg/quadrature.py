"""Composite Gauss-Legendre quadrature on finite intervals.

Integrands are vectorized callables: given a 1-D array of abscissae of
length ``m`` they return an array of shape ``(m,)`` or ``(m, d)``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadSpec:
    """Discretization of an integral over ``[0, z_max]``.

    ``z_max`` of ``None`` lets the caller choose a truncation point from the
    decay of the integrand.
    """

    z_max: float | None = None
    panels: int = 4
    nodes_per_panel: int = 20
    tol: float = 1e-10

    def __post_init__(self):
        if self.z_max is not None and not self.z_max > 0:
            raise ValueError(f"z_max must be positive, got {self.z_max}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise ValueError("panels and nodes_per_panel must be >= 1")


@lru_cache(maxsize=None)
def gauss_legendre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n``-point rule on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel_nodes(edges: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre_rule(n)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = mid[:, None] + half[:, None] * x[None, :]
    wts = half[:, None] * w[None, :]
    return pts.ravel(), wts.ravel()


def _contract(values: np.ndarray, weights: np.ndarray):
    out = np.tensordot(weights, np.asarray(values), axes=(0, 0))
    return out.item() if out.ndim == 0 else out


def composite_gl(f, a: float, b: float, panels: int = 1, nodes: int = 20, edges=None):
    """Fixed composite rule with ``panels`` equal panels (or explicit ``edges``)."""
    if edges is None:
        edges = np.linspace(a, b, panels + 1)
    pts, wts = _panel_nodes(np.asarray(edges, dtype=float), nodes)
    return _contract(f(pts), wts)


def _diff(u, v) -> float:
    return float(np.max(np.abs(np.asarray(u) - np.asarray(v))))


def integrate_doubling(f, a: float, b: float, nodes: int = 20, panels: int = 1,
                       tol: float = 1e-10, max_panels: int = 4096):
    """Composite Gauss-Legendre with panel doubling.

    Stops once two successive estimates differ by less than ``tol``
    (absolute, max over components). Returns ``(value, error_estimate)``.
    """
    prev = composite_gl(f, a, b, panels, nodes)
    while panels < max_panels:
        panels *= 2
        cur = composite_gl(f, a, b, panels, nodes)
        err = _diff(cur, prev)
        if err < tol:
            return cur, err
        prev = cur
    raise QuadratureError(
        f"panel doubling on [{a}, {b}] did not converge with {max_panels} panels"
    )


def integrate_adaptive(f, a: float, b: float, tol: float = 1e-10, nodes: int = 20,
                       initial_edges=None, max_intervals: int = 4000, rtol: float = 0.0):
    """Globally adaptive bisection driven by a panel-vs-halves error estimate.

    Every panel is integrated with the ``nodes``-point rule on itself and on
    its two halves; the halves' sum is kept, the difference is the error
    estimate, and the panel with the largest estimate is split next.
    Refinement stops once the summed estimate is below
    ``max(tol, rtol * |total|)``.
    """
    if initial_edges is None:
        initial_edges = [a, b]
    edges = np.asarray(initial_edges, dtype=float)

    def evaluate(lo, hi):
        # one integrand call covers the panel rule and its two halves
        p1, w1 = _panel_nodes(np.array([lo, hi]), nodes)
        p2, w2 = _panel_nodes(np.array([lo, 0.5 * (lo + hi), hi]), nodes)
        values = np.asarray(f(np.concatenate([p1, p2])))
        whole = _contract(values[:nodes], w1)
        halves = _contract(values[nodes:], w2)
        return halves, _diff(whole, halves)

    heap = []
    for counter, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        val, err = evaluate(lo, hi)
        heapq.heappush(heap, (-err, counter, lo, hi, val))
    counter = len(heap)

    while True:
        total_err = sum(-item[0] for item in heap)
        goal = tol
        if rtol > 0:
            total = sum(item[4] for item in heap)
            goal = max(tol, rtol * float(np.max(np.abs(total))))
        if total_err < goal:
            break
        if len(heap) >= max_intervals:
            raise QuadratureError(
                f"adaptive quadrature on [{a}, {b}] stalled at error {total_err:.3e}"
            )
        _, _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for sub in ((lo, mid), (mid, hi)):
            val, err = evaluate(*sub)
            counter += 1
            heapq.heappush(heap, (-err, counter, sub[0], sub[1], val))

    total = sum(item[4] for item in heap)
    return total, total_err
