"""Seeded random sweeps of the fractional growth bound.

Every case draws from its own ``numpy.random.Generator(PCG64(SeedSequence([seed, case])))``
stream, so a case's matrix, vector and parameters depend only on the seed
and the case index, never on scheduling. PCG64 is numpy's 128-bit-state
permuted congruential generator (PCG XSL RR 128/64).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import FracsgError
from .fracode import laplacian_1d
from .normcore import P1, P2, PINF, NormSpec
from .quadrature import QuadSpec
from .semigroup import BoundReport, Generator, bound_check

__all__ = ["ENSEMBLES", "SweepConfig", "SweepResult", "case_inputs", "run_sweep", "worker_count"]

ENSEMBLES = ("GeneralRandom", "SymmetricNegDef", "Tridiagonal", "Mixed")


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 42
    cases: int = 1000
    dim_max: int = 8
    alphas: tuple = (0.3, 0.5, 0.7, 0.9, 1.0)
    betas: tuple = (0.5, 1.0)
    times: tuple = (0.1, 1.0, 10.0)
    norms: tuple = (P1, P2, PINF)
    ensemble: str = "Mixed"
    method: str = "auto"
    tol: float = 1e-8
    rtol: float = 1e-8
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.cases < 1:
            raise ValueError("cases must be >= 1")
        if self.dim_max < 1:
            raise ValueError("dim_max must be >= 1")
        if not self.alphas or any(not 0 < a <= 1 for a in self.alphas):
            raise ValueError("alphas must be non-empty and lie in (0, 1]")
        if not self.betas or any(not 0 < b <= 1 for b in self.betas):
            raise ValueError("betas must be non-empty and lie in (0, 1]")
        if not self.times or any(not t >= 0 for t in self.times):
            raise ValueError("times must be non-empty and nonnegative")
        if not self.norms:
            raise ValueError("norms must be non-empty")
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"ensemble must be one of {ENSEMBLES}")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        object.__setattr__(self, "norms", tuple(NormSpec.parse(p) for p in self.norms))

    def echo(self) -> dict:
        """Plain-data view for report metadata."""
        out = asdict(self)
        out["norms"] = [p.label for p in self.norms]
        for key in ("alphas", "betas", "times"):
            out[key] = list(out[key])
        return out


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rows: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(1 for r in self.rows if r.status == "ok" and not r.holds)

    @property
    def errors(self) -> int:
        return sum(1 for r in self.rows if r.status != "ok")

    @property
    def max_rel_excess(self) -> float:
        vals = [r.rel_excess for r in self.rows if r.status == "ok"]
        return max(vals) if vals else math.nan

    def summary(self) -> str:
        return (f"sweep: cases={len(self.rows)} violations={self.violations} "
                f"max_rel_excess={self.max_rel_excess:.6e}")


def _matrix(kind: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if kind == "GeneralRandom":
        return rng.uniform(-1.0, 1.0, (n, n))
    if kind == "SymmetricNegDef":
        b = rng.uniform(-1.0, 1.0, (n, n))
        return -(b.T @ b + 0.1 * np.eye(n))
    # second differences with unit spacing, i.e. tridiag(1, -2, 1)
    return laplacian_1d(n).matrix / (n + 1) ** 2


def case_inputs(config: SweepConfig, case: int):
    """Matrix, vector and parameters of one case; depends only on (seed, case)."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([config.seed, case])))
    kind = config.ensemble
    if kind == "Mixed":
        kind = ENSEMBLES[case % 3]
    low = 2 if kind == "Tridiagonal" else 1
    n = int(rng.integers(low, max(low, config.dim_max) + 1))
    a = _matrix(kind, n, rng)
    x = rng.uniform(-1.0, 1.0, n)
    alpha = float(config.alphas[rng.integers(len(config.alphas))])
    beta = float(config.betas[rng.integers(len(config.betas))])
    t = float(config.times[rng.integers(len(config.times))])
    spec = config.norms[rng.integers(len(config.norms))]
    return kind, a, x, alpha, beta, t, spec


def _run_case(config: SweepConfig, case: int) -> BoundReport:
    _, a, x, alpha, beta, t, spec = case_inputs(config, case)
    quad = QuadSpec(tol=config.tol)
    try:
        return bound_check(Generator(a), alpha, beta, t, x, spec, method=config.method,
                           quad=quad, rtol=config.rtol)
    except (FracsgError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return BoundReport.failed(alpha, beta, t, spec, f"error:{type(exc).__name__}", config.rtol)


def worker_count() -> int:
    """Threads for a sweep: ``FRACSG_THREADS`` if set, else up to 4."""
    env = os.environ.get("FRACSG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, min(4, os.cpu_count() or 1))


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    """Run every case; rows come back in case order whatever the thread count."""
    workers = workers or worker_count()
    ids = range(config.cases)
    if workers == 1:
        rows = [_run_case(config, i) for i in ids]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda i: _run_case(config, i), ids))
    return SweepResult(config, rows)
