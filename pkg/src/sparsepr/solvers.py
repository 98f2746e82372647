"""Stochastic alternating minimization (SAM) and its deterministic case.

Each outer iteration keeps a Bernoulli(beta) batch of measurement rows,
re-estimates the measurement signs from the current iterate, and refits the
sparse signal with a few HTP rounds on the batch. ``beta = 1`` uses every row
and is plain alternating minimization.
"""
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from .htp import htp_rounds
from .metrics import dist
from .signal_model import bernoulli_subsample


@dataclass(frozen=True)
class SolverConfig:
    beta: float = 0.6
    L: int = 3
    K: int = 200
    tol: float = 1e-3
    inner_start: Literal["outer", "zero"] = "outer"
    seed: int | None = 0

    def __post_init__(self):
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        if self.L < 1:
            raise ValueError(f"L must be at least 1, got {self.L}")
        if self.K < 1:
            raise ValueError(f"K must be at least 1, got {self.K}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.inner_start not in ("outer", "zero"):
            raise ValueError(f"inner_start must be 'outer' or 'zero', got {self.inner_start!r}")


@dataclass(frozen=True)
class IterationRecord:
    k: int
    relative_change: float
    subset_size: int
    fallback: str | None = None      # "redraw" or "full" when the batch was too small
    inner_rounds: int = 0
    distance: float | None = None    # dist(x_k, truth), truth-aware runs only
    sign_mismatches: int | None = None


@dataclass
class SolverResult:
    estimate: np.ndarray
    iterations: int
    termination: Literal["tol-reached", "max-iters", "exact-fixed-point"]
    trace: list = field(default_factory=list)
    iterates: list | None = None

    @property
    def distances(self):
        return [rec.distance for rec in self.trace]


def sign_vector(v):
    """+1 where ``v >= 0`` and -1 elsewhere."""
    return np.where(np.asarray(v) >= 0, 1.0, -1.0)


def sign_mismatch_count(A, x, truth):
    """Rows where ``sgn(a_i^T x)`` disagrees with the truth, after sign alignment."""
    if np.linalg.norm(x - truth) > np.linalg.norm(x + truth):
        truth = -truth
    return int(np.count_nonzero(sign_vector(A @ x) != sign_vector(A @ truth)))


def _draw_batch(m, beta, s, rng):
    idx = bernoulli_subsample(m, beta, rng)
    if idx.size >= s:
        return idx, None
    idx = bernoulli_subsample(m, beta, rng)
    if idx.size >= s:
        return idx, "redraw"
    return np.arange(m), "full"


def sam_solve(A, y, s, config=None, x0=None, truth=None, store_iterates=False):
    """Refine ``x0`` by stochastic alternating minimization.

    Parameters
    ----------
    A : (m, n) array
    y : (m,) array
        Measured magnitudes; noisy data may contain negative entries.
    s : int
        Sparsity level.
    config : SolverConfig
    x0 : (n,) array
        Starting point, typically from :func:`sparsepr.init.spectral_initialize`.
    truth : (n,) array, optional
        When given, each trace record also carries the distance to the truth
        and the sign-mismatch count of the new iterate.
    store_iterates : bool
        Keep a copy of every iterate in ``result.iterates``.

    The guarantees this method comes with assume ``beta`` in ``[0.1, 1]``;
    smaller values are accepted but unsupported by theory.
    """
    config = SolverConfig() if config is None else config
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = A.shape
    if y.shape != (m,):
        raise ValueError(f"y has shape {y.shape}, expected ({m},)")
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    if x0 is None:
        raise ValueError("an initial point x0 is required")
    x = np.array(x0, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"x0 has shape {x.shape}, expected ({n},)")
    if truth is not None:
        truth = np.asarray(truth, dtype=float)

    rng = np.random.default_rng(config.seed)
    zero = np.zeros(n)
    trace = []
    iterates = [] if store_iterates else None
    termination = "max-iters"

    for k in range(1, config.K + 1):
        rows, fallback = _draw_batch(m, config.beta, s, rng)
        if fallback == "full":
            step = 1.0 / m
        else:
            step = 1.0 / (config.beta * m)
        Ak = A[rows]
        yk = sign_vector(Ak @ x) * y[rows]
        start = x if config.inner_start == "outer" else zero
        x_new, _, rounds = htp_rounds(Ak, yk, s, config.L, start, step)

        nrm = np.linalg.norm(x)
        change = np.linalg.norm(x_new - x)
        if nrm > 0:
            change /= nrm
        trace.append(IterationRecord(
            k=k,
            relative_change=float(change),
            subset_size=int(rows.size),
            fallback=fallback,
            inner_rounds=rounds,
            distance=None if truth is None else dist(x_new, truth),
            sign_mismatches=None if truth is None else sign_mismatch_count(A, x_new, truth),
        ))
        if store_iterates:
            iterates.append(x_new.copy())
        exact = np.array_equal(x_new, x)
        x = x_new
        if exact:
            termination = "exact-fixed-point"
            break
        if change <= config.tol:
            termination = "tol-reached"
            break

    return SolverResult(estimate=x, iterations=len(trace), termination=termination,
                        trace=trace, iterates=iterates)


def altmin_solve(A, y, s, config=None, x0=None, truth=None, store_iterates=False):
    """Deterministic alternating minimization: :func:`sam_solve` with ``beta = 1``."""
    config = SolverConfig(beta=1.0) if config is None else replace(config, beta=1.0)
    return sam_solve(A, y, s, config, x0=x0, truth=truth, store_iterates=store_iterates)


def run_sam_pipeline(A, y, s, config=None, truth=None, power_max_iters=1000, power_tol=1e-8):
    """Spectral initialization followed by SAM refinement."""
    from .init import spectral_initialize

    init = spectral_initialize(A, y, s, max_iters=power_max_iters, tol=power_tol)
    return sam_solve(A, y, s, config, x0=init.x0, truth=truth)
