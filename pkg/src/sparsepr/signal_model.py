"""Random problem instances for real-valued sparse phase retrieval.

Everything here draws from an explicit ``numpy.random.Generator`` so that a
seed fully determines an instance.
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SparseSignal:
    values: np.ndarray
    support: np.ndarray
    s: int

    @property
    def n(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class MeasurementVector:
    clean: np.ndarray
    noisy: np.ndarray | None = None
    sigma: float = 0.0

    @property
    def observed(self):
        """The data a solver sees: the noisy vector when present, else the clean one."""
        return self.clean if self.noisy is None else self.noisy


@dataclass(frozen=True)
class ProblemInstance:
    signal: SparseSignal
    matrix: np.ndarray
    measurements: MeasurementVector
    seed: int | None = None

    @property
    def m(self):
        return self.matrix.shape[0]

    @property
    def n(self):
        return self.matrix.shape[1]


def _as_rng(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def generate_sparse_signal(n, s, rng=None):
    """Draw an s-sparse vector in R^n.

    The support is a uniformly random s-subset of ``range(n)`` and the nonzero
    entries are i.i.d. standard normal.
    """
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    rng = _as_rng(rng)
    support = np.sort(rng.choice(n, size=s, replace=False))
    values = np.zeros(n)
    values[support] = rng.standard_normal(s)
    return SparseSignal(values=values, support=support, s=s)


def generate_sensing_matrix(m, n, rng=None):
    """i.i.d. N(0, 1) sensing matrix of shape (m, n)."""
    if m < 1 or n < 1:
        raise ValueError(f"matrix dimensions must be positive, got ({m}, {n})")
    rng = _as_rng(rng)
    return rng.standard_normal((m, n))


def measure(A, x):
    """Phaseless measurements ``|A @ x|``."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if A.ndim != 2 or x.shape != (A.shape[1],):
        raise ValueError(f"cannot measure vector of shape {x.shape} with matrix {A.shape}")
    return np.abs(A @ x)


def add_noise(y, sigma, rng=None):
    """Additive Gaussian noise ``y + sigma * eps``; no clamping to nonnegative values."""
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    y = np.asarray(y, dtype=float)
    if sigma == 0:
        return y.copy()
    rng = _as_rng(rng)
    return y + sigma * rng.standard_normal(y.shape)


def bernoulli_subsample(m, beta, rng=None):
    """Keep each index of ``range(m)`` independently with probability ``beta``.

    Returns a strictly increasing integer array. ``beta == 1`` returns every
    index without touching the generator.
    """
    if not 0 < beta <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    if beta == 1:
        return np.arange(m)
    rng = _as_rng(rng)
    return np.flatnonzero(rng.random(m) < beta)


def generate_instance(n, m, s, sigma=0.0, seed=None):
    """Build a full problem instance from one seed.

    Signal, matrix and noise are drawn in that order from a single generator,
    so the same seed reproduces the instance bit for bit.
    """
    rng = np.random.default_rng(seed)
    signal = generate_sparse_signal(n, s, rng)
    A = generate_sensing_matrix(m, n, rng)
    y = measure(A, signal.values)
    if sigma > 0:
        meas = MeasurementVector(clean=y, noisy=add_noise(y, sigma, rng), sigma=sigma)
    else:
        if sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {sigma}")
        meas = MeasurementVector(clean=y)
    return ProblemInstance(signal=signal, matrix=A, measurements=meas, seed=seed)
