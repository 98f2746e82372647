"""Brute-force references and Monte-Carlo diagnostics.

These are deliberately slow and independent of the fast paths they check:
least squares here goes through an SVD, never the Cholesky route in
:mod:`sparsepr.htp`, and eigenpairs come from cyclic Jacobi rotations rather
than power iteration.
"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .metrics import dist
from .signal_model import bernoulli_subsample
from .solvers import sign_vector

MAX_SUPPORTS = 10 ** 6


class TooLargeError(ValueError):
    """Exhaustive enumeration would visit more than ``MAX_SUPPORTS`` supports."""


@dataclass(frozen=True)
class RipEstimate:
    r: int
    delta_hat: float
    trials: int
    scale: float


def exhaustive_sparse_ls(A, b, s):
    """Global minimiser of ``||A x - b||`` over ``||x||_0 <= s`` by enumeration.

    Every s-subset is tried in lexicographic order; a later support replaces
    the incumbent only if its residual is strictly smaller.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    s = min(s, n)
    if math.comb(n, s) > MAX_SUPPORTS:
        raise TooLargeError(f"C({n}, {s}) supports exceeds the {MAX_SUPPORTS} guard")
    best_x, best_res = None, np.inf
    for support in itertools.combinations(range(n), s):
        cols = list(support)
        z = np.linalg.lstsq(A[:, cols], b, rcond=None)[0]
        res = np.linalg.norm(A[:, cols] @ z - b)
        if res < best_res:
            best_res = res
            best_x = np.zeros(n)
            best_x[cols] = z
    return best_x


def rip_estimate(A_sub, r, trials, scale, rng=None):
    """Empirical lower bound on the order-``r`` RIP constant of ``sqrt(scale) * A_sub``.

    Each trial draws a random coordinate ordering and Gaussian weights, and
    probes the unit vectors supported on its first ``q`` coordinates for every
    ``q <= r``. The draws do not depend on ``r``, so with a fixed seed the
    estimate is non-decreasing in ``r``.
    """
    A_sub = np.asarray(A_sub, dtype=float)
    n = A_sub.shape[1]
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= {n}, got r={r}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    rng = np.random.default_rng(rng)
    delta = 0.0
    for _ in range(trials):
        perm = rng.permutation(n)
        g = rng.standard_normal(n)
        cols = perm[:r]
        # column q of the cumulative sum is A times the q-prefix vector
        images = np.cumsum(A_sub[:, cols] * g[:r], axis=1)
        sq_norms = np.cumsum(g[:r] ** 2)
        ratios = scale * np.sum(images ** 2, axis=0) / sq_norms
        delta = max(delta, float(np.max(np.abs(ratios - 1.0))))
    return RipEstimate(r=r, delta_hat=delta, trials=trials, scale=scale)


def sign_mismatch_constant(lam):
    """``2 (1e-3 + lam sqrt(21/20)) / (1 - lam)``."""
    return 2.0 * (1e-3 + lam * math.sqrt(21.0 / 20.0)) / (1.0 - lam)


def sign_mismatch_bound_check(A, x_true, x_near, beta, rng=None):
    """Compare the batch residual of sign-corrected data with its predicted bound.

    ``lhs = ||sgn(A_I x_near) * |A_I x_true| - A_I x_true||`` on a fresh
    Bernoulli batch ``I``, with ``x_true`` first aligned to the sign of
    ``x_near``. ``rhs = C(lam) sqrt(m) dist(x_near, x_true)`` with
    ``lam = dist / ||x_true||``.
    """
    A = np.asarray(A, dtype=float)
    x_true = np.asarray(x_true, dtype=float)
    x_near = np.asarray(x_near, dtype=float)
    m = A.shape[0]
    nrm = np.linalg.norm(x_true)
    d = dist(x_near, x_true)
    if nrm == 0 or d > nrm / 8:
        raise ValueError("x_near must lie within ||x_true|| / 8 of x_true (up to sign)")
    if np.linalg.norm(x_near - x_true) > np.linalg.norm(x_near + x_true):
        x_true = -x_true
    rows = bernoulli_subsample(m, beta, rng)
    Ak = A[rows]
    clean = Ak @ x_true
    signed = sign_vector(Ak @ x_near) * np.abs(clean)
    lam = d / nrm
    return {
        "lhs": float(np.linalg.norm(signed - clean)),
        "rhs": float(sign_mismatch_constant(lam) * math.sqrt(m) * d),
        "lambda": float(lam),
        "subset_size": int(rows.size),
    }


def jacobi_eigh(M, tol=1e-14, max_sweeps=100):
    """Eigen-decomposition of a small symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` sorted by decreasing eigenvalue,
    eigenvectors as columns.
    """
    a = np.array(M, dtype=float)
    k = a.shape[0]
    V = np.eye(k)
    scale = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(max(np.sum(a ** 2) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * c
                J = np.eye(k)
                J[p, p] = J[q, q] = c
                J[p, q] = sn
                J[q, p] = -sn
                a = J.T @ a @ J
                V = V @ J
    w = np.diag(a).copy()
    order = np.argsort(-w)
    return w[order], V[:, order]
