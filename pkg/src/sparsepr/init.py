"""Spectral initialization on an estimated support.

Step one ranks coordinates by the marginal scores ``(1/m) sum_i y_i^2 a_ij^2``,
whose mean is ``||x||^2 + 2 x_j^2``, and keeps the top ``s``. Step two takes
the principal eigenvector of ``(1/m) sum_i y_i^2 a_iS a_iS^T`` on that
support and rescales it to the norm estimate ``||y|| / sqrt(m)``.
"""
from dataclasses import dataclass

import numpy as np

from .htp import top_s_indices


class DegenerateInputError(ValueError):
    """The weighted covariance vanishes, e.g. because ``y`` is all zeros."""


@dataclass(frozen=True)
class InitResult:
    support_estimate: np.ndarray
    x0: np.ndarray
    norm_target: float
    power_iters_used: int
    eig_residual: float
    eigenvalue: float
    converged: bool


def _check_dims(A, y):
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    if A.ndim != 2 or y.shape != (A.shape[0],):
        raise ValueError(f"y has shape {y.shape}, expected ({A.shape[0]},)")
    return A, y


def marginal_scores(A, y):
    A, y = _check_dims(A, y)
    return (y ** 2) @ (A ** 2) / A.shape[0]


def estimate_support(scores, s):
    return top_s_indices(scores, s)


def weighted_covariance(A, y, support):
    """``(1/m) sum_i y_i^2 [a_i]_S [a_i]_S^T`` as an ``|S| x |S|`` array."""
    As = A[:, support]
    return (As * (y ** 2)[:, None]).T @ As / A.shape[0]


def power_iteration(M, max_iters=1000, tol=1e-8):
    """Principal eigenpair of a symmetric positive semidefinite matrix.

    Starts from the normalized column of largest norm. Declares convergence
    once ``||M v - lam v|| <= tol * |lam|`` with ``lam`` the Rayleigh quotient.

    Returns ``(lam, v, iters, residual, converged)``.
    """
    M = np.asarray(M, dtype=float)
    col_norms = np.linalg.norm(M, axis=0)
    j = int(np.argmax(col_norms))
    if col_norms[j] == 0:
        raise DegenerateInputError("matrix is numerically zero")
    v = M[:, j] / col_norms[j]
    Mv = M @ v
    lam = float(v @ Mv)
    residual = float(np.linalg.norm(Mv - lam * v))
    iters = 0
    while residual > tol * abs(lam) and iters < max_iters:
        nrm = np.linalg.norm(Mv)
        if nrm == 0:
            break
        v = Mv / nrm
        Mv = M @ v
        lam = float(v @ Mv)
        residual = float(np.linalg.norm(Mv - lam * v))
        iters += 1
    return lam, v, iters, residual, bool(residual <= tol * abs(lam))


def spectral_initialize(A, y, s, max_iters=1000, tol=1e-8):
    A, y = _check_dims(A, y)
    m, n = A.shape
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    norm_target = float(np.linalg.norm(y) / np.sqrt(m))
    if norm_target == 0:
        raise DegenerateInputError("all measurements are zero")
    support = estimate_support(marginal_scores(A, y), s)
    M = weighted_covariance(A, y, support)
    lam, v, iters, residual, converged = power_iteration(M, max_iters, tol)
    x0 = np.zeros(n)
    x0[support] = v * (norm_target / np.linalg.norm(v))
    return InitResult(support_estimate=support, x0=x0, norm_target=norm_target,
                      power_iters_used=iters, eig_residual=residual,
                      eigenvalue=lam, converged=converged)
