"""Hard Thresholding Pursuit for ``min ||A x - b||  s.t.  ||x||_0 <= s``.

Each round takes a scaled gradient step, keeps the ``s`` largest entries in
magnitude, and re-fits by least squares on that support.
"""
import numpy as np
from scipy import linalg

# Gram matrices with a reciprocal condition estimate below this are treated
# as singular and solved by SVD least squares instead of Cholesky.
RCOND_FLOOR = 1e-12


class UnderdeterminedSupportError(ValueError):
    """The requested support has more columns than the matrix has rows."""


def top_s_indices(v, s):
    """Indices of the ``s`` entries of ``v`` largest in magnitude, ascending.

    Ties are resolved in favour of the smaller index.
    """
    v = np.asarray(v)
    if not 1 <= s <= v.shape[0]:
        raise ValueError(f"need 1 <= s <= {v.shape[0]}, got s={s}")
    # stable sort on -|v| keeps lower indices first among equal magnitudes
    order = np.argsort(-np.abs(v), kind="stable")
    return np.sort(order[:s])


def least_squares_on_support(A, b, support):
    """Minimise ``||A[:, S] z - b||`` and embed ``z`` into a length-n vector.

    Solves the ``|S| x |S|`` normal equations with a Cholesky factorization.
    When the Gram matrix is numerically singular the minimum-norm SVD
    solution of the rectangular problem is returned instead.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    support = np.asarray(support, dtype=int)
    m, n = A.shape
    if support.size > m:
        raise UnderdeterminedSupportError(
            f"support of size {support.size} exceeds the {m} available rows")
    x = np.zeros(n)
    if support.size == 0:
        return x
    As = A[:, support]
    gram = As.T @ As
    rhs = As.T @ b
    try:
        c, lower = linalg.cho_factor(gram, check_finite=False)
        rcond, info = linalg.lapack.dpocon(c, np.linalg.norm(gram, 1),
                                            uplo="L" if lower else "U")
        singular = info != 0 or rcond < RCOND_FLOOR
    except linalg.LinAlgError:
        singular = True
    if singular:
        z = np.linalg.lstsq(As, b, rcond=None)[0]
    else:
        z = linalg.cho_solve((c, lower), rhs, check_finite=False)
    x[support] = z
    return x


def htp_rounds(A, b, s, L, x_start, step_scale):
    """Run up to ``L`` HTP rounds and report how many were needed.

    Returns ``(x, support, rounds)``. Stops early once a round selects the
    same support as the round before it; from there every further round
    would reproduce the same least-squares fit, so the output is the same as
    running all ``L`` rounds.
    """
    if L < 1:
        raise ValueError(f"L must be at least 1, got {L}")
    if step_scale <= 0:
        raise ValueError(f"step_scale must be positive, got {step_scale}")
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x_start, dtype=float)
    if x.shape != (A.shape[1],):
        raise ValueError(f"x_start has shape {x.shape}, expected ({A.shape[1]},)")
    prev = None
    rounds = 0
    for _ in range(L):
        grad_step = x + step_scale * (A.T @ (b - A @ x))
        support = top_s_indices(grad_step, s)
        if prev is not None and np.array_equal(support, prev):
            break
        x = least_squares_on_support(A, b, support)
        prev = support
        rounds += 1
    return x, prev, rounds


def htp_solve(A, b, s, L, x_start=None, step_scale=None):
    """Approximate the s-sparse least-squares fit of ``b`` by ``L`` HTP rounds.

    ``step_scale`` defaults to ``1 / m``; the stochastic outer loop passes
    ``1 / (beta * m)``. ``x_start`` defaults to zero.
    """
    A = np.asarray(A, dtype=float)
    if x_start is None:
        x_start = np.zeros(A.shape[1])
    if step_scale is None:
        step_scale = 1.0 / A.shape[0]
    return htp_rounds(A, b, s, L, x_start, step_scale)[0]
