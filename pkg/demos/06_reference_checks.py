"""Slow reference tools: brute-force sparse least squares, an empirical RIP
estimate, and the sign-mismatch bound near the truth.
"""
import numpy as np

from sparsepr import generate_instance, htp_solve
from sparsepr.oracle import exhaustive_sparse_ls, rip_estimate, sign_mismatch_bound_check

rng = np.random.default_rng(0)

# HTP against enumeration of all supports on a small linear problem
inst = generate_instance(n=16, m=48, s=3, seed=5)
A, x = inst.matrix, inst.signal.values
b = A @ x
print("HTP support:       ", np.flatnonzero(htp_solve(A, b, 3, 6)))
print("exhaustive support:", np.flatnonzero(exhaustive_sparse_ls(A, b, 3)))

# a lower bound on the restricted isometry constant of a 60% batch
inst = generate_instance(n=200, m=800, s=5, seed=6)
rows = np.flatnonzero(rng.random(800) < 0.6)
est = rip_estimate(inst.matrix[rows], r=10, trials=200, scale=1 / (0.6 * 800), rng=rng)
print(f"empirical delta_10 on a batch: {est.delta_hat:.3f}")

# residual from wrong signs stays below its bound close to the truth
x = inst.signal.values
x_near = x + 0.02 * np.linalg.norm(x) * rng.standard_normal(x.size) / np.sqrt(x.size)
check = sign_mismatch_bound_check(inst.matrix, x, x_near, 0.6, rng)
print(f"lambda={check['lambda']:.3f}: residual {check['lhs']:.3f} <= bound {check['rhs']:.3f}")
