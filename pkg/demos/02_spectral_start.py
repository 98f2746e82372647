"""How good is the spectral starting point?

Marginal scores pick a candidate support, then the top eigenvector of a
weighted covariance on that support gives a direction. Its length is set
from the measurements alone.
"""
import numpy as np

from sparsepr import dist, generate_instance, marginal_scores, spectral_initialize

n, m, s = 1000, 3000, 15
inst = generate_instance(n, m, s, seed=1)
A, y, x = inst.matrix, inst.measurements.clean, inst.signal.values

scores = marginal_scores(A, y)
init = spectral_initialize(A, y, s)
hit = np.intersect1d(init.support_estimate, inst.signal.support)
print(f"support overlap: {hit.size}/{s}")
print(f"score on support (mean) {scores[inst.signal.support].mean():.2f}, "
      f"off support {np.delete(scores, inst.signal.support).mean():.2f}")

# small entries are hard to tell apart from noise in the scores
order = np.argsort(-np.abs(x[inst.signal.support]))
for j in inst.signal.support[order]:
    flag = "found" if j in init.support_estimate else "missed"
    print(f"  x[{j:3d}] = {x[j]:+.3f}  {flag}")

print(f"power iterations: {init.power_iters_used}, residual {init.eig_residual:.1e}")
print(f"norm estimate {init.norm_target:.3f} vs true norm {np.linalg.norm(x):.3f}")
print(f"relative distance of x0: {dist(init.x0, x) / np.linalg.norm(x):.3f}")
