"""Compare random 60% batches with using every measurement.

Both solvers see the same problem instances. Runs 20 trials per cell at
n=1000, s=15; takes a few seconds.
"""
from sparsepr.bench import recovery_curve

m_list = [300, 400, 500, 600]
curve = recovery_curve(n=1000, s=15, m_list=m_list, beta_list=[0.6, 1.0], trials=20,
                       master_seed=3)

print("   m   beta=0.6   beta=1")
for m in m_list:
    print(f"{m:5d}   {curve.rate(m=m, beta=0.6):8.2f}   {curve.rate(m=m, beta=1.0):6.2f}")
