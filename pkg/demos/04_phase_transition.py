"""A coarse success-rate map over sparsity and sample size.

Writes phase_transition.csv (one row per trial) into the current directory
and prints the grid.
"""
from sparsepr.bench import phase_transition_grid

s_list, m_list = [5, 15, 25], [200, 500, 800, 1100]
grid = phase_transition_grid(n=1000, s_range=s_list, m_range=m_list, beta=0.6, trials=10,
                             master_seed=0)
grid.write_csv("phase_transition.csv")

print("s \\ m " + "".join(f"{m:7d}" for m in m_list))
for s in s_list:
    print(f"{s:5d} " + "".join(f"{grid.rate(s=s, m=m):7.2f}" for m in m_list))
