"""Additive Gaussian noise on the magnitudes.

The stopping tolerance grows with the noise level, and the mean relative
error over successful trials should track sigma.
"""
from sparsepr.bench import noise_sweep

sigmas = [0.0, 0.01, 0.05, 0.1]
sweep = noise_sweep(n=500, m=600, s=8, beta=0.6, sigma_list=sigmas, trials=20, master_seed=2)

print(" sigma   SNR(dB)   rate   mean rel. error")
for sg in sigmas:
    c = sweep.cell(sigma=sg)
    snr = "inf" if c["snr_db"] is None else f"{c['snr_db']:.1f}"
    print(f"{sg:6.2f}   {snr:>7}   {c['rate']:.2f}   {c['mean_rel_error']:.2e}")
