"""Monte-Carlo experiment harness: recovery curves, phase transitions,
noise sweeps and timing tables.

Trial seeds are hashed from ``(master_seed, n, m, s, sigma, trial)``. The
solver parameters (``beta``, ``L``, algorithm) are left out on purpose, so
every solver configuration in a sweep sees the same problem instances.
"""
import csv
import hashlib
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .init import spectral_initialize
from .metrics import SUCCESS_THRESHOLD, relative_error
from .signal_model import generate_instance
from .solvers import SolverConfig, sam_solve

log = logging.getLogger(__name__)

CSV_COLUMNS = ["algo", "n", "m", "s", "beta", "L", "sigma", "seed", "success",
               "rel_error", "iterations", "wall_time_s"]
ALGORITHMS = ("sam", "altmin")


@dataclass(frozen=True)
class TrialParams:
    n: int
    m: int
    s: int
    beta: float = 0.6
    L: int = 3
    sigma: float = 0.0
    algo: str = "sam"
    K: int = 200

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algo!r}")
        if not 1 <= self.s <= self.n:
            raise ValueError(f"need 1 <= s <= n, got s={self.s}, n={self.n}")
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")

    @property
    def effective_beta(self):
        return 1.0 if self.algo == "altmin" else self.beta

    @property
    def tol(self):
        return 1e-3 + self.sigma

    @property
    def success_threshold(self):
        # noiseless: the 1e-3 exact-recovery test; noisy: the stopping level 1e-3 + sigma
        return SUCCESS_THRESHOLD + self.sigma


@dataclass
class TrialRecord:
    params: TrialParams
    seed: int
    success: bool
    relative_error: float
    iterations: int
    wall_time: float
    snr_db: float = math.inf
    error: str | None = None

    def csv_row(self):
        p = self.params
        return [p.algo, p.n, p.m, p.s, repr(float(p.effective_beta)), p.L,
                repr(float(p.sigma)), self.seed, int(self.success),
                repr(float(self.relative_error)), self.iterations,
                f"{self.wall_time:.6f}"]


@dataclass
class GridSummary:
    kind: str
    axes: dict
    cells: list
    trials_per_cell: int
    master_seed: int
    config: dict = field(default_factory=dict)
    records: list = field(default_factory=list, repr=False)

    def cell(self, **coords):
        for c in self.cells:
            if all(c.get(k) == v for k, v in coords.items()):
                return c
        raise KeyError(coords)

    def rate(self, **coords):
        return self.cell(**coords)["rate"]

    def to_dict(self):
        return {
            "kind": self.kind,
            "axes": self.axes,
            "cells": self.cells,
            "trials_per_cell": self.trials_per_cell,
            "master_seed": self.master_seed,
            "config": self.config,
            "version": __version__,
        }

    def write_json(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True, default=_json_default)
            fh.write("\n")

    def write_csv(self, path):
        write_records_csv(self.records, path)


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def write_records_csv(records, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(rec.csv_row())


def trial_seed(master_seed, n, m, s, sigma, trial):
    """63-bit seed hashed from the master seed, instance coordinates and trial index."""
    key = f"{int(master_seed)}|{int(n)}|{int(m)}|{int(s)}|{float(sigma)!r}|{int(trial)}"
    digest = hashlib.blake2b(key.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little") >> 1


def _solver_seed(seed):
    return int(np.random.SeedSequence([seed, 1]).generate_state(1, np.uint64)[0])


def run_trial(params, seed):
    """Generate one instance from ``seed``, run init + solver, score the outcome.

    Wall time covers initialization and the solve, not instance generation.
    Solver exceptions are caught and recorded as failed trials.
    """
    inst = generate_instance(params.n, params.m, params.s, sigma=params.sigma, seed=seed)
    y = inst.measurements.observed
    truth = inst.signal.values
    noise = y - inst.measurements.clean
    snr = math.inf if params.sigma == 0 else 10 * math.log10(
        float(np.sum(inst.measurements.clean ** 2) / np.sum(noise ** 2)))
    config = SolverConfig(beta=params.effective_beta, L=params.L, K=params.K,
                          tol=params.tol, seed=_solver_seed(seed))
    try:
        t0 = time.perf_counter()
        init = spectral_initialize(inst.matrix, y, params.s)
        result = sam_solve(inst.matrix, y, params.s, config, x0=init.x0)
        elapsed = time.perf_counter() - t0
    except Exception as exc:  # a failing trial must not abort the sweep
        log.warning("trial %s seed=%d failed: %s", params, seed, exc)
        return TrialRecord(params=params, seed=seed, success=False, relative_error=math.nan,
                           iterations=0, wall_time=0.0, snr_db=snr,
                           error=f"{type(exc).__name__}: {exc}")
    rel = relative_error(result.estimate, truth)
    return TrialRecord(params=params, seed=seed,
                       success=bool(rel <= params.success_threshold),
                       relative_error=rel, iterations=result.iterations,
                       wall_time=elapsed, snr_db=snr)


def _run_job(job):
    return run_trial(*job)


def run_trials(jobs, workers=1):
    """Run ``(params, seed)`` jobs, in order, optionally in worker processes."""
    jobs = list(jobs)
    if workers is None or workers <= 1 or len(jobs) < 2:
        return [run_trial(p, s) for p, s in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def summarize(records):
    """Success rate over all records, mean error/time over successes only."""
    if not records:
        raise ValueError("cannot summarize an empty set of trials")
    wins = [r for r in records if r.success]
    cell = {
        "trials": len(records),
        "successes": len(wins),
        "rate": len(wins) / len(records),
        "mean_rel_error": float(np.mean([r.relative_error for r in wins])) if wins else None,
        "mean_wall_time": float(np.mean([r.wall_time for r in wins])) if wins else None,
        "mean_iterations": float(np.mean([r.iterations for r in wins])) if wins else None,
        "errors": sum(r.error is not None for r in records),
    }
    snrs = [r.snr_db for r in records if math.isfinite(r.snr_db)]
    cell["snr_db"] = float(np.mean(snrs)) if snrs else None
    return cell


def _check_trials(trials):
    if trials < 1:
        raise ValueError("trials must be at least 1; an empty sweep has nothing to summarize")


def _grid(kind, axes, cell_params, trials, master_seed, workers, config):
    """Run every (coords, params) cell for ``trials`` seeds and aggregate."""
    _check_trials(trials)
    jobs = []
    for coords, params in cell_params:
        for t in range(trials):
            seed = trial_seed(master_seed, params.n, params.m, params.s, params.sigma, t)
            jobs.append((params, seed))
    records = run_trials(jobs, workers)
    cells = []
    for i, (coords, params) in enumerate(cell_params):
        recs = records[i * trials:(i + 1) * trials]
        cell = dict(coords)
        cell.update(summarize(recs))
        cells.append(cell)
        log.info("%s %s rate=%.2f", kind, coords, cell["rate"])
    return GridSummary(kind=kind, axes=axes, cells=cells, trials_per_cell=trials,
                       master_seed=master_seed, config=config, records=records)


def recovery_curve(n, s, m_list, beta_list, trials, master_seed=0, L=3, K=200, workers=1):
    """Success rate per ``(m, beta)`` cell."""
    if not m_list or not beta_list:
        raise ValueError("m_list and beta_list must be nonempty")
    cell_params = [({"m": int(m), "beta": float(b)},
                    TrialParams(n=n, m=int(m), s=s, beta=float(b), L=L, K=K,
                                algo="altmin" if b == 1 else "sam"))
                   for m in m_list for b in beta_list]
    config = {"n": n, "s": s, "L": L, "K": K}
    return _grid("recovery-curve", {"m": list(map(int, m_list)), "beta": list(map(float, beta_list))},
                 cell_params, trials, master_seed, workers, config)


def phase_transition_grid(n, s_range, m_range, beta, trials, master_seed=0, L=3, K=200, workers=1):
    """Success rate per ``(s, m)`` cell at fixed ``beta``."""
    if not s_range or not m_range:
        raise ValueError("s_range and m_range must be nonempty")
    cell_params = [({"s": int(s), "m": int(m)},
                    TrialParams(n=n, m=int(m), s=int(s), beta=beta, L=L, K=K))
                   for s in s_range for m in m_range]
    config = {"n": n, "beta": beta, "L": L, "K": K}
    return _grid("phase-transition", {"s": list(map(int, s_range)), "m": list(map(int, m_range))},
                 cell_params, trials, master_seed, workers, config)


def noise_sweep(n, m, s, beta, sigma_list, trials, master_seed=0, L=3, K=200, workers=1):
    """Mean relative error over successful trials, and mean SNR, per noise level."""
    if not sigma_list:
        raise ValueError("sigma_list must be nonempty")
    if any(sig < 0 for sig in sigma_list):
        raise ValueError("noise levels must be nonnegative")
    cell_params = [({"sigma": float(sig)},
                    TrialParams(n=n, m=m, s=s, beta=beta, L=L, K=K, sigma=float(sig)))
                   for sig in sigma_list]
    config = {"n": n, "m": m, "s": s, "beta": beta, "L": L, "K": K}
    return _grid("noise-sweep", {"sigma": list(map(float, sigma_list))},
                 cell_params, trials, master_seed, workers, config)


def timing_table(configs, trials, master_seed=0):
    """Mean solve time and relative error over successful trials, per configuration.

    ``configs`` is a sequence of :class:`TrialParams`. Returns a
    :class:`GridSummary` whose cells carry the configuration fields.
    """
    if not configs:
        raise ValueError("configs must be nonempty")
    cell_params = [({"algo": p.algo, "n": p.n, "m": p.m, "s": p.s,
                     "beta": p.effective_beta, "sigma": p.sigma}, p) for p in configs]
    # always sequential: concurrent trials would distort the timings
    return _grid("timing", {"configs": [asdict(p) for p in configs]},
                 cell_params, trials, master_seed, 1, {})


def table_rows(summary):
    """``(algo, mean_wall_time, mean_rel_error)`` tuples from a timing summary."""
    return [(c["algo"], c["mean_wall_time"], c["mean_rel_error"]) for c in summary.cells]
