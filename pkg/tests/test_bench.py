import csv
import json
import math

import numpy as np
import pytest

from sparsepr import bench
from sparsepr.bench import GridSummary, TrialParams, TrialRecord


def record(success, err, t=1.0, sigma=0.0):
    return TrialRecord(params=TrialParams(n=10, m=20, s=2, sigma=sigma), seed=0,
                       success=success, relative_error=err, iterations=3, wall_time=t)


def test_summary_filters_failures():
    recs = [record(True, 1e-8, 0.1), record(True, 3e-8, 0.3), record(False, 0.9, 5.0)]
    cell = bench.summarize(recs)
    assert cell["rate"] == pytest.approx(2 / 3)
    assert cell["successes"] == 2 and cell["trials"] == 3
    assert cell["mean_rel_error"] == pytest.approx(2e-8)
    assert cell["mean_wall_time"] == pytest.approx(0.2)


def test_summary_all_failed():
    cell = bench.summarize([record(False, 0.5)])
    assert cell["rate"] == 0 and cell["mean_rel_error"] is None


def test_summary_empty():
    with pytest.raises(ValueError):
        bench.summarize([])


def test_trial_is_deterministic():
    p = TrialParams(n=200, m=400, s=5)
    a = bench.run_trial(p, 17)
    b = bench.run_trial(p, 17)
    assert (a.success, a.relative_error, a.iterations) == (b.success, b.relative_error, b.iterations)


def test_trial_success_consistent_with_threshold():
    rec = bench.run_trial(TrialParams(n=200, m=600, s=5), 3)
    assert rec.success == (rec.relative_error <= 1e-3)
    assert rec.success


def test_trial_errors_are_recorded(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("kaput")

    monkeypatch.setattr(bench, "sam_solve", boom)
    rec = bench.run_trial(TrialParams(n=20, m=30, s=2), 0)
    assert not rec.success and rec.error.startswith("RuntimeError")


def test_trial_params_validation():
    with pytest.raises(ValueError):
        TrialParams(n=10, m=20, s=2, algo="copram")
    with pytest.raises(ValueError):
        TrialParams(n=10, m=20, s=11)
    assert TrialParams(n=10, m=20, s=2, beta=0.6, algo="altmin").effective_beta == 1.0
    assert TrialParams(n=10, m=20, s=2, sigma=0.1).tol == pytest.approx(0.101)


def test_trial_seed_hash():
    a = bench.trial_seed(1, 100, 50, 5, 0.0, 3)
    assert a == bench.trial_seed(1, 100, 50, 5, 0.0, 3)
    assert a != bench.trial_seed(1, 100, 50, 5, 0.0, 4)
    assert a != bench.trial_seed(2, 100, 50, 5, 0.0, 3)
    assert 0 <= a < 2 ** 63


def test_recovery_curve_shares_instances_across_beta():
    g = bench.recovery_curve(100, 3, [60, 120], [0.6, 1.0], trials=3, master_seed=4)
    assert len(g.cells) == 4 and g.trials_per_cell == 3
    seeds = {}
    for r in g.records:
        seeds.setdefault(r.params.m, set()).add(r.seed)
    assert all(len(v) == 3 for v in seeds.values())
    for c in g.cells:
        assert 0 <= c["rate"] <= 1
        assert c["rate"] * c["trials"] == c["successes"]


def test_recovery_curve_zero_trials():
    with pytest.raises(ValueError):
        bench.recovery_curve(100, 3, [60], [0.6], trials=0)


def test_grid_is_reproducible_and_order_independent():
    a = bench.phase_transition_grid(100, [2, 4], [50, 120], 0.6, trials=3, master_seed=9)
    b = bench.phase_transition_grid(100, [4, 2], [120, 50], 0.6, trials=3, master_seed=9)
    key = lambda r: (r.params.s, r.params.m, r.seed)
    ra = sorted(((key(r), r.success, r.relative_error) for r in a.records))
    rb = sorted(((key(r), r.success, r.relative_error) for r in b.records))
    assert ra == rb


def test_parallel_matches_serial():
    a = bench.phase_transition_grid(80, [2], [40, 90], 0.6, trials=2, master_seed=1, workers=1)
    b = bench.phase_transition_grid(80, [2], [40, 90], 0.6, trials=2, master_seed=1, workers=2)
    assert [(r.seed, r.relative_error) for r in a.records] == \
           [(r.seed, r.relative_error) for r in b.records]


def test_noise_sweep_reports_snr():
    g = bench.noise_sweep(100, 200, 3, 0.6, [0.0, 0.05], trials=3, master_seed=2)
    assert g.cell(sigma=0.0)["snr_db"] is None
    assert g.cell(sigma=0.05)["snr_db"] > 0
    assert g.cell(sigma=0.0)["mean_rel_error"] <= 1e-6


def test_timing_table_rows():
    cfgs = [TrialParams(n=100, m=200, s=3, beta=0.6), TrialParams(n=100, m=200, s=3, algo="altmin")]
    rows = bench.table_rows(bench.timing_table(cfgs, trials=2))
    assert [r[0] for r in rows] == ["sam", "altmin"]
    assert all(r[1] > 0 and r[2] < 1e-3 for r in rows)


def test_csv_and_json_export(tmp_path):
    g = bench.phase_transition_grid(60, [2], [50], 0.6, trials=2, master_seed=0)
    g.write_csv(tmp_path / "out.csv")
    g.write_json(tmp_path / "out.json")
    with open(tmp_path / "out.csv", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == bench.CSV_COLUMNS
    assert len(rows) == 3
    assert rows[1][0] == "sam" and float(rows[1][4]) == 0.6
    doc = json.loads((tmp_path / "out.json").read_text())
    assert doc["master_seed"] == 0 and doc["version"]
    assert doc["axes"] == {"s": [2], "m": [50]}
    assert doc["cells"][0]["trials"] == 2


def test_grid_summary_lookup():
    g = GridSummary(kind="x", axes={}, cells=[{"m": 1, "rate": 0.5}], trials_per_cell=2,
                    master_seed=0)
    assert g.rate(m=1) == 0.5
    with pytest.raises(KeyError):
        g.rate(m=2)


def test_nan_error_row_serializes():
    rec = TrialRecord(params=TrialParams(n=10, m=20, s=2), seed=1, success=False,
                      relative_error=math.nan, iterations=0, wall_time=0.0, error="x")
    assert rec.csv_row()[9] == "nan"
    assert np.isnan(float(rec.csv_row()[9]))
