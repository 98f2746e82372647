"""Command-line front end.

    sparsepr solve --n 200 --m 600 --s 5 --beta 0.6 --seed 7
    sparsepr phase-transition --preset desk --seed 1 --output-dir results/

Every flag may also be given in a flat JSON file passed with ``--config``;
flags win over file values, which win over the preset. Grid commands write
``<command>.csv`` (one row per trial) and ``<command>.json`` (the summary,
with the effective configuration echoed) into ``--output-dir``.

Exit codes: 0 success, 1 bad usage or configuration, 2 runtime failure.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__, bench
from .metrics import assess
from .signal_model import generate_instance
from .solvers import SolverConfig, run_sam_pipeline

log = logging.getLogger("sparsepr")

PRESETS = {
    "recovery-curve": {
        "desk": {"n": 1000, "s": 15, "m_list": [350, 400, 450, 500],
                 "beta_list": [0.6, 1.0], "trials": 20},
        "paper": {"n": 1000, "s": 15, "m_list": list(range(100, 1001, 50)),
                  "beta_list": [0.4, 0.6, 0.8, 1.0], "trials": 100},
    },
    "phase-transition": {
        "desk": {"n": 1000, "s_list": [5, 15, 25], "m_list": [200, 500, 800, 1100],
                 "beta": 0.6, "trials": 20},
        "paper": {"n": 1000, "s_list": list(range(5, 51, 5)),
                  "m_list": list(range(200, 1201, 100)), "beta": 0.6, "trials": 100},
    },
    "noise-sweep": {
        "desk": {"n": 500, "m": 600, "s": 8, "beta": 0.6,
                 "sigma_list": [0.0, 0.01, 0.05, 0.1], "trials": 20},
        "paper": {"n": 5000, "m": 1500, "s": 20, "beta": 0.6,
                  "sigma_list": [0.0, 0.001, 0.003, 0.01, 0.03, 0.1, 0.3], "trials": 100},
    },
    "timing": {
        "desk": {"n": 1000, "m": 800, "s_list": [10, 20], "sigma_list": [0.0, 0.1],
                 "beta": 0.6, "trials": 10},
        "paper": {"n": 3000, "m": 2000, "s_list": [20, 30, 40], "sigma_list": [0.0, 0.1],
                  "beta": 0.6, "trials": 100},
    },
}

SOLVE_DEFAULTS = {"beta": 0.6, "sigma": 0.0, "L": 3, "K": 200, "algo": "sam", "seed": 0}
COMMON_DEFAULTS = {"seed": 0, "L": 3, "K": 200, "output_dir": "results"}

# accepted keys and their types per command; config files are validated against these
KEYS = {
    "solve": {"n": int, "m": int, "s": int, "beta": float, "sigma": float, "L": int,
              "K": int, "tol": float, "algo": str, "seed": int},
    "recovery-curve": {"n": int, "s": int, "m_list": list, "beta_list": list},
    "phase-transition": {"n": int, "s_list": list, "m_list": list, "beta": float},
    "noise-sweep": {"n": int, "m": int, "s": int, "beta": float, "sigma_list": list},
    "timing": {"n": int, "m": int, "s_list": list, "sigma_list": list, "beta": float},
}
GRID_COMMON = {"trials": int, "seed": int, "L": int, "K": int, "workers": int,
               "output_dir": str, "preset": str}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _float_list(text):
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser():
    parser = _Parser(prog="sparsepr", description="Sparse phase retrieval solver and benchmarks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="flat JSON file of option values")
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--beta", type=float, help="Bernoulli batch probability")
        p.add_argument("--L", type=int, help="HTP rounds per outer iteration")
        p.add_argument("--K", type=int, help="maximum outer iterations")
        p.add_argument("--trials", type=int, help="trials per cell")
        p.add_argument("--workers", type=int,
                       help="worker processes (default: $SPARSE_PR_WORKERS or 1)")
        p.add_argument("--paper-scale", action="store_true", dest="paper_scale",
                       help="use the full-size preset (slow)")
        p.add_argument("--preset", choices=["desk", "paper"], help="default grid size")
        p.add_argument("--output-dir", dest="output_dir", help="where CSV and JSON results go")
        p.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")

    p = sub.add_parser("solve", help="solve one random instance and print the assessment")
    common(p)
    p.add_argument("--n", type=int, help="signal dimension")
    p.add_argument("--m", type=int, help="number of measurements")
    p.add_argument("--s", type=int, help="sparsity level")
    p.add_argument("--sigma", type=float, help="noise standard deviation")
    p.add_argument("--tol", type=float, help="stopping tolerance (default 1e-3 + sigma)")
    p.add_argument("--algo", choices=bench.ALGORITHMS, help="sam, or altmin for full batches")

    p = sub.add_parser("recovery-curve", help="success rate versus m for several beta")
    common(p)
    p.add_argument("--n", type=int, help="signal dimension")
    p.add_argument("--s", type=int, help="sparsity level")
    p.add_argument("--m-list", dest="m_list", type=_int_list, help="comma-separated integers")
    p.add_argument("--beta-list", dest="beta_list", type=_float_list, help="comma-separated numbers")

    p = sub.add_parser("phase-transition", help="success rate over an (s, m) grid")
    common(p)
    p.add_argument("--n", type=int, help="signal dimension")
    p.add_argument("--s-list", dest="s_list", type=_int_list, help="comma-separated integers")
    p.add_argument("--m-list", dest="m_list", type=_int_list, help="comma-separated integers")

    p = sub.add_parser("noise-sweep", help="mean relative error versus noise level")
    common(p)
    p.add_argument("--n", type=int, help="signal dimension")
    p.add_argument("--m", type=int, help="number of measurements")
    p.add_argument("--s", type=int, help="sparsity level")
    p.add_argument("--sigma-list", dest="sigma_list", type=_float_list, help="comma-separated numbers")

    p = sub.add_parser("timing", help="solve time of SAM versus deterministic AltMin")
    common(p)
    p.add_argument("--n", type=int, help="signal dimension")
    p.add_argument("--m", type=int, help="number of measurements")
    p.add_argument("--s-list", dest="s_list", type=_int_list, help="comma-separated integers")
    p.add_argument("--sigma-list", dest="sigma_list", type=_float_list, help="comma-separated numbers")
    return parser


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict) or any(isinstance(v, dict) for v in data.values()):
        raise ConfigError("config must be a flat JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def effective_config(args):
    """Merge preset, config file and explicit flags (in increasing priority)."""
    command = args.command
    allowed = dict(KEYS[command])
    allowed.update(GRID_COMMON)
    if command == "solve":
        merged = dict(SOLVE_DEFAULTS)
    else:
        merged = dict(COMMON_DEFAULTS)
        merged["workers"] = _env_workers()
    file_values = _load_config(args.config) if args.config else {}
    unknown = set(file_values) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown config keys for {command}: {sorted(unknown)}")
    if command != "solve":
        preset = "paper" if args.paper_scale else (args.preset or file_values.get("preset", "desk"))
        if preset not in PRESETS[command]:
            raise ConfigError(f"unknown preset {preset!r}")
        merged.update(PRESETS[command][preset])
        merged["preset"] = preset
    merged.update(file_values)
    for key in allowed:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    for key, typ in allowed.items():
        if key in merged and merged[key] is not None:
            try:
                merged[key] = [float(v) if "sigma" in key or "beta" in key else int(v)
                               for v in merged[key]] if typ is list else typ(merged[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key}: {merged[key]!r}") from exc
    missing = [k for k in KEYS[command] if merged.get(k) is None and k != "tol"]
    if missing:
        raise ConfigError(f"missing required option(s): {', '.join('--' + k.replace('_', '-') for k in missing)}")
    return merged


def _env_workers():
    try:
        return max(1, int(os.environ.get("SPARSE_PR_WORKERS", "1")))
    except ValueError:
        return 1


def cmd_solve(cfg):
    n, m, s = cfg["n"], cfg["m"], cfg["s"]
    params = bench.TrialParams(n=n, m=m, s=s, beta=cfg["beta"], L=cfg["L"],
                               sigma=cfg["sigma"], algo=cfg["algo"], K=cfg["K"])
    tol = cfg.get("tol") or params.tol
    inst = generate_instance(n, m, s, sigma=cfg["sigma"], seed=cfg["seed"])
    config = SolverConfig(beta=params.effective_beta, L=cfg["L"], K=cfg["K"], tol=tol,
                          seed=cfg["seed"])
    result = run_sam_pipeline(inst.matrix, inst.measurements.observed, s, config)
    report = assess(result.estimate, inst.signal.values, params.success_threshold).to_dict()
    report.update({"iterations": result.iterations, "termination": result.termination,
                   "config": cfg, "version": __version__})
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_grid(command, cfg):
    workers = cfg["workers"]
    common = {"master_seed": cfg["seed"], "L": cfg["L"], "K": cfg["K"]}
    if command == "recovery-curve":
        summary = bench.recovery_curve(cfg["n"], cfg["s"], cfg["m_list"], cfg["beta_list"],
                                       cfg["trials"], workers=workers, **common)
    elif command == "phase-transition":
        summary = bench.phase_transition_grid(cfg["n"], cfg["s_list"], cfg["m_list"], cfg["beta"],
                                              cfg["trials"], workers=workers, **common)
    elif command == "noise-sweep":
        summary = bench.noise_sweep(cfg["n"], cfg["m"], cfg["s"], cfg["beta"], cfg["sigma_list"],
                                    cfg["trials"], workers=workers, **common)
    else:
        configs = [bench.TrialParams(n=cfg["n"], m=cfg["m"], s=s, beta=beta, L=cfg["L"],
                                     K=cfg["K"], sigma=sigma, algo=algo)
                   for s in cfg["s_list"] for sigma in cfg["sigma_list"]
                   for algo, beta in (("sam", cfg["beta"]), ("altmin", 1.0))]
        summary = bench.timing_table(configs, cfg["trials"], master_seed=cfg["seed"])
    summary.config = dict(cfg)
    out = Path(cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    summary.write_csv(out / f"{command}.csv")
    summary.write_json(out / f"{command}.json")
    log.info("wrote %s and %s", out / f"{command}.csv", out / f"{command}.json")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = effective_config(args)
        if args.command != "solve" and cfg["trials"] < 1:
            raise ConfigError("--trials must be at least 1")
        if args.command == "solve":
            bench.TrialParams(n=cfg["n"], m=cfg["m"], s=cfg["s"], beta=cfg["beta"],
                              L=cfg["L"], sigma=cfg["sigma"], algo=cfg["algo"], K=cfg["K"])
            SolverConfig(beta=cfg["beta"], L=cfg["L"], K=cfg["K"])
    except (ConfigError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"sparsepr: error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "solve":
            cmd_solve(cfg)
        else:
            cmd_grid(args.command, cfg)
    except Exception as exc:
        log.error("%s failed: %s", args.command, exc)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
