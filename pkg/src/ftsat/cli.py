"""Command-line front end.

Exit codes: 0 success, 1 a check failed or a module raised, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, fields
from pathlib import Path

import numpy as np

from . import report as report_mod
from .config import RunConfig, coerce, load_config
from .crossover import HOUR, SWEEPS, estimate, find_crossover
from .errors import FtsatError, ParameterError
from .sat import generate_instance, read_dimacs, write_dimacs
from .scheduler import build_collision_graph, color_clauses, make_schedule
from .synthesis import budget_sweep, get_scheme, required_t_infidelity, synthesis_point

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

HELP = {
    "p": "QAOA depth", "n": "number of variables", "k": "clause width", "r": "clause-to-variable ratio",
    "tau": "logical cycles between clause-batch dispatches", "eta": "oracle level-1 slots, or 'none'",
    "scenario": "architecture improvement scenario", "classical": "classical parallelization model",
    "input": "DIMACS CNF file", "sweep": f"one of {sorted(SWEEPS)}", "suite": "verification suite or 'all'",
    "G": "rotation count for synth (else eps_T is used directly)",
}


def _json(obj) -> str:
    def default(o):
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, (np.floating,)):
            return float(o)
        if hasattr(o, "name") and hasattr(o, "b"):
            return o.name
        raise TypeError(f"not serializable: {type(o).__name__}")

    def clean(o):
        if isinstance(o, float) and not math.isfinite(o):
            return str(o)
        if isinstance(o, dict):
            return {k: clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        return o

    return json.dumps(clean(obj), indent=2, sort_keys=True, default=default) + "\n"


def _write(cfg: RunConfig, name: str, text: str) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def _need(value, name):
    if value is None:
        raise ParameterError(f"{name}: required for this command")
    return value


def _instance(cfg: RunConfig, seed_offset: int = 0):
    if cfg.input:
        return read_dimacs(Path(cfg.input).read_text(), k=cfg.k)
    return generate_instance(_need(cfg.n, "n"), cfg.k, cfg.r, seed=cfg.seed + seed_offset)


def _estimate_dict(est) -> dict:
    d = est.to_dict()
    d["T_q_h"] = est.T_q / HOUR
    d["T_c_h"] = est.T_c / HOUR
    return d


def cmd_gen(cfg: RunConfig) -> int:
    n = _need(cfg.n, "n")
    files = []
    for i in range(cfg.count):
        inst = generate_instance(n, cfg.k, cfg.r, seed=cfg.seed + i)
        files.append(str(_write(cfg, f"sat_n{n}_k{cfg.k}_seed{cfg.seed + i}.cnf", write_dimacs(inst))))
    sys.stdout.write(_json({"files": files, "n": n, "k": cfg.k, "r": cfg.r}))
    return EXIT_OK


def cmd_color(cfg: RunConfig) -> int:
    inst = _instance(cfg)
    part = color_clauses(build_collision_graph(inst), cfg.strategy)
    n_P = synthesis_point(cfg.eps_T, get_scheme(cfg.scheme), cfg.delta_mode).n_P
    sched = make_schedule(part, inst.k, n_P, cfg.tau or 1)
    _write(cfg, "schedule.json", sched.to_json() + "\n")
    sys.stdout.write(_json({"n": inst.n, "m": inst.m, "k": inst.k, "strategy": cfg.strategy, "c": part.c,
                            "c_over_r": part.c / (inst.m / inst.n), "s_max": part.s_max, "n_P": n_P,
                            "tau": sched.tau, "n_jobs": sched.n_jobs, "lambda": sched.lifetime}))
    return EXIT_OK


def cmd_synth(cfg: RunConfig) -> int:
    scheme = get_scheme(cfg.scheme)
    eps = cfg.eps_T if cfg.G is None else required_t_infidelity(cfg.G, cfg.I_target, scheme, cfg.delta_mode)
    pt = synthesis_point(eps, scheme, cfg.delta_mode)
    rows = budget_sweep(np.logspace(3, 12, 19), cfg.I_target, scheme)
    _write(cfg, "synthesis_budget.csv", report_mod.to_csv(rows))
    sys.stdout.write(_json({"G": cfg.G, **asdict(pt), "scheme": scheme.name}))
    return EXIT_OK


def cmd_estimate(cfg: RunConfig) -> int:
    est = estimate(_need(cfg.n, "n"), _need(cfg.p, "p"), cfg.estimate_config())
    text = _json(_estimate_dict(est))
    _write(cfg, "estimate.json", text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_crossover(cfg: RunConfig) -> int:
    est = find_crossover(_need(cfg.p, "p"), cfg.estimate_config(), cfg.n_min, cfg.n_max)
    text = _json(_estimate_dict(est))
    _write(cfg, "crossover.json", text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.sweep not in SWEEPS:
        raise ParameterError(f"sweep: choose from {sorted(SWEEPS)}")
    rows = SWEEPS[cfg.sweep](base=cfg.estimate_config())
    _write(cfg, f"{cfg.sweep}.csv", report_mod.to_csv(rows))
    sys.stdout.write(_json(rows))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    from .sim.suite import SUITES, run_suite

    if cfg.suite not in SUITES + ("all",):
        raise ParameterError(f"suite: choose from {list(SUITES) + ['all']}")
    rep = run_suite(cfg.suite, cfg.seed)
    _write(cfg, "verify_report.json", _json(rep))
    summary = {"passed": rep["passed"],
               "sections": {k: {"passed": v["passed"], "failed": v["failed"]} for k, v in rep["sections"].items()}}
    sys.stdout.write(_json(summary))
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_report(cfg: RunConfig) -> int:
    golden = report_mod.load_golden()
    for table in report_mod.TABLES:
        _write(cfg, f"{table}.csv", report_mod.to_csv(report_mod.table_rows(table, golden)))
    diff = report_mod.golden_diff(golden)
    _write(cfg, "golden_diff.csv", report_mod.to_csv(diff))
    out = [f"{d['row']}:{d['field']}" for d in diff if d["verdict"] != "ok"]
    sys.stdout.write(_json({"cells": len(diff), "out_of_tolerance": len(out), "cells_out": out}))
    return EXIT_OK if not out else EXIT_FAIL


COMMANDS = {
    "gen": cmd_gen, "color": cmd_color, "synth": cmd_synth, "estimate": cmd_estimate,
    "crossover": cmd_crossover, "sweep": cmd_sweep, "verify": cmd_verify, "report": cmd_report,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _converter(name: str):
    def convert(raw: str):
        return coerce(name, raw)

    convert.__name__ = name  # argparse names the field in its error message
    return convert


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", default=None, help="key=value configuration file")
    for f in fields(RunConfig):
        flag = "--" + f.name.replace("_", "-")
        common.add_argument(flag, dest=f.name, default=argparse.SUPPRESS, metavar=f.name.upper(),
                            type=_converter(f.name), help=HELP.get(f.name))
    parser = _Parser(prog="ftsat", description="Fault-tolerant QAOA+AA resource estimation for random k-SAT.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParameterError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # argparse: --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        cfg = load_config(args.config, overrides)
    except (ParameterError, OSError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg)
    except ParameterError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (FtsatError, OSError) as exc:
        sys.stderr.write(f"{args.command} failed: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
