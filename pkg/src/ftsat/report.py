"""Regenerate the published crossover tables and diff them against golden values."""

from __future__ import annotations

import csv
import io
import json
import math
from functools import lru_cache
from importlib import resources

from .crossover import HOUR, YEAR, ResourceEstimate, find_crossover, scenario_config
from .errors import SearchFailure

TIME_UNITS = {"h": HOUR, "d": 24 * HOUR, "y": YEAR}


def load_golden() -> dict:
    return json.loads(resources.files("ftsat").joinpath("data/golden.json").read_text())


@lru_cache(maxsize=None)
def crossover_for(p: int, scenario: str, parallel: str, tau: int) -> ResourceEstimate:
    return find_crossover(p, scenario_config(scenario, parallel, tau=tau))


def _row_estimate(row: dict):
    """(estimate, None) or (None, reason) when the crossover search fails."""
    try:
        return crossover_for(row["p"], row["scenario"], row["parallel"], row["tau"]), None
    except SearchFailure as exc:
        return None, str(exc)


def computed_cells(est: ResourceEstimate, unit: str = "h") -> dict:
    return {
        "n": est.n,
        "d": est.d,
        "physical_qubits_1e6": est.physical_qubits / 1e6,
        "n_decoders_k": est.n_decoders / 1e3,
        "logical_depth_1e8": est.logical_depth / 1e8,
        "nonclifford_1e12": est.nonclifford_total / 1e12,
        "n_jobs": est.n_jobs,
        "n_cores": est.n_cores,
        "ancillas": est.ancillas,
        "N_T": est.N_T,
        "delta": est.delta,
        "eps_T": est.eps_T,
        "T_q": est.T_q / TIME_UNITS[unit],
    }


def within(value: float, golden: float, tol: dict) -> bool:
    if "abs" in tol:
        return abs(value - golden) <= tol["abs"] + 1e-9
    if "rel" in tol:
        return abs(value - golden) <= tol["rel"] * abs(golden)
    if "factor" in tol:
        return golden / tol["factor"] <= value <= golden * tol["factor"]
    raise ValueError(f"unknown tolerance {tol}")


def golden_diff(golden: dict | None = None) -> list[dict]:
    """One record per golden cell with computed value, tolerance class and verdict."""
    golden = golden or load_golden()
    tols = golden["tolerances"]
    out = []
    for row in golden["rows"]:
        est, failure = _row_estimate(row)
        for field, gval in row["cells"].items():
            unit = ""
            if isinstance(gval, list):
                gval, unit = gval
            computed = computed_cells(est, unit or "h")[field] if est else math.nan
            tol_name = "n_grid" if field == "n" and row["table"] == "improvements" else field
            tol = tols[tol_name]
            ok = est is not None and within(computed, gval, tol)
            out.append({"row": row["id"], "table": row["table"], "field": field, "unit": unit,
                        "golden": gval, "computed": computed, "tolerance": tol_name,
                        "tolerance_spec": json.dumps(tol, sort_keys=True), "verdict": "ok" if ok else "out",
                        "provenance": f"published:{row['table']}", "note": failure or ""})
    return out


def _fmt(x) -> str:
    if isinstance(x, float):
        if x == 0 or not math.isfinite(x):
            return repr(x)
        return f"{x:.6g}"
    return str(x)


def to_csv(records: list[dict]) -> str:
    if not records:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def table_rows(table: str, golden: dict | None = None) -> list[dict]:
    """Computed values laid out like one published table."""
    golden = golden or load_golden()
    rows = []
    for row in golden["rows"]:
        if row["table"] != table:
            continue
        est, failure = _row_estimate(row)
        unit = next((v[1] for v in row["cells"].values() if isinstance(v, list)), "h")
        cells = computed_cells(est, unit) if est else {}
        rows.append({"row": row["id"], "p": row["p"], "scenario": row["scenario"], "parallel": row["parallel"],
                     "tau": row["tau"], "T_q_unit": unit, **{k: cells.get(k, math.nan) for k in row["cells"]},
                     "note": failure or ""})
    return rows


TABLES = ("headline", "improvements", "extended_combined_realistic", "extended_combined_perfect")
