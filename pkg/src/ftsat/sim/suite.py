"""Desk-scale verification suite with a machine-readable pass/fail report."""

from __future__ import annotations

import math

import numpy as np
from scipy.stats import binom

from ..errors import AuditError, CapacityError
from ..gadgets import ccz_count
from ..sat import generate_instance
from .amplification import Theorem1Procedure, grover_angle_deviation, uniform_prep
from .constructions import oracle_tiny, phaser_tiny, tacu_semantic, zero_oracle
from .fidelity import depolarizing_fidelity_check, distance_fidelity_check
from .verify import (check_z_equivalence, multi_phase_diagonal, oracle_diagonal, phaser_diagonal,
                     resource_audit, zero_diagonal)

SUITES = ("gadgets", "oracles", "theorem1", "fidelity")


def _check(name: str, ok: bool, **details) -> dict:
    details.pop("passed", None)
    return {"name": name, "passed": bool(ok), **details}


def suite_gadgets(seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    for K in (1, 2, 3):
        for gamma in rng.uniform(-math.pi, math.pi, 5):
            rep = check_z_equivalence(tacu_semantic(K, gamma), multi_phase_diagonal(K, gamma), f"P_{K}")
            out.append(_check(f"tacu_z_equivalence K={K} gamma={gamma:.6f}", rep.passed, **rep.to_dict()))
    for K in (1, 2, 3, 4):
        gamma = float(rng.uniform(-math.pi, math.pi))
        rep = check_z_equivalence(tacu_semantic(K, gamma, mode="inline"), multi_phase_diagonal(K, gamma), f"P_{K}")
        out.append(_check(f"tacu_inline_z_equivalence K={K}", rep.passed, **rep.to_dict()))
    rep = check_z_equivalence(tacu_semantic(2, 1.1, omit_correction=True), multi_phase_diagonal(2, 1.1), "P_2")
    out.append(_check("negative_control_detected", not rep.passed and rep.witness is not None, **rep.to_dict()))
    for K in range(1, 17):
        try:
            counted = resource_audit(tacu_semantic(K, 0.3))
            out.append(_check(f"ccz_audit K={K}", True, counted=counted.ccz_states, formula=ccz_count(K)))
        except AuditError as exc:
            out.append(_check(f"ccz_audit K={K}", False, field=exc.field, counted=exc.counted,
                              formula=exc.expected))
    return out


def random_tiny_instances(count: int, seed: int, n_range=(3, 8), k_max: int = 3, m_range=(2, 5)):
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        k = int(rng.integers(1, min(k_max, n) + 1))
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        yield generate_instance(n, k, m / n, seed=seed * 1000 + i)


def suite_oracles(seed: int = 0, count: int = 10) -> list[dict]:
    rng = np.random.default_rng(seed + 1)
    out = []
    for inst in random_tiny_instances(count, seed):
        gamma = float(rng.uniform(-math.pi, math.pi))
        label = f"n={inst.n} k={inst.k} m={inst.m}"
        rep = check_z_equivalence(phaser_tiny(inst, gamma), phaser_diagonal(inst, gamma), "phaser",
                                  policy="sampled", shots=1, seed=seed, probe="vectors")
        out.append(_check(f"phaser_tiny {label}", rep.passed, **rep.to_dict()))
        try:
            rep = check_z_equivalence(oracle_tiny(inst), oracle_diagonal(inst), "oracle",
                                      policy="sampled", shots=1, seed=seed, probe="vectors")
            out.append(_check(f"oracle_tiny {label}", rep.passed, **rep.to_dict()))
        except CapacityError as exc:
            out.append(_check(f"oracle_tiny {label}", False, error=str(exc)))
    rep = check_z_equivalence(zero_oracle(3), zero_diagonal(3), "zero_oracle")
    out.append(_check("zero_oracle n=3", rep.passed, **rep.to_dict()))
    # Clause order must not matter: all per-clause phases are diagonal.
    inst = generate_instance(4, 2, 0.75, seed=seed)
    diag = phaser_diagonal(inst, 0.9)
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        rep = check_z_equivalence(phaser_tiny(inst, 0.9, order=order), diag, "phaser", policy="sampled",
                                  shots=4, seed=seed)
        out.append(_check(f"phaser_order_invariance {order}", rep.passed, **rep.to_dict()))
    return out


def binomial_lower(rate: float, runs: int, alpha: float = 0.01) -> int:
    """Lower 1 - alpha quantile of Binomial(runs, rate): the fewest successes still accepted."""
    return int(binom.ppf(alpha, runs, rate))


def suite_theorem1(seed: int = 0, n_instances: int = 50, runs: int = 400, delta_fail: float = 1 / 16) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    floor = binomial_lower(1 - delta_fail, runs)
    for i in range(n_instances):
        n = int(rng.integers(8, 13))
        inst = generate_instance(n, 3, 4.0, seed=seed * 10_000 + i, filter_satisfiable=True)
        proc = Theorem1Procedure(inst, delta_fail=delta_fail)
        run_rng = np.random.default_rng([seed, i])
        results = [proc.run(run_rng) for _ in range(runs)]
        found = sum(r.found for r in results)
        max_q = max(r.queries for r in results)
        ok = found >= floor and max_q <= proc.budget
        out.append(_check(f"theorem1 instance={i} n={n}", ok, P=proc.P, successes=found, runs=runs,
                          success_floor=floor, max_queries=max_q, budget=proc.budget))
        if i < 5:
            dev = grover_angle_deviation(uniform_prep(n), proc.good)
            out.append(_check(f"grover_angle_law instance={i}", dev < 1e-9, max_deviation=dev))
    return out


def suite_fidelity() -> list[dict]:
    out = []
    worst = 0.0
    for d_dim in (2, 4):
        for p in (0.0, 0.1, 0.5, 1.0):
            for n_apps in range(1, 11):
                closed, sim = depolarizing_fidelity_check(d_dim, p, n_apps)
                worst = max(worst, abs(closed - sim))
    out.append(_check("depolarizing_closed_form", worst < 1e-12, max_deviation=worst))
    for theta in (0.01, 0.05, 0.1, 0.2):
        F, one_minus_d2, resid = distance_fidelity_check(theta)
        out.append(_check(f"distance_fidelity theta={theta}", resid <= theta**4, F=F,
                          one_minus_D2=one_minus_d2, residual=resid))
    return out


def run_suite(name: str = "all", seed: int = 0) -> dict:
    names = SUITES if name == "all" else (name,)
    report = {"suite": name, "seed": seed, "sections": {}}
    for sec in names:
        if sec == "gadgets":
            checks = suite_gadgets(seed)
        elif sec == "oracles":
            checks = suite_oracles(seed)
        elif sec == "theorem1":
            checks = suite_theorem1(seed)
        elif sec == "fidelity":
            checks = suite_fidelity()
        else:
            raise ValueError(f"unknown suite {sec!r}; choose from {SUITES + ('all',)}")
        report["sections"][sec] = {"passed": all(c["passed"] for c in checks),
                                   "failed": [c["name"] for c in checks if not c["passed"]],
                                   "checks": checks}
    report["passed"] = all(s["passed"] for s in report["sections"].values())
    return report
