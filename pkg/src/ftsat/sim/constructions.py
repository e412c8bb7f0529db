"""Semantic gadget circuits: TACU, phaser, k-SAT oracle, zero-state oracle."""

from __future__ import annotations

import math

from ..errors import CapacityError, ParameterError
from ..gadgets import tacu_ancillas
from ..sat import SatInstance
from ..scheduler import build_collision_graph, color_clauses
from .circuit import Circuit


def _ccz(circ: Circuit, a: str, b: str, c: str, mode: str, tag: str) -> None:
    """CCZ on (a, b, c), either in-line or by consuming an injected CCZ|+++> state."""
    if mode == "inline":
        circ.gate("CCZ", a, b, c, tag=tag)
        return
    if mode != "inject":
        raise ParameterError(f"unknown CCZ mode {mode!r}")
    r1, r2, r3 = circ.alloc("ccz", prefix="r", tag=tag)
    for x, r in ((a, r1), (b, r2), (c, r3)):
        circ.gate("CX", x, r, tag=tag)
    m1 = circ.measure("Z", r1, discard=True, tag=tag)
    m2 = circ.measure("Z", r2, discard=True, tag=tag)
    m3 = circ.measure("Z", r3, discard=True, tag=tag)
    fix = tag + ":fix"
    circ.gate("CZ", a, b, cond=((m3,),), tag=fix)
    circ.gate("CZ", a, c, cond=((m2,),), tag=fix)
    circ.gate("CZ", b, c, cond=((m1,),), tag=fix)
    circ.gate("Z", a, cond=((m2, m3),), tag=fix)
    circ.gate("Z", b, cond=((m1, m3),), tag=fix)
    circ.gate("Z", c, cond=((m1, m2),), tag=fix)
    circ.meta["ccz_injections"] = circ.meta.get("ccz_injections", 0) + 1


def compute_and_tree(circ: Circuit, wires: list, mode: str = "inject"):
    """Write the AND of ``wires`` onto one qubit.

    Pairs are AND-ed level by level into |+>-prepared ancillas; an odd wire
    out is copied into a fresh ancilla. Returns (apex, steps) where steps
    lists the computations to undo, innermost last.
    """
    if not wires:
        raise ParameterError("AND tree needs at least one wire")
    steps = []
    level = 1
    current = list(wires)
    if len(current) == 1:
        (w,) = current
        (a,) = circ.alloc("0", prefix="c", tag=f"copy:{level}")
        circ.gate("CX", w, a, tag=f"copy:{level}")
        steps.append(("copy", a, (w,)))
        return a, steps
    while len(current) > 1:
        nxt = []
        for i in range(0, len(current) - 1, 2):
            x, y = current[i], current[i + 1]
            (t,) = circ.alloc("+", prefix="t", tag=f"and:{level}")
            _ccz(circ, x, y, t, mode, tag=f"and:{level}")
            circ.gate("H", t, tag=f"and:{level}")
            steps.append(("and", t, (x, y)))
            nxt.append(t)
        if len(current) % 2:
            w = current[-1]
            (a,) = circ.alloc("0", prefix="c", tag=f"copy:{level}")
            circ.gate("CX", w, a, tag=f"copy:{level}")
            steps.append(("copy", a, (w,)))
            nxt.append(a)
        current = nxt
        level += 1
    return current[0], steps


def uncompute_and_tree(circ: Circuit, steps, omit_correction: bool = False) -> None:
    """Measure out tree ancillas in X; outcome 1 leaves a CZ (or Z) to undo on the inputs."""
    for kind, anc, inputs in reversed(steps):
        bit = circ.measure("X", anc, discard=True, tag="uncompute")
        if omit_correction:
            continue
        if kind == "and":
            circ.gate("CZ", *inputs, cond=((bit,),), tag="uncompute:fix")
        else:
            circ.gate("Z", inputs[0], cond=((bit,),), tag="uncompute:fix")


def append_tacu(circ: Circuit, data: list, gamma: float, mode: str = "inject",
                omit_correction: bool = False) -> None:
    """Phase e^{i gamma} on the all-ones component of ``data``."""
    apex, steps = compute_and_tree(circ, list(data), mode)
    circ.gate("P", apex, param=gamma, tag="payload")
    uncompute_and_tree(circ, steps, omit_correction)


def tacu_semantic(K: int, gamma: float, mode: str = "inject", omit_correction: bool = False) -> Circuit:
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    circ = Circuit([f"d{i}" for i in range(K)])
    circ.meta.update({"gadget": "tacu", "K": K, "gamma": gamma, "ccz_injections": 0,
                      "declared_ancillas": tacu_ancillas(K)})
    append_tacu(circ, circ.inputs, gamma, mode, omit_correction)
    return circ


def _literal_masks(clause):
    """Distinct variables of a clause and whether it is a tautology."""
    pos, neg = set(), set()
    for lit in clause:
        (neg if lit.negated else pos).add(lit.variable)
    return sorted(pos), sorted(neg), bool(pos & neg)


def clause_order(instance: SatInstance) -> list:
    """Clause indices in dispatch order of a collision-graph coloring."""
    part = color_clauses(build_collision_graph(instance))
    return [j for p in part.parts for j in p]


def phaser_tiny(instance: SatInstance, gamma: float, mode: str = "inject", order=None,
                max_vars: int = 8) -> Circuit:
    """Diagonal e^{-i gamma * (#satisfied clauses)} up to global phase.

    Each clause contributes e^{i gamma} when all its literals are false: a
    TACU on its variables conjugated by X on the positive literals.
    """
    if instance.n > max_vars:
        raise CapacityError(f"phaser_tiny supports at most {max_vars} variables")
    circ = Circuit([f"x{i}" for i in range(instance.n)])
    circ.meta.update({"gadget": "phaser", "gamma": gamma, "ccz_injections": 0})
    for j in (clause_order(instance) if order is None else order):
        pos, neg, tautology = _literal_masks(instance.clauses[j])
        if tautology:
            continue
        qubits = [circ.inputs[v] for v in sorted(pos + neg)]
        for v in pos:
            circ.gate("X", circ.inputs[v], tag=f"clause{j}")
        append_tacu(circ, qubits, gamma, mode)
        for v in pos:
            circ.gate("X", circ.inputs[v], tag=f"clause{j}")
    return circ


def _toffoli_inline(circ: Circuit, controls: list, target: str) -> None:
    """Multi-controlled X from an in-line AND tree, uncomputed coherently."""
    if len(controls) == 1:
        circ.gate("CX", controls[0], target)
        return
    apex, steps = compute_and_tree(circ, controls, mode="inline")
    circ.gate("CX", apex, target, tag="flag")
    for kind, anc, inputs in reversed(steps):
        if kind == "and":
            circ.gate("H", anc, tag="flag:undo")
            circ.gate("CCZ", inputs[0], inputs[1], anc, tag="flag:undo")
            circ.release(anc, "+", tag="flag:undo")
        else:
            circ.gate("CX", inputs[0], anc, tag="flag:undo")
            circ.release(anc, "0", tag="flag:undo")


def oracle_tiny(instance: SatInstance, mode: str = "inject", max_vars: int = 8) -> Circuit:
    """Sign flip on satisfying assignments.

    Clause flags are computed with in-line Toffolis, AND-ed together by a
    TACU(pi), then uncomputed.
    """
    if instance.n > max_vars:
        raise CapacityError(f"oracle_tiny supports at most {max_vars} variables")
    circ = Circuit([f"x{i}" for i in range(instance.n)])
    circ.meta.update({"gadget": "oracle", "ccz_injections": 0})
    flags = []
    flip_back = []
    for j in clause_order(instance) if instance.m else []:
        pos, neg, tautology = _literal_masks(instance.clauses[j])
        if tautology:
            continue
        (f,) = circ.alloc("0", prefix="f", tag=f"clause{j}")
        for v in pos:
            circ.gate("X", circ.inputs[v])
        _toffoli_inline(circ, [circ.inputs[v] for v in sorted(pos + neg)], f)
        for v in pos:
            circ.gate("X", circ.inputs[v])
        circ.gate("X", f)  # flag = clause satisfied
        flags.append(f)
        flip_back.append((j, f, pos, neg))
    if not flags:
        return circ  # every assignment satisfies an empty (or all-tautology) formula: global phase
    append_tacu(circ, flags, math.pi, mode)
    for j, f, pos, neg in reversed(flip_back):
        circ.gate("X", f)
        for v in pos:
            circ.gate("X", circ.inputs[v])
        _toffoli_inline(circ, [circ.inputs[v] for v in sorted(pos + neg)], f)
        for v in pos:
            circ.gate("X", circ.inputs[v])
        circ.release(f, "0")
    return circ


def zero_oracle(n: int, mode: str = "inject") -> Circuit:
    """Sign flip on |0...0> only: X^n . TACU(pi) . X^n."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    circ = Circuit([f"x{i}" for i in range(n)])
    circ.meta.update({"gadget": "zero_oracle", "ccz_injections": 0})
    for q in circ.inputs:
        circ.gate("X", q)
    append_tacu(circ, circ.inputs, math.pi, mode)
    for q in circ.inputs:
        circ.gate("X", q)
    return circ
