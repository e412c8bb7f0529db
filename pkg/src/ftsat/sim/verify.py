"""Z-equivalence checks and resource audits for gadget circuits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import AuditError, CapacityError, ParameterError
from ..gadgets import GadgetCost, tacu_ancillas, tacu_cost
from ..sat import SatInstance, satisfied_mask
from .circuit import Circuit
from .simulator import BranchingSimState, simulate

Z_EQ_TOL = 1e-8
MAX_DATA_QUBITS = 10


@dataclass
class ZEquivalenceReport:
    target: str
    max_deviation: float
    branches_checked: int
    inputs_checked: int
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_deviation < Z_EQ_TOL

    def to_dict(self) -> dict:
        return {"target": self.target, "passed": self.passed, "max_deviation": self.max_deviation,
                "branches_checked": self.branches_checked, "inputs_checked": self.inputs_checked,
                "witness": self.witness}


def choi_state(labels: list, ref_prefix: str = "ref") -> tuple[BranchingSimState, list]:
    """Maximally entangled state between ``labels`` and fresh reference qubits."""
    K = len(labels)
    refs = [f"{ref_prefix}{i}" for i in range(K)]
    tensor = (np.eye(2**K, dtype=complex) / math.sqrt(2**K)).reshape([2] * (2 * K))
    return BranchingSimState(tensor, list(labels) + refs), refs


def branch_operator(state: BranchingSimState, data: list, refs: list) -> np.ndarray:
    """Operator M with M[out, in] read off a Choi-state branch (bit i of an index is data[i])."""
    extra = set(state.labels) - set(data) - set(refs)
    if extra:
        raise ParameterError(f"branch still holds ancillas {sorted(extra)}")
    axes = [state.axis(q) for q in reversed(data)] + [state.axis(q) for q in reversed(refs)]
    dim = 2 ** len(data)
    return np.transpose(state.tensor, axes).reshape(dim, dim) * math.sqrt(dim)


def probe_inputs(dim: int, n_random: int = 20, seed: int = 0) -> np.ndarray:
    """Columns: every basis state, then random normalized states."""
    rng = np.random.default_rng(seed)
    rand = rng.normal(size=(dim, n_random)) + 1j * rng.normal(size=(dim, n_random))
    rand /= np.linalg.norm(rand, axis=0)
    return np.hstack([np.eye(dim, dtype=complex), rand])


def operator_deviation(M: np.ndarray, target: np.ndarray, inputs: np.ndarray) -> float:
    """max_v ||M v - e^{i phi} T v|| with the best single global phase phi."""
    out_m = M @ inputs
    out_t = target @ inputs
    overlap = np.vdot(out_t, out_m)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(np.max(np.linalg.norm(out_m - phase * out_t, axis=0)))


def check_z_equivalence(circuit: Circuit, target, target_name: str = "", policy: str = "exhaustive",
                        shots: int = 16, seed: int = 0, n_random: int = 20, correction=None,
                        probe: str = "choi") -> ZEquivalenceReport:
    """Compare every branch of ``circuit`` against ``target`` up to a branch-wise global phase.

    ``target`` is a unitary matrix or a diagonal given as a vector, indexed
    with bit i equal to circuit.inputs[i]. ``correction`` optionally maps an
    outcome record to a diagonal applied after the circuit (a post-hoc
    Pauli-frame rule for circuits built without in-line corrections).

    ``probe="choi"`` reads each branch operator off a Choi state, doubling
    the qubit count. ``probe="vectors"`` instead runs every probe input on
    the data qubits alone; since branch operators are linear, agreement on
    the basis plus generic superpositions pins the same global phase.
    """
    data = list(circuit.inputs)
    if len(data) > MAX_DATA_QUBITS:
        raise CapacityError(f"Z-equivalence check supports at most {MAX_DATA_QUBITS} data qubits")
    dim = 2 ** len(data)
    target = np.asarray(target, dtype=complex)
    T = np.diag(target) if target.ndim == 1 else target
    if T.shape != (dim, dim):
        raise ParameterError(f"target shape {T.shape} does not match {len(data)} data qubits")
    inputs = probe_inputs(dim, n_random, seed)
    if probe == "vectors":
        return _check_vectors(circuit, T, target_name, policy, shots, seed, inputs, correction)
    if probe != "choi":
        raise ParameterError(f"unknown probe mode {probe!r}")
    start, refs = choi_state(data)
    branches = simulate(circuit, start, policy=policy, seed=seed, shots=shots)
    worst, witness = 0.0, None
    for br in branches:
        M = branch_operator(br.state, data, refs)
        if correction is not None:
            M = np.diag(np.asarray(correction(br.record), dtype=complex)) @ M
        dev = operator_deviation(M, T, inputs)
        if dev > worst:
            worst, witness = dev, dict(br.record)
    report = ZEquivalenceReport(target=target_name, max_deviation=worst, branches_checked=len(branches),
                                inputs_checked=inputs.shape[1])
    if not report.passed:
        report.witness = witness
    return report


def _check_vectors(circuit, T, target_name, policy, shots, seed, inputs, correction) -> ZEquivalenceReport:
    worst, witness, n_branches = 0.0, None, 0
    for col in range(inputs.shape[1]):
        v = inputs[:, col]
        want = T @ v
        for br in simulate(circuit, v, policy=policy, seed=seed + col, shots=shots):
            out = br.state.vector(circuit.inputs)
            if correction is not None:
                out = np.asarray(correction(br.record), dtype=complex) * out
            overlap = np.vdot(want, out)
            phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
            dev = float(np.linalg.norm(out - phase * want))
            n_branches += 1
            if dev > worst:
                worst, witness = dev, {"input": col, **br.record}
    report = ZEquivalenceReport(target=target_name, max_deviation=worst, branches_checked=n_branches,
                                inputs_checked=inputs.shape[1])
    if not report.passed:
        report.witness = witness
    return report


# -- targets -----------------------------------------------------------------

def multi_phase_diagonal(K: int, gamma: float) -> np.ndarray:
    diag = np.ones(2**K, dtype=complex)
    diag[-1] = np.exp(1j * gamma)
    return diag


def phaser_diagonal(instance: SatInstance, gamma: float) -> np.ndarray:
    """e^{-i gamma * (#satisfied clauses)} over all assignments, by direct evaluation."""
    counts = np.zeros(2**instance.n)
    xs = np.arange(2**instance.n)
    for clause in instance.clauses:
        ok = np.zeros(xs.shape[0], dtype=bool)
        for lit in clause:
            ok |= ((xs >> lit.variable) & 1).astype(bool) != lit.negated
        counts += ok
    return np.exp(-1j * gamma * counts)


def oracle_diagonal(instance: SatInstance) -> np.ndarray:
    return np.where(satisfied_mask(instance), -1.0, 1.0).astype(complex)


def zero_diagonal(n: int) -> np.ndarray:
    diag = np.ones(2**n, dtype=complex)
    diag[0] = -1
    return diag


# -- resource audit -------------------------------------------------------------

def counted_ccz(circuit: Circuit) -> int:
    injected = circuit.count("alloc", "ccz")
    inline = sum(1 for op in circuit.ops if op.kind == "gate" and op.name == "CCZ" and op.tag.startswith("and:"))
    return injected + inline


def resource_audit(circuit: Circuit, strict: bool = True) -> GadgetCost:
    """Count CCZ consumption, AND-tree width and data-touch levels of a TACU circuit.

    With ``strict`` every counted field must equal the tacu_cost contract;
    the first mismatch raises AuditError naming the field.
    """
    if circuit.meta.get("gadget") != "tacu":
        raise ParameterError("resource_audit expects a circuit from tacu_semantic")
    K = circuit.meta["K"]
    contract = tacu_cost(K, n_P=0)
    data = set(circuit.inputs)
    touch_levels = {op.tag.split(":")[1] for op in circuit.ops
                    if op.kind == "gate" and op.cond is None and data & set(op.qubits)
                    and op.tag.split(":")[0] in ("and", "copy")}
    counted = GadgetCost(
        ccz_states=counted_ccz(circuit),
        t_states=0,
        ancillas=circuit.meta.get("declared_ancillas", tacu_ancillas(K)),
        data_touch_cycles=len(touch_levels),
        total_cycles=contract.total_cycles,
        dispatch_writes_after=contract.dispatch_writes_after,
    )
    if strict:
        for name in ("ccz_states", "ancillas", "data_touch_cycles"):
            if getattr(counted, name) != getattr(contract, name):
                raise AuditError(name, getattr(counted, name), getattr(contract, name))
    return counted


def and_tree_width(circuit: Circuit) -> int:
    """Number of pairwise-AND ancillas allocated by the tree."""
    return sum(1 for op in circuit.ops if op.kind == "alloc" and op.tag.startswith("and:") and op.name == "+")
