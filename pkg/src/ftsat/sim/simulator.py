"""Dense state-vector simulation with measurement branching.

The state is a tensor with one labelled axis per live qubit. Ancillas are
appended as new axes and removed again when measured out or released, so
the register only holds what is alive at each point of the circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import CapacityError, ConsistencyError, ParameterError
from .circuit import Circuit, Op, eval_condition

EXHAUSTIVE_MAX_QUBITS = 16
SAMPLED_MAX_QUBITS = 22
PRUNE = 1e-14
NORM_TOL = 1e-10

_SQ = 1 / math.sqrt(2)
H_MAT = np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex)
CCZ_RESOURCE = np.full((2, 2, 2), 1 / math.sqrt(8), dtype=complex)
CCZ_RESOURCE[1, 1, 1] *= -1


class BranchingSimState:
    """Amplitude tensor over labelled qubits plus the outcome record of one branch."""

    def __init__(self, tensor: np.ndarray, labels: list, record: dict | None = None, prob: float = 1.0):
        if tensor.ndim != len(labels):
            raise ParameterError("tensor rank does not match label count")
        self.tensor = tensor
        self.labels = list(labels)
        self.record = dict(record or {})
        self.prob = prob

    @classmethod
    def from_vector(cls, vec, labels) -> "BranchingSimState":
        """Bit i of the vector index is the qubit labels[i]."""
        vec = np.array(vec, dtype=complex)  # copy: gates act in place
        n = len(labels)
        if vec.shape != (2**n,):
            raise ParameterError(f"state vector of length {vec.shape} does not match {n} qubits")
        tensor = vec.reshape([2] * n) if n else vec.reshape(())
        return cls(tensor, list(reversed(labels)))

    def vector(self, order) -> np.ndarray:
        """State vector with bit i of the index equal to qubit order[i]."""
        order = list(order)
        if sorted(order) != sorted(self.labels):
            raise ParameterError(f"order {order} does not match live qubits {self.labels}")
        axes = [self.labels.index(q) for q in reversed(order)]
        return np.transpose(self.tensor, axes).reshape(-1)

    def copy(self) -> "BranchingSimState":
        return BranchingSimState(self.tensor.copy(), self.labels, self.record, self.prob)

    def norm(self) -> float:
        return float(np.vdot(self.tensor, self.tensor).real)

    def axis(self, q: str) -> int:
        return self.labels.index(q)


def _slice(ndim: int, fixed: dict) -> tuple:
    idx = [slice(None)] * ndim
    for ax, val in fixed.items():
        idx[ax] = val
    return tuple(idx)


def _apply_matrix(st: BranchingSimState, q: str, U: np.ndarray) -> None:
    ax = st.axis(q)
    st.tensor = np.moveaxis(np.tensordot(U, st.tensor, axes=([1], [ax])), 0, ax)


def _phase_on_ones(st: BranchingSimState, qubits, phase: complex) -> None:
    st.tensor[_slice(st.tensor.ndim, {st.axis(q): 1 for q in qubits})] *= phase


def _flip(st: BranchingSimState, target: str, controls=()) -> None:
    tax = st.axis(target)
    if not controls:
        st.tensor = np.flip(st.tensor, axis=tax).copy()
        return
    sl = _slice(st.tensor.ndim, {st.axis(c): 1 for c in controls})
    sub_ax = tax - sum(1 for c in controls if st.axis(c) < tax)
    st.tensor[sl] = np.flip(st.tensor[sl], axis=sub_ax)


def apply_gate(st: BranchingSimState, op: Op) -> None:
    name, qs = op.name, op.qubits
    if name == "H":
        _apply_matrix(st, qs[0], H_MAT)
    elif name == "X":
        _flip(st, qs[0])
    elif name == "Z":
        _phase_on_ones(st, qs, -1)
    elif name == "S":
        _phase_on_ones(st, qs, 1j)
    elif name == "P":
        _phase_on_ones(st, qs, np.exp(1j * op.param))
    elif name == "PX":
        _apply_matrix(st, qs[0], H_MAT)
        _phase_on_ones(st, qs, np.exp(1j * op.param))
        _apply_matrix(st, qs[0], H_MAT)
    elif name in ("CZ", "CCZ"):
        _phase_on_ones(st, qs, -1)
    elif name == "CX":
        _flip(st, qs[1], controls=(qs[0],))
    else:
        raise ParameterError(f"unknown gate {name!r}")


def _alloc(st: BranchingSimState, op: Op, limit: int) -> None:
    if len(st.labels) + len(op.qubits) > limit:
        raise CapacityError(f"{len(st.labels) + len(op.qubits)} live qubits exceed the limit of {limit}")
    if op.name == "0":
        res = np.array([1, 0], dtype=complex)
    elif op.name == "+":
        res = np.array([_SQ, _SQ], dtype=complex)
    else:
        res = CCZ_RESOURCE
    st.tensor = np.multiply.outer(st.tensor, res)
    st.labels.extend(op.qubits)


def _release(st: BranchingSimState, op: Op) -> None:
    q = op.qubits[0]
    ax = st.axis(q)
    t0 = st.tensor[_slice(st.tensor.ndim, {ax: 0})]
    t1 = st.tensor[_slice(st.tensor.ndim, {ax: 1})]
    if op.name == "0":
        kept, residue = t0, t1
    else:
        kept, residue = (t0 + t1) * _SQ, (t0 - t1) * _SQ
    leak = float(np.vdot(residue, residue).real)
    if leak > 1e-9:
        raise ConsistencyError(f"released qubit {q} is not in |{op.name}> (leakage {leak:.3g})")
    st.tensor = np.ascontiguousarray(kept)
    del st.labels[ax]


def _outcomes(st: BranchingSimState, op: Op):
    """(bit value, probability, projected state) for each possible outcome."""
    basis, qs = op.name, op.qubits
    work = st.copy()
    if basis in ("X", "XX"):
        for q in qs:
            _apply_matrix(work, q, H_MAT)
    t = work.tensor
    out = []
    if len(qs) == 1:
        ax = work.axis(qs[0])
        for b in (0, 1):
            part = t[_slice(t.ndim, {ax: b})]
            out.append((b, float(np.vdot(part, part).real), part, ax))
    else:
        a0, a1 = work.axis(qs[0]), work.axis(qs[1])
        for b in (0, 1):
            proj = t.copy()
            for x in (0, 1):
                proj[_slice(t.ndim, {a0: x, a1: x ^ b ^ 1})] = 0
            out.append((b, float(np.vdot(proj, proj).real), proj, None))
    results = []
    for b, prob, part, ax in out:
        if prob <= 0:
            continue
        child = BranchingSimState(work.tensor, work.labels, st.record, st.prob * prob)
        if ax is not None:
            if op.discard:
                child.tensor = np.ascontiguousarray(part) / math.sqrt(prob)
                child.labels = [q for q in work.labels if q != qs[0]]
            else:
                full = np.zeros_like(t)
                full[_slice(t.ndim, {ax: b})] = part
                child.tensor = full / math.sqrt(prob)
        else:
            child.tensor = part / math.sqrt(prob)
        if basis in ("X", "XX") and not op.discard:
            for q in qs:
                _apply_matrix(child, q, H_MAT)
        child.record[op.bit] = b
        results.append((b, prob, child))
    return results


def _check_norm(st: BranchingSimState, where: int) -> None:
    nrm = st.norm()
    if abs(nrm - 1) > NORM_TOL:
        raise ConsistencyError(f"state norm {nrm!r} after op {where}")


def _run_deterministic(st: BranchingSimState, ops, start: int, limit: int) -> int:
    """Apply ops from ``start`` until the next measurement; returns its index."""
    i = start
    while i < len(ops):
        op = ops[i]
        if op.kind == "measure":
            return i
        if op.kind == "gate":
            if eval_condition(op.cond, st.record):
                apply_gate(st, op)
        elif op.kind == "alloc":
            _alloc(st, op, limit)
        elif op.kind == "release":
            _release(st, op)
        _check_norm(st, i)
        i += 1
    return i


@dataclass
class Branch:
    record: dict
    prob: float
    state: BranchingSimState


def _initial(circuit: Circuit, initial) -> BranchingSimState:
    if isinstance(initial, BranchingSimState):
        st = initial.copy()
        missing = set(circuit.inputs) - set(st.labels)
        if missing:
            raise ParameterError(f"initial state lacks circuit inputs {sorted(missing)}")
        return st
    if initial is None:
        vec = np.zeros(2 ** len(circuit.inputs), dtype=complex)
        vec[0] = 1
        initial = vec
    return BranchingSimState.from_vector(initial, circuit.inputs)


def simulate(circuit: Circuit, initial=None, policy: str = "exhaustive", seed: int = 0,
             shots: int = 1) -> list[Branch]:
    """Run ``circuit``; exhaustive mode returns every branch with its exact probability.

    Sampled mode returns one branch per shot, each drawn with the Born rule.
    ``initial`` is a state vector over the inputs, a BranchingSimState that may
    carry extra spectator qubits, or None for |0...0>.
    """
    if policy not in ("exhaustive", "sampled"):
        raise ParameterError(f"unknown branch policy {policy!r}")
    limit = EXHAUSTIVE_MAX_QUBITS if policy == "exhaustive" else SAMPLED_MAX_QUBITS
    start = _initial(circuit, initial)
    if len(start.labels) > limit:
        raise CapacityError(f"{len(start.labels)} qubits exceed the {policy} limit of {limit}")
    _check_norm(start, -1)
    ops = circuit.ops
    results: list[Branch] = []

    if policy == "sampled":
        rng = np.random.default_rng(seed)
        for _ in range(shots):
            st = start.copy()
            i = 0
            while True:
                i = _run_deterministic(st, ops, i, limit)
                if i == len(ops):
                    break
                outs = _outcomes(st, ops[i])
                u = rng.random()
                acc = 0.0
                chosen = outs[-1]
                for o in outs:
                    acc += o[1]
                    if u < acc:
                        chosen = o
                        break
                st = chosen[2]
                i += 1
            results.append(Branch(st.record, st.prob, st))
        return results

    stack = [(0, start)]
    while stack:
        i, st = stack.pop()
        i = _run_deterministic(st, ops, i, limit)
        if i == len(ops):
            results.append(Branch(st.record, st.prob, st))
            continue
        for _, _, child in reversed(_outcomes(st, ops[i])):
            if child.prob >= PRUNE:
                stack.append((i + 1, child))
    total = sum(b.prob for b in results)
    if abs(total - 1) > 1e-9:
        raise ConsistencyError(f"branch probabilities sum to {total!r}")
    return results


def run_unitary(circuit: Circuit, vec) -> np.ndarray:
    """Output vector of a measurement-free circuit with no net ancillas."""
    if any(op.kind == "measure" for op in circuit.ops):
        raise ParameterError("run_unitary needs a measurement-free circuit")
    (branch,) = simulate(circuit, vec)
    return branch.state.vector(circuit.inputs)
