"""Circuit description with measurements, feedback and ancilla lifetimes.

Classical conditions are GF(2) polynomials over recorded outcome bits: a
tuple of monomials, each a tuple of bit names, evaluated as the XOR of the
ANDs. The empty monomial is the constant 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import ParameterError

GATES_1Q = {"H", "X", "Z", "S", "P", "PX"}
GATES_2Q = {"CX", "CZ"}
GATES_3Q = {"CCZ"}
PARAM_GATES = {"P", "PX"}
MEASURE_BASES = {"X": 1, "Z": 1, "XX": 2, "ZZ": 2}
ALLOC_STATES = {"0": 1, "+": 1, "ccz": 3}

Condition = tuple  # tuple[tuple[str, ...], ...]


def eval_condition(cond: Condition | None, record: dict) -> bool:
    if cond is None:
        return True
    parity = 0
    for mono in cond:
        term = 1
        for bit in mono:
            term &= record[bit]
        parity ^= term
    return bool(parity)


def cond_bits(cond: Condition | None) -> set:
    return set() if cond is None else {b for mono in cond for b in mono}


@dataclass(frozen=True)
class Op:
    kind: str  # gate | measure | alloc | release
    qubits: tuple
    name: str = ""  # gate name, measurement basis, or allocated/released state
    param: float | None = None
    cond: Condition | None = None
    bit: str | None = None
    discard: bool = False
    tag: str = ""

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "qubits": list(self.qubits), "name": self.name}
        if self.param is not None:
            out["param"] = self.param
        if self.cond is not None:
            out["cond"] = [list(m) for m in self.cond]
        if self.bit is not None:
            out["bit"] = self.bit
        if self.discard:
            out["discard"] = True
        if self.tag:
            out["tag"] = self.tag
        return out


@dataclass
class Circuit:
    inputs: list
    ops: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    _counter: int = 0

    def __post_init__(self):
        self.inputs = list(self.inputs)
        if len(set(self.inputs)) != len(self.inputs):
            raise ParameterError("duplicate input qubit labels")
        self._live = set(self.inputs)
        self._bits: set = set()

    # -- naming -----------------------------------------------------------
    def fresh(self, prefix: str) -> str:
        self._counter += 1
        return f"{prefix}{self._counter}"

    # -- validation -------------------------------------------------------
    def _need_live(self, qubits: Iterable[str]) -> None:
        for q in qubits:
            if q not in self._live:
                raise ParameterError(f"qubit {q!r} is not live")

    def _need_bits(self, cond: Condition | None) -> None:
        missing = cond_bits(cond) - self._bits
        if missing:
            raise ParameterError(f"condition references unrecorded bits {sorted(missing)}")

    # -- builders ---------------------------------------------------------
    def gate(self, name: str, *qubits: str, param: float | None = None,
             cond: Condition | None = None, tag: str = "") -> "Circuit":
        arity = 1 if name in GATES_1Q else 2 if name in GATES_2Q else 3 if name in GATES_3Q else None
        if arity is None:
            raise ParameterError(f"unknown gate {name!r}")
        if len(qubits) != arity or len(set(qubits)) != arity:
            raise ParameterError(f"gate {name} needs {arity} distinct qubits, got {qubits}")
        if (name in PARAM_GATES) != (param is not None):
            raise ParameterError(f"gate {name} parameter mismatch")
        self._need_live(qubits)
        self._need_bits(cond)
        self.ops.append(Op("gate", tuple(qubits), name, param, cond, tag=tag))
        return self

    def measure(self, basis: str, *qubits: str, bit: str | None = None, discard: bool = False,
                tag: str = "") -> str:
        if basis not in MEASURE_BASES or len(qubits) != MEASURE_BASES[basis]:
            raise ParameterError(f"bad measurement {basis} on {qubits}")
        if discard and len(qubits) != 1:
            raise ParameterError("only single-qubit measurements can discard")
        self._need_live(qubits)
        bit = bit or self.fresh("m")
        if bit in self._bits:
            raise ParameterError(f"bit {bit!r} already recorded")
        self._bits.add(bit)
        self.ops.append(Op("measure", tuple(qubits), basis, bit=bit, discard=discard, tag=tag))
        if discard:
            self._live.discard(qubits[0])
        return bit

    def alloc(self, state: str = "0", prefix: str = "a", tag: str = "") -> tuple:
        if state not in ALLOC_STATES:
            raise ParameterError(f"unknown ancilla state {state!r}")
        labels = tuple(self.fresh(prefix) for _ in range(ALLOC_STATES[state]))
        self._live.update(labels)
        self.ops.append(Op("alloc", labels, state, tag=tag))
        return labels

    def release(self, qubit: str, state: str = "0", tag: str = "") -> None:
        if state not in ("0", "+"):
            raise ParameterError(f"can only release into |0> or |+>, got {state!r}")
        self._need_live([qubit])
        self._live.discard(qubit)
        self.ops.append(Op("release", (qubit,), state, tag=tag))

    # -- inspection -------------------------------------------------------
    @property
    def live(self) -> set:
        return set(self._live)

    def peak_width(self) -> int:
        live = len(self.inputs)
        peak = live
        for op in self.ops:
            if op.kind == "alloc":
                live += len(op.qubits)
            elif op.kind == "release" or (op.kind == "measure" and op.discard):
                live -= 1
            peak = max(peak, live)
        return peak

    def count(self, kind: str, name: str | None = None, tag_prefix: str | None = None) -> int:
        return sum(1 for op in self.ops if op.kind == kind and (name is None or op.name == name)
                   and (tag_prefix is None or op.tag.startswith(tag_prefix)))

    def to_json(self) -> str:
        return json.dumps({"inputs": self.inputs, "meta": self.meta,
                           "ops": [op.to_dict() for op in self.ops]}, sort_keys=True)
