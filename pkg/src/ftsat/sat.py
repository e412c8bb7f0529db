"""Random k-SAT instances, DIMACS I/O and brute-force ground truth."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, DimacsError, ParameterError

BRUTE_FORCE_MAX_N = 24

Assignment = tuple  # tuple of 0/1 ints, one per variable


class Literal(NamedTuple):
    variable: int
    negated: bool = False

    def value(self, bit: int) -> bool:
        return bool(bit) != self.negated


@dataclass(frozen=True)
class SatInstance:
    """A CNF formula with exactly ``k`` literals per clause.

    Duplicate variables inside one clause are kept as generated.
    """

    n: int
    k: int
    clauses: tuple
    ratio: float | None = None
    seed: int | None = None

    def __post_init__(self):
        clauses = tuple(tuple(Literal(int(v), bool(neg)) for v, neg in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n < 0:
            raise ParameterError(f"n must be non-negative, got {self.n}")
        for j, clause in enumerate(clauses):
            if len(clause) != self.k:
                raise ParameterError(f"clause {j} has {len(clause)} literals, expected k={self.k}")
            for lit in clause:
                if not 0 <= lit.variable < self.n:
                    raise ParameterError(f"clause {j} references variable {lit.variable} outside [0, {self.n})")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @cached_property
    def variables(self) -> np.ndarray:
        """(m, k) array of variable indices."""
        return np.array([[lit.variable for lit in c] for c in self.clauses], dtype=np.int64).reshape(self.m, self.k)

    @cached_property
    def negations(self) -> np.ndarray:
        """(m, k) boolean array, True where the literal is negated."""
        return np.array([[lit.negated for lit in c] for c in self.clauses], dtype=bool).reshape(self.m, self.k)

    def variable_sets(self) -> list[frozenset]:
        """Distinct variables addressed by each clause."""
        return [frozenset(lit.variable for lit in c) for c in self.clauses]

    def occurrences(self) -> np.ndarray:
        """Number of clauses in which each variable occurs (counted once per clause)."""
        counts = np.zeros(self.n, dtype=np.int64)
        for vs in self.variable_sets():
            for v in vs:
                counts[v] += 1
        return counts


def generate_instance(n: int, k: int, r: float, seed: int, filter_satisfiable: bool = False) -> SatInstance:
    """Draw ``round(r*n)`` clauses of ``k`` literals.

    Variables are sampled uniformly with replacement and each literal is
    negated with probability 1/2. With ``filter_satisfiable`` the draw is
    repeated (deterministically, attempt by attempt) until brute force finds
    a solution; only available for small ``n``.
    """
    if n < 1 or k < 1 or n < k:
        raise ParameterError(f"need n >= k >= 1, got n={n}, k={k}")
    if not r > 0:
        raise ParameterError(f"clause ratio must be positive, got {r}")
    if filter_satisfiable and n > BRUTE_FORCE_MAX_N:
        raise CapacityError(f"satisfiability filtering needs n <= {BRUTE_FORCE_MAX_N}")
    m = int(round(r * n))
    attempt = 0
    while True:
        rng = np.random.default_rng(np.random.SeedSequence((int(seed), attempt)))
        variables = rng.integers(0, n, size=(m, k))
        negated = rng.integers(0, 2, size=(m, k)).astype(bool)
        clauses = tuple(tuple(zip(variables[j].tolist(), negated[j].tolist())) for j in range(m))
        inst = SatInstance(n=n, k=k, clauses=clauses, ratio=r, seed=seed)
        if not filter_satisfiable or brute_force_count(inst) > 0:
            return inst
        attempt += 1


def _check_assignment(instance: SatInstance, a: Sequence[int]) -> np.ndarray:
    bits = np.asarray(a, dtype=np.int64).ravel()
    if bits.shape[0] != instance.n:
        raise ParameterError(f"assignment has length {bits.shape[0]}, instance has n={instance.n}")
    return bits


def evaluate(instance: SatInstance, a: Sequence[int]) -> tuple[int, bool]:
    """Return (number of satisfied clauses, whether all are satisfied)."""
    bits = _check_assignment(instance, a)
    if instance.m == 0:
        return 0, True
    lit_true = bits[instance.variables].astype(bool) != instance.negations
    satisfied = int(lit_true.any(axis=1).sum())
    return satisfied, satisfied == instance.m


def satisfied_mask(instance: SatInstance, n_max: int = BRUTE_FORCE_MAX_N) -> np.ndarray:
    """Boolean vector over all 2**n basis states; index bit i is variable i."""
    if instance.n > n_max:
        raise CapacityError(f"exhaustive evaluation limited to n <= {n_max}, got {instance.n}")
    xs = np.arange(2**instance.n, dtype=np.int64)
    ok = np.ones(xs.shape[0], dtype=bool)
    for clause in instance.clauses:
        clause_ok = np.zeros(xs.shape[0], dtype=bool)
        for lit in clause:
            bit = ((xs >> lit.variable) & 1).astype(bool)
            clause_ok |= bit != lit.negated
        ok &= clause_ok
    return ok


def index_to_assignment(x: int, n: int) -> Assignment:
    return tuple((x >> i) & 1 for i in range(n))


def brute_force_solutions(instance: SatInstance) -> list[Assignment]:
    """Every satisfying assignment, sorted lexicographically."""
    mask = satisfied_mask(instance)
    sols = [index_to_assignment(int(x), instance.n) for x in np.flatnonzero(mask)]
    return sorted(sols)


def brute_force_count(instance: SatInstance) -> int:
    return int(satisfied_mask(instance).sum())


# -- DIMACS -----------------------------------------------------------------

def read_dimacs(text: str, k: int | None = None) -> SatInstance:
    """Parse DIMACS CNF. ``k`` is inferred from the clauses when not given.

    Only k-uniform formulas are accepted.
    """
    header = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").replace("\r", "\n").split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer header fields") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative header fields")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause data before header")
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError:
            raise DimacsError(f"line {lineno}: non-integer literal") from None
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    n, m = header
    clauses = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(current)
            current = []
            continue
        if abs(t) > n:
            raise DimacsError(f"literal {t} exceeds declared variable count {n}")
        current.append(t)
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    widths = {len(c) for c in clauses}
    if 0 in widths:
        raise DimacsError("empty clause")
    if k is None:
        if len(widths) > 1:
            raise DimacsError(f"non-uniform clause widths {sorted(widths)}")
        k = widths.pop() if widths else 0
    elif widths - {k}:
        raise DimacsError(f"clause widths {sorted(widths)} do not match k={k}")
    lits = tuple(tuple((abs(t) - 1, t < 0) for t in c) for c in clauses)
    return SatInstance(n=n, k=k, clauses=lits)


def write_dimacs(instance: SatInstance) -> str:
    lines = [f"p cnf {instance.n} {instance.m}"]
    for clause in instance.clauses:
        lits = [str(-(lit.variable + 1) if lit.negated else lit.variable + 1) for lit in clause]
        lines.append(" ".join(lits + ["0"]))
    return "\n".join(lines) + "\n"


def canonical_dimacs(text: str) -> str:
    """Header plus one clause per line, comments dropped, LF endings."""
    return write_dimacs(read_dimacs(text))
