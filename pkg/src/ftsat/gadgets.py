"""Resource and timing contracts for TACU, Toffoli, phaser and oracle gadgets."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .scheduler import ceil_log2

ANCILLAS_PER_QUBIT_NUM = 13  # lattice-surgery ancillas: floor(13K/2) per K-qubit gadget


def ccz_count(K: int) -> int:
    """CCZ states consumed by a K-qubit AND tree: sum_l floor(K / 2^l)."""
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    return sum(K >> level for level in range(1, ceil_log2(K) + 1))


def tacu_ancillas(K: int) -> int:
    return ANCILLAS_PER_QUBIT_NUM * K // 2


@dataclass(frozen=True)
class GadgetCost:
    ccz_states: int
    t_states: int
    ancillas: int
    data_touch_cycles: int
    total_cycles: int
    dispatch_writes_after: int


def tacu_cost(K: int, n_P: int, t_states: int = 0) -> GadgetCost:
    """K-qubit phase gadget: AND tree, payload rotation of n_P cycles, uncompute."""
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    if n_P < 0:
        raise ParameterError(f"n_P must be >= 0, got {n_P}")
    depth = ceil_log2(K)
    return GadgetCost(ccz_states=ccz_count(K), t_states=t_states, ancillas=tacu_ancillas(K),
                      data_touch_cycles=1, total_cycles=n_P + 4 * depth, dispatch_writes_after=3 * depth)


def toffoli_cost(K: int) -> GadgetCost:
    """K-control Toffoli. K=2 is the plain one-CCZ Toffoli (3 cycles, 3 ancillas)."""
    if K < 2:
        raise ParameterError(f"Toffoli needs K >= 2 controls, got {K}")
    depth = ceil_log2(K)
    ancillas = 3 if K == 2 else tacu_ancillas(K)
    return GadgetCost(ccz_states=ccz_count(K), t_states=0, ancillas=ancillas, data_touch_cycles=1,
                      total_cycles=3 * depth + depth - 1, dispatch_writes_after=3 * depth)


@dataclass(frozen=True)
class ComponentTimes:
    t_mixer: float
    t_phaser: float
    t_oracle: float
    t_zero: float

    def per_round(self, p: int) -> float:
        """Logical cycles of one AA round: p QAOA layers forward and back plus both oracles."""
        return 2 * p * (self.t_mixer + self.t_phaser) + self.t_oracle + self.t_zero


@dataclass(frozen=True)
class OracleBudget:
    eta: int
    R1: int
    L1: int
    A1: int
    R2: int
    L2: float
    A2: int
    R3: int
    L3: float
    A3: int


def level1_cycles(k: int, s: int) -> int:
    return 4 * ceil_log2(k) + 4 * ceil_log2(s) - 1


def oracle_budget(c: int, k: int, s: int, eta: int = 1) -> OracleBudget:
    """CCZ count / cycles / ancillas for clause-part, group and full-oracle levels."""
    if c < 1 or k < 1 or s < 1:
        raise ParameterError(f"need c, k, s >= 1, got c={c}, k={k}, s={s}")
    L1 = level1_cycles(k, s)
    if not 1 <= eta <= max(L1, 1):
        raise ParameterError(f"concurrency eta must lie in [1, L1={L1}], got {eta}")
    sq = math.isqrt(c - 1) + 1 if c > 1 else 1  # ceil(sqrt(c))
    log_sq = math.log2(sq)
    R1 = k * s - 1
    A1 = math.ceil(13 * k / 2) * s + math.ceil(13 * s / 2)
    R2 = 2 * sq * R1 + sq - 1
    L2 = math.ceil(2 * sq * L1 / eta) + eta + 4 * log_sq - 2
    A2 = A1 * eta + sq
    R3 = 2 * sq * R2 + sq - 1
    L3 = 2 * sq * L2 + 4 * log_sq
    A3 = A2 + sq
    return OracleBudget(eta, R1, L1, A1, R2, L2, A2, R3, L3, A3)


def oracle_cycles_results(c: int, k: int, m: int) -> float:
    """Closed-form oracle runtime 4c*log2(km/c)."""
    return 4 * c * math.log2(k * m / c)


def component_times(c: int, k: int, n: int, m: int, n_P: int, tau: int = 1,
                    eta: int | None = None, s: int | None = None) -> ComponentTimes:
    """Logical-cycle runtimes of mixer, phaser, k-SAT oracle and zero-state oracle.

    Without ``eta`` the oracle uses the closed form; with ``eta`` it uses the
    three-level construction with that many clause parts in flight.
    """
    if min(c, k, n, m, n_P, tau) < 1:
        raise ParameterError("component_times needs positive c, k, n, m, n_P, tau")
    if eta is None:
        t_oracle = oracle_cycles_results(c, k, m)
    else:
        s = math.ceil(m / c) if s is None else s
        t_oracle = oracle_budget(c, k, s, eta).L3
    return ComponentTimes(
        t_mixer=n_P,
        t_phaser=tau * c + n_P + 4 * ceil_log2(k),
        t_oracle=t_oracle,
        t_zero=math.ceil(4 * math.log2(n)) if n > 1 else 0,
    )


def phaser_nonclifford(m: int, k: int, N_T: int) -> tuple[int, int]:
    """(CCZ, T) states consumed by one phaser application: one TACU and one rotation per clause."""
    if m < 0 or k < 1 or N_T < 0:
        raise ParameterError("phaser_nonclifford needs m >= 0, k >= 1, N_T >= 0")
    return m * ccz_count(k), m * N_T


def mixer_nonclifford(n: int, N_T: int) -> int:
    """T states of one mixer layer: one synthesized X rotation per variable."""
    return n * N_T
