"""Exact amplitude amplification with unknown success probability."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..crossover import base_rounds, overhead_factor, stage_rounds
from ..errors import CapacityError, ParameterError
from ..sat import SatInstance, satisfied_mask

MAX_VARS = 12


def uniform_prep(n: int) -> np.ndarray:
    return np.full(2**n, 1 / math.sqrt(2**n), dtype=complex)


def qaoa_prep(instance: SatInstance, betas, gammas) -> np.ndarray:
    """QAOA state with phaser e^{-i gamma (#satisfied)} and mixer prod_j e^{-i beta X_j / 2}."""
    if len(betas) != len(gammas):
        raise ParameterError("need one beta per gamma")
    n = instance.n
    xs = np.arange(2**n)
    counts = np.zeros(2**n)
    for clause in instance.clauses:
        ok = np.zeros(2**n, dtype=bool)
        for lit in clause:
            ok |= ((xs >> lit.variable) & 1).astype(bool) != lit.negated
        counts += ok
    psi = uniform_prep(n)
    for beta, gamma in zip(betas, gammas):
        psi = psi * np.exp(-1j * gamma * counts)
        rx = np.array([[math.cos(beta / 2), -1j * math.sin(beta / 2)],
                       [-1j * math.sin(beta / 2), math.cos(beta / 2)]])
        t = psi.reshape([2] * n)
        for ax in range(n):
            t = np.moveaxis(np.tensordot(rx, t, axes=([1], [ax])), 0, ax)
        psi = t.reshape(-1)
    return psi


class GroverIterate:
    """Q = -A S_0 A^dagger S_chi, with A any unitary taking |0> to ``prep``."""

    def __init__(self, prep: np.ndarray, good: np.ndarray):
        self.prep = np.asarray(prep, dtype=complex)
        self.good = np.asarray(good, dtype=bool)
        if self.prep.shape != self.good.shape:
            raise ParameterError("prep and solution mask sizes differ")

    def apply(self, psi: np.ndarray) -> np.ndarray:
        psi = np.where(self.good, -psi, psi)
        # Reflection about the prepared state: 2|prep><prep| - I.
        return 2 * self.prep * np.vdot(self.prep, psi) - psi

    def power(self, rounds: int) -> np.ndarray:
        psi = self.prep.copy()
        for _ in range(rounds):
            psi = self.apply(psi)
        return psi

    def success_amplitude(self, psi: np.ndarray) -> float:
        return float(np.linalg.norm(psi[self.good]))


def grover_angle_deviation(prep: np.ndarray, good: np.ndarray, max_rounds: int = 20) -> float:
    """max_m | ||P_good Q^m prep|| - sin((2m+1) theta_a) | over m in [0, max_rounds]."""
    it = GroverIterate(prep, good)
    theta_a = math.asin(min(1.0, it.success_amplitude(it.prep)))
    psi = it.prep.copy()
    worst = 0.0
    for m in range(max_rounds + 1):
        worst = max(worst, abs(it.success_amplitude(psi) - abs(math.sin((2 * m + 1) * theta_a))))
        psi = it.apply(psi)
    return worst


@dataclass(frozen=True)
class Theorem1Run:
    found: bool
    queries: int
    budget: int
    solution: int | None


class Theorem1Procedure:
    """Staged amplification with exact Born-rule sampling.

    Stage 0 measures the prepared state directly; stage i >= 1 runs
    stage_rounds(i) Grover rounds then measures. Each stage is repeated
    ceil(log2(1/delta)) times, stopping at the first solution. Queries count
    Grover rounds; a run stops once the next repetition would exceed the
    ceil(pi/(4 sqrt(P))) * ceil(log2(1/delta)) budget. Stage distributions
    are cached, so repeated runs only pay for sampling.
    """

    def __init__(self, instance: SatInstance, prep: np.ndarray | None = None, delta_fail: float = 1 / 16):
        if instance.n > MAX_VARS:
            raise CapacityError(f"run_theorem1 supports at most {MAX_VARS} variables")
        self.good = satisfied_mask(instance)
        if not self.good.any():
            raise ParameterError("instance is unsatisfiable")
        prep = uniform_prep(instance.n) if prep is None else np.asarray(prep, dtype=complex)
        self.iterate = GroverIterate(prep, self.good)
        self.P = float(np.sum(np.abs(prep[self.good]) ** 2))
        self.L = overhead_factor(delta_fail)
        self.budget = base_rounds(self.P) * self.L
        self._cdf: dict[int, np.ndarray] = {}

    def _stage_cdf(self, rounds: int) -> np.ndarray:
        if rounds not in self._cdf:
            probs = np.abs(self.iterate.power(rounds)) ** 2
            cdf = np.cumsum(probs / probs.sum())
            cdf[-1] = 1.0
            self._cdf[rounds] = cdf
        return self._cdf[rounds]

    def run(self, rng: np.random.Generator) -> Theorem1Run:
        queries = 0
        stage = 0
        while True:
            rounds = stage_rounds(stage)
            if queries + rounds > self.budget:
                return Theorem1Run(False, queries, self.budget, None)
            cdf = self._stage_cdf(rounds)
            for _ in range(self.L):
                if queries + rounds > self.budget:
                    return Theorem1Run(False, queries, self.budget, None)
                queries += rounds
                x = int(np.searchsorted(cdf, rng.random(), side="right"))
                if self.good[x]:
                    return Theorem1Run(True, queries, self.budget, x)
            stage += 1


def run_theorem1(instance: SatInstance, prep: np.ndarray | None = None, delta_fail: float = 1 / 16,
                 seed: int = 0, rng: np.random.Generator | None = None) -> Theorem1Run:
    return Theorem1Procedure(instance, prep, delta_fail).run(rng or np.random.default_rng(seed))
