"""Classical competitor: fitted serial runtime and parallel speedup."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError

MARENOSTRUM_CORES = 725_760
MODES = ("power_matched", "fixed_cores", "perfect")


@dataclass(frozen=True)
class ClassicalModel:
    slope: float = 0.176  # log2(ns) per variable
    intercept: float = 19.369  # log2(ns)
    lam: float = 9.8e-4
    x0: float = 6.8
    watts_per_cpu: float = 280 / 48
    watts_per_decoder: float = 0.008
    mode: str = "power_matched"
    cores: int | None = None  # used by fixed_cores and perfect
    slope_ci: float = 0.011
    intercept_ci: float = 0.657

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"unknown classical mode {self.mode!r}; known: {list(MODES)}")
        if not self.slope > 0 or not self.lam > 0 or self.x0 < 0:
            raise ParameterError("classical model needs slope > 0, lambda > 0, x0 >= 0")
        if self.mode != "power_matched" and (self.cores is None or self.cores < 1):
            raise ParameterError(f"mode {self.mode} needs a core count >= 1")

    def ci_bound(self, side: str) -> "ClassicalModel":
        """Fit shifted to the edge of its 90% band: 'fast' or 'slow'."""
        sign = {"fast": -1, "slow": 1}.get(side)
        if sign is None:
            raise ParameterError(f"side must be 'fast' or 'slow', got {side!r}")
        return replace(self, slope=self.slope + sign * self.slope_ci,
                       intercept=self.intercept + sign * self.intercept_ci)


def marenostrum(realistic: bool = True) -> ClassicalModel:
    return ClassicalModel(mode="fixed_cores" if realistic else "perfect", cores=MARENOSTRUM_CORES)


def serial_tts_ns(n: float, model: ClassicalModel = ClassicalModel()) -> float:
    """Median single-core time-to-solution in nanoseconds."""
    return 2.0 ** (model.slope * n + model.intercept)


def cores_from_power(n_decoders: int, model: ClassicalModel = ClassicalModel()) -> tuple[int, float]:
    """CPU cores drawing the same power as the decoders (floored)."""
    if n_decoders < 0:
        raise ParameterError(f"decoder count must be >= 0, got {n_decoders}")
    watts = model.watts_per_decoder * n_decoders
    return int(math.floor(watts / model.watts_per_cpu + 1e-12)), watts


def parallel_speedup(cores: int, model: ClassicalModel = ClassicalModel(), perfect: bool | None = None) -> float:
    """Ratio of one run's expected time to the expected minimum over ``cores`` runs.

    Runtimes follow a shifted exponential: x0 + Exp(lam).
    """
    if cores < 1:
        raise ParameterError(f"need at least one core, got {cores}")
    if perfect if perfect is not None else model.mode == "perfect":
        return float(cores)
    return (model.x0 + 1 / model.lam) / (model.x0 + 1 / (cores * model.lam))


def monte_carlo_speedup(cores: int, model: ClassicalModel = ClassicalModel(), samples: int = 1_000_000,
                        seed: int = 0, chunk: int = 20_000_000) -> float:
    """Speedup estimated by sampling minima of ``cores`` shifted-exponential draws."""
    rng = np.random.default_rng(seed)
    single = model.x0 + rng.exponential(1 / model.lam, size=samples).mean()
    total, done = 0.0, 0
    rows = max(1, chunk // cores)
    while done < samples:
        b = min(rows, samples - done)
        total += rng.exponential(1 / model.lam, size=(b, cores)).min(axis=1).sum()
        done += b
    return single / (model.x0 + total / samples)


def classical_cores(model: ClassicalModel, n_decoders: int | None = None) -> int:
    if model.mode == "power_matched":
        if n_decoders is None:
            raise ParameterError("power_matched mode needs a decoder count")
        return cores_from_power(n_decoders, model)[0]
    if n_decoders is not None:
        raise ParameterError(f"mode {model.mode} takes a core count, not a decoder count")
    return model.cores


def classical_tts_s(n: float, model: ClassicalModel = ClassicalModel(), n_decoders: int | None = None) -> float:
    """Parallel time-to-solution in seconds; infinite when the power budget buys no core."""
    cores = classical_cores(model, n_decoders)
    if cores < 1:
        return math.inf
    return serial_tts_ns(n, model) * 1e-9 / parallel_speedup(cores, model)
