"""Clifford+T cost model for single-qubit phase rotations.

A rotation synthesized to accuracy delta costs N_T = b*log2(1/delta) + c
T gates. With noisy T states (infidelity eps_T) there is an optimal
delta trading synthesis error against accumulated T-state error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, NumericError, ParameterError

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SynthScheme:
    b: float
    c: float
    name: str = ""

    def __post_init__(self):
        if not self.b > 0 or self.c < 0:
            raise ParameterError(f"scheme needs b > 0 and c >= 0, got b={self.b}, c={self.c}")


MIXED_FALLBACK = SynthScheme(0.57, 8.83, "mixed-fallback")
GRIDSYNTH = SynthScheme(3.0, 9.19, "gridsynth")
SCHEMES = {s.name: s for s in (MIXED_FALLBACK, GRIDSYNTH)}


def get_scheme(name_or_scheme) -> SynthScheme:
    if isinstance(name_or_scheme, SynthScheme):
        return name_or_scheme
    try:
        return SCHEMES[name_or_scheme]
    except KeyError:
        raise ParameterError(f"unknown synthesis scheme {name_or_scheme!r}; known: {sorted(SCHEMES)}") from None


def _check_delta(delta: float) -> None:
    if not 0 < delta < 1:
        raise ParameterError(f"decomposition accuracy must lie in (0, 1), got {delta}")


def t_count(delta: float, scheme: SynthScheme = MIXED_FALLBACK) -> float:
    """Unrounded T-count b*log2(1/delta) + c."""
    _check_delta(delta)
    return scheme.b * math.log2(1.0 / delta) + scheme.c


def t_count_rounded(delta: float, scheme: SynthScheme = MIXED_FALLBACK) -> int:
    """Integer T-count reported in resource tables: ceil(N_T) + 1."""
    return math.ceil(t_count(delta, scheme)) + 1


def ent_infidelity(eps_T: float, delta: float, scheme: SynthScheme = MIXED_FALLBACK) -> float:
    """1 - (1 + 3(1-eps_T)^N_T)(1 - delta^2)/4, evaluated without cancellation."""
    if not 0 <= eps_T < 1:
        raise ParameterError(f"T-state infidelity must lie in [0, 1), got {eps_T}")
    _check_delta(delta)
    # With u = 1 - (1-eps_T)^N_T the expression is 3u/4 + delta^2 - (3u/4) delta^2.
    u = -math.expm1(t_count(delta, scheme) * math.log1p(-eps_T))
    a = 0.75 * u
    return a + delta * delta * (1.0 - a)


def _stationarity(delta: float, eps_T: float, scheme: SynthScheme) -> float:
    # Proportional to dI_ent/d(delta); negative below the optimum.
    q_n = math.exp(t_count(delta, scheme) * math.log1p(-eps_T))
    log2_q = math.log1p(-eps_T) / LN2
    return 2 * delta**2 * (1 + 3 * q_n) + 3 * scheme.b * q_n * log2_q * (1 - delta**2)


def optimal_delta(eps_T: float, scheme: SynthScheme = MIXED_FALLBACK, mode: str = "exact",
                  rtol: float = 1e-9, max_iter: int = 200) -> float:
    """Accuracy minimizing the entanglement infidelity of one rotation."""
    if not 0 < eps_T < 1e-2:
        raise ParameterError(f"optimal_delta needs 0 < eps_T < 1e-2, got {eps_T}")
    if mode == "approx":
        return math.sqrt(3 * scheme.b * eps_T / (8 * LN2))
    if mode != "exact":
        raise ParameterError(f"unknown mode {mode!r}")
    lo, hi = math.log(1e-18), math.log(0.5)
    g_lo = _stationarity(math.exp(lo), eps_T, scheme)
    g_hi = _stationarity(math.exp(hi), eps_T, scheme)
    if not (g_lo < 0 < g_hi):
        raise NumericError(f"stationarity condition not bracketed for eps_T={eps_T}",
                           bracket=(math.exp(lo), math.exp(hi), g_lo, g_hi))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if _stationarity(math.exp(mid), eps_T, scheme) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < rtol:
            break
    return math.exp(0.5 * (lo + hi))


def circuit_infidelity(G: float, I_gate: float) -> float:
    """1 - (1 - I_gate)^G, accurate for tiny I_gate and huge G."""
    return -math.expm1(G * math.log1p(-I_gate))


def required_t_infidelity(G: float, I_target: float = 0.01, scheme: SynthScheme = MIXED_FALLBACK,
                          mode: str = "exact", floor: float = 1e-20, rtol: float = 1e-9) -> float:
    """Largest eps_T keeping G optimally synthesized rotations within I_target."""
    if G < 1:
        raise ParameterError(f"rotation count must be >= 1, got {G}")
    if not 0 < I_target < 1:
        raise ParameterError(f"target infidelity must lie in (0, 1), got {I_target}")

    def ok(log_eps: float) -> bool:
        eps = math.exp(log_eps)
        return circuit_infidelity(G, ent_infidelity(eps, optimal_delta(eps, scheme, mode), scheme)) <= I_target

    lo, hi = math.log(floor), math.log(1e-2) - 1e-12
    if not ok(lo):
        raise InfeasibleError(f"no eps_T >= {floor} meets I_target={I_target} for G={G:.3g}")
    if ok(hi):
        return math.exp(hi)
    while hi - lo > rtol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return math.exp(lo)


@dataclass(frozen=True)
class SynthesisPoint:
    scheme: SynthScheme
    eps_T: float
    delta_opt: float
    N_T_raw: float
    N_T: int
    n_P: int
    I_gate: float


def synthesis_point(eps_T: float, scheme: SynthScheme = MIXED_FALLBACK, mode: str = "exact") -> SynthesisPoint:
    delta = optimal_delta(eps_T, scheme, mode)
    n_t = t_count_rounded(delta, scheme)
    return SynthesisPoint(scheme=scheme, eps_T=eps_T, delta_opt=delta, N_T_raw=t_count(delta, scheme),
                          N_T=n_t, n_P=n_t + 2, I_gate=ent_infidelity(eps_T, delta, scheme))


def budget_sweep(gate_counts, I_target: float = 0.01, scheme: SynthScheme = MIXED_FALLBACK) -> list[dict]:
    """Rows of (G, eps_T, delta_opt, N_T, I_gate) for a range of circuit sizes."""
    rows = []
    for G in gate_counts:
        eps = required_t_infidelity(float(G), I_target, scheme)
        pt = synthesis_point(eps, scheme)
        rows.append({"scheme": scheme.name, "G": float(G), "eps_T": eps, "delta_opt": pt.delta_opt,
                     "N_T": pt.N_T, "I_gate": pt.I_gate})
    return rows


def infidelity_curve(eps_T: float, deltas, scheme: SynthScheme = MIXED_FALLBACK) -> list[dict]:
    """I_ent as a function of delta at fixed eps_T."""
    return [{"delta": float(d), "I_ent": ent_infidelity(eps_T, float(d), scheme)}
            for d in np.asarray(deltas, dtype=float)]
