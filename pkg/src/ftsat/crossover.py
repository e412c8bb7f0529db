"""Quantum time-to-solution for QAOA+AA, crossover search, and sweeps."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

from . import gadgets
from .architecture import ArchParams, apply_scenario, code_distance, machine_size
from .classical import (ClassicalModel, classical_cores, cores_from_power, marenostrum,
                        parallel_speedup, serial_tts_ns)
from .errors import InfeasibleError, ParameterError, SearchFailure
from .scheduler import jobs_from_sizes, task_lifetime
from .synthesis import MIXED_FALLBACK, SynthScheme, required_t_infidelity, synthesis_point

HOUR = 3600.0
YEAR = 365.25 * 24 * HOUR


@dataclass(frozen=True)
class QaoaScalingModel:
    a: float = 0.69
    b_exp: float = 0.32

    def __post_init__(self):
        if not (self.a > 0 and self.b_exp > 0):
            raise ParameterError("scaling exponents must be positive")


def log2_success_prob(n: float, p: float, model: QaoaScalingModel = QaoaScalingModel()) -> float:
    if n < 1 or p < 1:
        raise ParameterError(f"need n, p >= 1, got n={n}, p={p}")
    return -model.a * p ** (-model.b_exp) * n


def success_prob(n: float, p: float, model: QaoaScalingModel = QaoaScalingModel()) -> float:
    return 2.0 ** log2_success_prob(n, p, model)


def speedup_degree(p: float, model: QaoaScalingModel = QaoaScalingModel(), classical: ClassicalModel = ClassicalModel()) -> float:
    """Ratio of classical to QAOA+AA runtime exponents (2 = quadratic, 4 = quartic)."""
    return classical.slope / (0.5 * model.a * p ** (-model.b_exp))


def optimal_p(n: float, model: QaoaScalingModel = QaoaScalingModel()) -> int:
    """Depth minimizing p * 2^(a p^-b n / 2)."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    p = (math.log(2) / 2 * model.a * model.b_exp * n) ** (1 / model.b_exp)
    return max(1, int(round(p)))


# -- amplitude amplification ------------------------------------------------

@dataclass(frozen=True)
class AaStage:
    theta: float
    rounds: int
    repeats: int


@dataclass(frozen=True)
class AaSchedule:
    P: float
    delta_fail: float
    base_rounds: int
    overhead: int
    stages: tuple

    @property
    def query_bound(self) -> int:
        return self.base_rounds * self.overhead

    @property
    def planned_queries(self) -> int:
        return sum(st.rounds * st.repeats for st in self.stages)


def overhead_factor(delta_fail: float) -> int:
    if not 0 < delta_fail < 1:
        raise ParameterError(f"failure probability must lie in (0, 1), got {delta_fail}")
    return math.ceil(math.log2(1 / delta_fail) - 1e-12)


def base_rounds(P: float) -> int:
    if not 0 < P <= 1:
        raise ParameterError(f"success probability must lie in (0, 1], got {P}")
    return math.ceil(math.pi / (4 * math.sqrt(P)) - 1e-12)


def stage_rounds(i: int) -> int:
    """Grover rounds of stage i, whose interval is theta in [pi/2^(i+3), pi/2^(i+2)]."""
    theta = (math.pi / 4) / 2**i
    return max(0, math.ceil(math.pi / (8 * theta) - 0.5 - 1e-12))


def aa_schedule(P: float, delta_fail: float = 1 / 16) -> AaSchedule:
    """Stage plan for amplification with unknown success probability.

    Stage 0 measures the prepared state directly; stage i >= 1 halves the
    angle interval and runs stage_rounds(i) rounds before measuring. Every
    stage repeats overhead times. The plan stops at the stage whose
    interval contains the true angle.
    """
    L = overhead_factor(delta_fail)
    rounds0 = base_rounds(P)
    theta_a = math.asin(math.sqrt(P))
    last = max(0, math.floor(math.log2((math.pi / 4) / theta_a))) if theta_a < math.pi / 4 else 0
    stages = tuple(AaStage(theta=(math.pi / 4) / 2**i, rounds=stage_rounds(i), repeats=L) for i in range(last + 1))
    return AaSchedule(P=P, delta_fail=delta_fail, base_rounds=rounds0, overhead=L, stages=stages)


# -- full estimate ------------------------------------------------------------

@dataclass(frozen=True)
class EstimateConfig:
    k: int = 8
    r: float = 176.0
    tau: int = 1
    eta: int | None = 22  # None selects the closed-form oracle runtime
    colors_per_ratio: float = 12.0
    scheme: SynthScheme = MIXED_FALLBACK
    delta_mode: str = "exact"
    I_target: float = 0.01
    delta_fail: float = 1 / 16
    qaoa: QaoaScalingModel = field(default_factory=QaoaScalingModel)
    arch: ArchParams = field(default_factory=ArchParams)
    classical: ClassicalModel = field(default_factory=ClassicalModel)

    def __post_init__(self):
        if self.tau < 1 or int(self.tau) != self.tau:
            raise ParameterError(f"slowdown factor tau must be an integer >= 1, got {self.tau}")
        if self.eta is not None and self.eta < 1:
            raise ParameterError(f"eta must be >= 1, got {self.eta}")
        if self.k < 1 or not self.r > 0:
            raise ParameterError("need k >= 1 and r > 0")


@dataclass(frozen=True)
class ResourceEstimate:
    p: int
    n: int
    m: int
    c: int
    s: int
    tau: int
    eta: int | None
    P: float
    base_rounds: int
    overhead: int
    G_rotations: float
    eps_T: float
    delta: float
    N_T: int
    n_P: int
    lam: int
    n_jobs: int
    ancillas: int
    t_mixer: float
    t_phaser: float
    t_oracle: float
    t_zero: float
    logical_depth: float  # excludes the AA overhead factor
    nonclifford_total: float  # excludes the AA overhead factor
    d: int
    n_fac: int
    n_decoders: int
    physical_qubits: float
    t_lc_us: float
    T_q: float  # seconds
    n_cores: int
    classical_watts: float
    speedup: float
    T_c: float  # seconds

    def to_dict(self) -> dict:
        return asdict(self)


CrossoverPoint = ResourceEstimate


def analytic_partition(m: int, config: EstimateConfig) -> tuple[int, int]:
    c = int(round(config.colors_per_ratio * config.r))
    return c, math.ceil(m / c)


def estimate(n: int, p: int, config: EstimateConfig = EstimateConfig(), c: int | None = None,
             s: int | None = None) -> ResourceEstimate:
    """All logical, physical and timing figures for one (n, p) configuration.

    ``c`` and ``s`` come from a concrete coloring when given, otherwise from
    the analytic c = 12r partition.
    """
    k = config.k
    m = int(round(config.r * n))
    if c is None:
        c, s_default = analytic_partition(m, config)
        s = s_default if s is None else s
    elif s is None:
        s = math.ceil(m / c)
    P = success_prob(n, p, config.qaoa)
    rounds = base_rounds(P)
    L = overhead_factor(config.delta_fail)

    # One rotation per clause per phaser and per variable per mixer.
    G = 2 * p * (n + m) / math.sqrt(P)
    eps = required_t_infidelity(G, config.I_target, config.scheme, config.delta_mode)
    synth = synthesis_point(eps, config.scheme, config.delta_mode)

    lam = task_lifetime(k, synth.n_P)
    n_jobs = jobs_from_sizes(s, k, synth.n_P, config.tau)
    ancillas = gadgets.tacu_ancillas(k) * n_jobs

    eta = None
    if config.eta is not None:
        eta = min(config.eta, max(1, gadgets.level1_cycles(k, s)))
    times = gadgets.component_times(c, k, n, m, synth.n_P, config.tau, eta=eta, s=s)
    depth = rounds * times.per_round(p)

    ccz_phaser, t_phaser = gadgets.phaser_nonclifford(m, k, synth.N_T)
    oracle_ccz = gadgets.oracle_budget(c, k, s, 1).R3
    zero_ccz = gadgets.ccz_count(n)
    per_round_nc = 2 * p * (ccz_phaser + t_phaser + gadgets.mixer_nonclifford(n, synth.N_T)) + oracle_ccz + zero_ccz
    nonclifford = rounds * per_round_nc

    d = code_distance(L * nonclifford, config.I_target, config.arch)
    machine = machine_size(n, ancillas, n_jobs, d, config.arch)
    T_q = L * depth * machine.t_lc_us * 1e-6

    cl = config.classical
    if cl.mode == "power_matched":
        cores, watts = cores_from_power(machine.n_decoders, cl)
    else:
        cores, watts = classical_cores(cl), cl.watts_per_cpu * cl.cores
    speed = parallel_speedup(cores, cl) if cores >= 1 else 0.0
    T_c = serial_tts_ns(n, cl) * 1e-9 / speed if speed > 0 else math.inf

    return ResourceEstimate(
        p=p, n=n, m=m, c=c, s=s, tau=config.tau, eta=eta, P=P, base_rounds=rounds, overhead=L,
        G_rotations=G, eps_T=eps, delta=synth.delta_opt, N_T=synth.N_T, n_P=synth.n_P, lam=lam,
        n_jobs=n_jobs, ancillas=ancillas, t_mixer=times.t_mixer, t_phaser=times.t_phaser,
        t_oracle=times.t_oracle, t_zero=times.t_zero, logical_depth=depth, nonclifford_total=nonclifford,
        d=d, n_fac=machine.n_fac, n_decoders=machine.n_decoders, physical_qubits=machine.physical_qubits,
        t_lc_us=machine.t_lc_us, T_q=T_q, n_cores=cores, classical_watts=watts, speedup=speed, T_c=T_c,
    )


def quantum_tts(n: int, p: int, config: EstimateConfig = EstimateConfig(), c: int | None = None,
                s: int | None = None) -> tuple[float, ResourceEstimate]:
    est = estimate(n, p, config, c, s)
    return est.T_q, est


def find_crossover(p: int, config: EstimateConfig = EstimateConfig(), n_min: int = 20, n_max: int = 600) -> ResourceEstimate:
    """Smallest n in [n_min, n_max] where the quantum runtime does not exceed the classical one."""
    profile = []
    for n in range(n_min, n_max + 1):
        try:
            est = estimate(n, p, config)
        except InfeasibleError as exc:
            # G grows with n, so every larger n is infeasible too
            raise SearchFailure(f"no crossover for p={p}: synthesis infeasible from n={n} ({exc})",
                                profile=profile) from exc
        profile.append((n, est.T_q, est.T_c))
        if est.T_q <= est.T_c:
            return est
    raise SearchFailure(f"no crossover for p={p} in n in [{n_min}, {n_max}]", profile=profile)


def find_speed_ratio(p: int, ratio: float = 100.0, config: EstimateConfig = EstimateConfig(),
                     n_min: int = 20, n_max: int = 600) -> ResourceEstimate:
    """Smallest n where T_c / T_q reaches ``ratio``."""
    profile = []
    for n in range(n_min, n_max + 1):
        est = estimate(n, p, config)
        profile.append((n, est.T_q, est.T_c))
        if est.T_c >= ratio * est.T_q:
            return est
    raise SearchFailure(f"T_c/T_q never reaches {ratio} for p={p}", profile=profile)


# -- named configurations and sweeps -------------------------------------------

HEADLINE_DEPTHS = {"quadratic": 71, "cubic": 253, "quartic": 623}


def scenario_config(scenario: str = "none", parallel: str = "power", tau: int | None = None,
                    base: EstimateConfig = EstimateConfig()) -> EstimateConfig:
    """Configuration for one improvement scenario and classical parallelization model.

    ``parallel`` is 'power' (power-matched cores), 'realistic' (MareNostrum,
    expected-minimum speedup, tau=2 by default) or 'perfect' (MareNostrum,
    linear speedup, tau=1 by default).
    """
    if parallel == "power":
        classical, default_tau = ClassicalModel(), 1
    elif parallel == "realistic":
        classical, default_tau = marenostrum(realistic=True), 2
    elif parallel == "perfect":
        classical, default_tau = marenostrum(realistic=False), 1
    else:
        raise ParameterError(f"unknown parallelization {parallel!r}")
    return replace(base, arch=apply_scenario(base.arch, scenario), classical=classical,
                   tau=default_tau if tau is None else tau)


def sweep_scenario_grid(base: EstimateConfig = EstimateConfig(), p: int = 623) -> list[dict]:
    rows = []
    for parallel in ("realistic", "perfect"):
        for scenario in ("none", "factories5", "cycle5", "perr1e4", "combined"):
            est = find_crossover(p, scenario_config(scenario, parallel, base=base))
            rows.append({"parallel": parallel, "scenario": scenario, "n": est.n, "T_q_h": est.T_q / HOUR,
                         "physical_qubits_1e6": est.physical_qubits / 1e6, "d": est.d, "tau": est.tau,
                         "n_jobs": est.n_jobs})
    return rows


def sweep_tau_tradeoff(taus=(1, 2, 3, 4, 6, 8), p: int = 623, base: EstimateConfig = EstimateConfig()) -> list[dict]:
    rows = []
    for tau in taus:
        est = find_crossover(p, replace(base, tau=tau))
        rows.append({"tau": tau, "n": est.n, "T_q_h": est.T_q / HOUR, "physical_qubits_1e6": est.physical_qubits / 1e6,
                     "n_jobs": est.n_jobs, "ancillas": est.ancillas, "d": est.d})
    return rows


def sweep_speedup_vs_time(ps=(71, 100, 150, 253, 400, 623, 1000), base: EstimateConfig = EstimateConfig()) -> list[dict]:
    rows = []
    for p in ps:
        est = find_crossover(p, base)
        rows.append({"p": p, "speedup_degree": speedup_degree(p, base.qaoa, base.classical), "n": est.n,
                     "T_q_h": est.T_q / HOUR, "physical_qubits_1e6": est.physical_qubits / 1e6})
    return rows


def sweep_speed_ratio_vs_n(p: int = 623, n_range=range(170, 261, 2), base: EstimateConfig = EstimateConfig()) -> list[dict]:
    rows = []
    for n in n_range:
        est = estimate(n, p, base)
        rows.append({"n": n, "T_q_h": est.T_q / HOUR, "T_c_h": est.T_c / HOUR, "ratio": est.T_c / est.T_q})
    return rows


SWEEPS = {
    "scenario_grid": sweep_scenario_grid,
    "tau_tradeoff": sweep_tau_tradeoff,
    "speedup_vs_time": sweep_speedup_vs_time,
    "speed_ratio_vs_n": sweep_speed_ratio_vs_n,
}
