"""Surface-code machine sizing: code distance, factories, decoders, qubits."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ParameterError

SCENARIOS = ("none", "factories5", "cycle5", "perr1e4", "combined")


@dataclass(frozen=True)
class ArchParams:
    p_phys: float = 1e-3
    p_th: float = 1e-2
    cycle_us: float = 1.0
    factory_footprint: float = 42_000.0
    factories_per_job: float = 1.3
    qubits_per_logical_d2: float = 2.0  # physical qubits per logical qubit, in units of d^2
    decoders_per_job: int = 10
    min_distance: int = 3

    def __post_init__(self):
        if not 0 < self.p_phys < self.p_th:
            raise ParameterError(f"need 0 < p_phys < p_th, got p_phys={self.p_phys}, p_th={self.p_th}")
        if not self.cycle_us > 0:
            raise ParameterError(f"cycle time must be positive, got {self.cycle_us}")
        if self.factory_footprint < 0 or self.factories_per_job < 0:
            raise ParameterError("factory footprint and factories per job must be non-negative")

    @property
    def error_ratio(self) -> float:
        return self.p_phys / self.p_th


def apply_scenario(arch: ArchParams, scenario: str | set | frozenset | tuple = "none") -> ArchParams:
    """Apply improvement flags: factories5, cycle5, perr1e4, or combined (all three)."""
    flags = {scenario} if isinstance(scenario, str) else set(scenario)
    unknown = flags - set(SCENARIOS)
    if unknown:
        raise ParameterError(f"unknown scenario flags {sorted(unknown)}; known: {list(SCENARIOS)}")
    if "combined" in flags:
        flags |= {"factories5", "cycle5", "perr1e4"}
    out = arch
    if "factories5" in flags:
        out = replace(out, factory_footprint=out.factory_footprint / 5)
    if "cycle5" in flags:
        out = replace(out, cycle_us=out.cycle_us / 5)
    if "perr1e4" in flags:
        out = replace(out, p_phys=1e-4)
    return out


def code_distance(G_nc: float, I_tar: float, arch: ArchParams) -> int:
    """Smallest d with G_nc * (p/p_th)^(d/2) <= I_tar, floored at arch.min_distance."""
    if G_nc < 1:
        raise ParameterError(f"non-Clifford count must be >= 1, got {G_nc}")
    if not 0 < I_tar < 1:
        raise ParameterError(f"target infidelity must lie in (0, 1), got {I_tar}")
    log_ratio = math.log(arch.error_ratio)
    if log_ratio >= 0:
        raise ParameterError("p_phys must be below threshold")
    d = math.ceil(2 * math.log(I_tar / G_nc) / log_ratio)
    return max(d, arch.min_distance)


@dataclass(frozen=True)
class MachineSize:
    d: int
    logical_qubits: int
    n_fac: int
    n_decoders: int
    physical_qubits: float
    t_lc_us: float


def machine_size(n: int, ancillas: int, n_jobs: int, d: int, arch: ArchParams) -> MachineSize:
    if min(n, ancillas, n_jobs, d) < 0:
        raise ParameterError("machine_size needs non-negative inputs")
    logical = n + ancillas
    n_fac = math.ceil(arch.factories_per_job * n_jobs)
    physical = arch.qubits_per_logical_d2 * d * d * logical + n_fac * arch.factory_footprint
    return MachineSize(d=d, logical_qubits=logical, n_fac=n_fac,
                       n_decoders=logical + arch.decoders_per_job * n_jobs,
                       physical_qubits=physical, t_lc_us=d * arch.cycle_us)


def backsolved_footprint(physical: float, d: int, logical: int, n_jobs: int, factories_per_job: float = 1.3) -> float:
    """Factory footprint implied by a reported physical-qubit total."""
    return (physical - 2 * d * d * logical) / (factories_per_job * n_jobs)
