"""Resource estimation for fault-tolerant QAOA with amplitude amplification on random k-SAT."""

from .architecture import SCENARIOS, ArchParams, apply_scenario, code_distance, machine_size
from .classical import ClassicalModel, cores_from_power, marenostrum, parallel_speedup
from .crossover import (EstimateConfig, ResourceEstimate, estimate, find_crossover, find_speed_ratio,
                        scenario_config)
from .errors import (AuditError, CapacityError, ConsistencyError, DimacsError, FtsatError, InfeasibleError,
                     NumericError, ParameterError, SearchFailure)
from .gadgets import ccz_count, tacu_cost, toffoli_cost
from .sat import SatInstance, generate_instance, read_dimacs, write_dimacs
from .scheduler import build_collision_graph, color_clauses, make_schedule
from .synthesis import GRIDSYNTH, MIXED_FALLBACK, optimal_delta, required_t_infidelity, synthesis_point

__all__ = [
    "SCENARIOS", "ArchParams", "apply_scenario", "code_distance", "machine_size",
    "ClassicalModel", "cores_from_power", "marenostrum", "parallel_speedup",
    "EstimateConfig", "ResourceEstimate", "estimate", "find_crossover", "find_speed_ratio", "scenario_config",
    "AuditError", "CapacityError", "ConsistencyError", "DimacsError", "FtsatError", "InfeasibleError",
    "NumericError", "ParameterError", "SearchFailure",
    "ccz_count", "tacu_cost", "toffoli_cost",
    "SatInstance", "generate_instance", "read_dimacs", "write_dimacs",
    "build_collision_graph", "color_clauses", "make_schedule",
    "GRIDSYNTH", "MIXED_FALLBACK", "optimal_delta", "required_t_infidelity", "synthesis_point",
]
