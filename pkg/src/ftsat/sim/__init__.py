"""Dense branching state-vector simulator and semantic gadget checks."""

from .circuit import Circuit
from .constructions import oracle_tiny, phaser_tiny, tacu_semantic, zero_oracle
from .simulator import BranchingSimState, simulate
from .verify import ZEquivalenceReport, check_z_equivalence, resource_audit

__all__ = ["Circuit", "oracle_tiny", "phaser_tiny", "tacu_semantic", "zero_oracle", "BranchingSimState",
           "simulate", "ZEquivalenceReport", "check_z_equivalence", "resource_audit"]
