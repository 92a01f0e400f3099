"""Solvers for maximum partitioning of graphs with supply and demand."""
from ._jit import USING_NUMBA
from .aco import (AcoParams, AcoResult, global_update, init_pheromone, local_update,
                  quality, solve, transition_select)
from .bench import RunStats, convergence_trace, normalized_error, run_class
from .construction import (GrowState, candidates, extend, greedy_solve, init_state,
                           neighbors)
from .correction import Move, correct, improving_moves
from .exact import ExactResult, exact_optimum
from .graph import (UNASSIGNED, ContractError, FeasibilityReport, IntegrityError,
                    InvalidInstanceError, Partition, ProblemGraph, is_feasible, objective,
                    subgraph_surplus)
from .instances import (InstanceFormatError, InstanceSpec, generate, generate_with_witness,
                        read_instance, write_instance)

__all__ = [
    "USING_NUMBA", "AcoParams", "AcoResult", "global_update", "init_pheromone",
    "local_update", "quality", "solve", "transition_select", "RunStats",
    "convergence_trace", "normalized_error", "run_class", "GrowState", "candidates",
    "extend", "greedy_solve", "init_state", "neighbors", "Move", "correct",
    "improving_moves", "ExactResult", "exact_optimum", "UNASSIGNED", "ContractError",
    "FeasibilityReport", "IntegrityError", "InvalidInstanceError", "Partition",
    "ProblemGraph", "is_feasible", "objective", "subgraph_surplus",
    "InstanceFormatError", "InstanceSpec", "generate", "generate_with_witness",
    "read_instance", "write_instance",
]
__version__ = "0.1.0"
