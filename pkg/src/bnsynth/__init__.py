"""Synthesis of locally-monotonic Boolean networks under most permissive semantics."""

from .candidates import MAX, candidate_count, dedekind, enumerate_local_candidates
from .core import (
    NEG,
    POS,
    BooleanNetwork,
    Configuration,
    DimensionError,
    Hypercube,
    InfluenceGraph,
    MonotoneDNF,
    influence_graph_of,
    is_subgraph,
)
from .problem import Observation, ProblemError, Solution, SynthesisProblem
from .semantics import (
    CapacityError,
    attractors,
    eval_on_hypercube,
    is_fixpoint,
    is_reachable,
    smallest_constrained_trap_space,
    smallest_trap_space,
    trap_component_fixed,
)
from .synthesis import (
    check_problem,
    count_solutions,
    enumerate_solutions,
    first_solution,
    search_space_size,
    synthesize,
    verify_solution,
)

__version__ = "0.1.0"
