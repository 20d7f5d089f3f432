"""Minimum-locality index codes for unicast problems with up to three receivers."""

from .budget import BudgetExceeded
from .codes import (
    IndexCode,
    build_clique_cover_code,
    lift_esup_code,
    lower_esup_code,
    uncoded_code,
    verify_code,
)
from .graphs import (
    DirectedGraph,
    UndirectedGraph,
    complement,
    find_cycle,
    induced_subgraph,
    is_acyclic,
    underlying_undirected,
)
from .invariants import (
    CliquePartition,
    MaisClass,
    classify_subset,
    clique_cover_number,
    enumerate_maximal_cliques,
    independence_number,
    independent_directed_cycles,
    is_perfect,
    mais,
)
from .lp import LinearProgram, fractional_clique_cover_number, solve_min
from .problem import (
    Receiver,
    UnicastProblem,
    build_bstar,
    build_bstar_sub,
    esup,
    gstar,
    gstar_u,
    side_info_graph,
    subset_label_map,
    validate,
)
from .search import bruteforce_locality1_feasible, check_access_disjointness

__version__ = "0.1.0"
