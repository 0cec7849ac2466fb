"""Greedy matchings in vertex-ordered bipartite graphs."""
from .graph import (
    INFINITY,
    BudgetExceeded,
    GraphError,
    MatchingError,
    OrderedBipartiteGraph,
    check_matching,
    has_pbt_property,
    is_l_saturating,
    matching_order,
    validate_graph,
)
from .greedy import InterleavingPolicy, run_interleaved, run_p_greedy, run_p_greedy_prime, run_pbt_greedy
from .optimize import (
    MinOrderResult,
    brute_force_min_order,
    greedy_under_ordering,
    min_order_pbt,
    min_order_saturating,
    ordering_from_matching,
)

__all__ = [
    "INFINITY", "BudgetExceeded", "GraphError", "MatchingError", "OrderedBipartiteGraph",
    "check_matching", "has_pbt_property", "is_l_saturating", "matching_order", "validate_graph",
    "InterleavingPolicy", "run_interleaved", "run_p_greedy", "run_p_greedy_prime", "run_pbt_greedy",
    "MinOrderResult", "brute_force_min_order", "greedy_under_ordering", "min_order_pbt",
    "min_order_saturating", "ordering_from_matching",
]
