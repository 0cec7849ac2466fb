"""Brute-force reference implementations.

Nothing in the optimized code paths imports this module. The only shared
code is the successor relation of the greedy rewriting system, which *is*
the definition being enumerated.
"""
from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, List, Set, Tuple

from .ars import greedy_successors
from .graph import INFINITY, BudgetExceeded, Matching, Order, OrderedBipartiteGraph
from .teaching import ConceptClass

MAX_EDGES = 24
MAX_PATH_STATES = 200_000


def all_matchings(g: OrderedBipartiteGraph, max_edges: int = MAX_EDGES) -> List[Matching]:
    """Every matching of ``g`` exactly once, by pruned edge-subset recursion."""
    edges = sorted(g.edges)
    if len(edges) > max_edges:
        raise BudgetExceeded("all_matchings (edges)", max_edges, len(edges))
    out: List[Matching] = []

    def rec(t: int, chosen: Tuple, used_l: FrozenSet[str], used_r: FrozenSet[str]) -> None:
        if t == len(edges):
            out.append(frozenset(chosen))
            return
        x, y = edges[t]
        rec(t + 1, chosen, used_l, used_r)
        if x not in used_l and y not in used_r:
            rec(t + 1, chosen + (edges[t],), used_l | {x}, used_r | {y})

    rec(0, (), frozenset(), frozenset())
    return out


def _order(g: OrderedBipartiteGraph, m: Matching) -> Order:
    # restated from the definition on purpose, without calling graph.matching_order
    if {x for x, _ in m} != set(g.left):
        return INFINITY
    k = 0
    for idx, y in enumerate(g.right, start=1):
        if any(y == yy for _, yy in m):
            k = idx
    return k


def _pbt(g: OrderedBipartiteGraph, m: Matching) -> bool:
    if {x for x, _ in m} != set(g.left):
        return False
    pos = {x: i for i, x in enumerate(g.left)}
    for x, y in m:
        for x2 in g.left[: pos[x]]:
            if (x2, y) in g.edges:
                return False
    return True


def all_pbt_matchings(g: OrderedBipartiteGraph, max_edges: int = MAX_EDGES) -> List[Matching]:
    return [m for m in all_matchings(g, max_edges) if _pbt(g, m)]


def min_order_by_enumeration(g: OrderedBipartiteGraph, pbt_only: bool = False) -> Order:
    ms = all_pbt_matchings(g) if pbt_only else all_matchings(g)
    return min((_order(g, m) for m in ms), default=INFINITY)


def all_greedy_paths_sinks(g: OrderedBipartiteGraph, max_states: int = MAX_PATH_STATES) -> Set[Matching]:
    """Terminal matchings of every maximal path from the empty matching.

    Depth-first over the successor relation; the sink set of a state is
    memoised, which visits every path's end without re-walking shared suffixes.
    """
    memo: Dict[Matching, FrozenSet[Matching]] = {}
    entered: Set[Matching] = set()

    def sinks(m: Matching) -> FrozenSet[Matching]:
        if m in memo:
            return memo[m]
        entered.add(m)
        if len(entered) > max_states:
            raise BudgetExceeded("greedy path enumeration", max_states, len(entered))
        succ = greedy_successors(g, m)
        result = frozenset([m]) if not succ else frozenset().union(*(sinks(s) for s in succ))
        memo[m] = result
        return result

    return set(sinks(frozenset()))


def min_greedy_order_over_orderings(g: OrderedBipartiteGraph) -> Order:
    """Minimum greedy-matching order over all |L|! left orderings, by simulation."""
    best: Order = INFINITY
    for perm in itertools.permutations(g.left):
        m = _naive_greedy(g, perm)
        best = min(best, _order(g, m))
    return best


def _naive_greedy(g: OrderedBipartiteGraph, left_order) -> Matching:
    # each left vertex in turn takes its most preferred free neighbour
    taken: Set[str] = set()
    m = set()
    for x in left_order:
        for y in g.right:
            if y not in taken and (x, y) in g.edges:
                taken.add(y)
                m.add((x, y))
                break
    return frozenset(m)


def consistency_edges(cc: ConceptClass) -> Set[Tuple[str, str]]:
    """Consistency-graph edges by testing every sample over the domain against every concept."""
    n = cc.n
    out = set()
    for pattern in itertools.product("-01", repeat=n):
        for c in cc.concepts:
            if all(p == "-" or p == b for p, b in zip(pattern, c)):
                out.add(("c:" + c, "s:" + "".join(pattern)))
    return out
