"""Minimum-order L-saturating matchings and the orderings that make greedy optimal."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .graph import (
    INFINITY,
    BudgetExceeded,
    Matching,
    MatchingError,
    Order,
    OrderedBipartiteGraph,
    check_matching,
    is_l_saturating,
    matching_order,
)
from .greedy import run_p_greedy, run_pbt_greedy

BRUTE_FORCE_MAX_EDGES = 24

LeftOrdering = Tuple[str, ...]


@dataclass(frozen=True)
class MinOrderResult:
    order: Order
    matching: Optional[Matching] = None
    witness_ordering: Optional[LeftOrdering] = None


def ordering_from_matching(g: OrderedBipartiteGraph, m: Matching) -> LeftOrdering:
    """Order the left vertices by the preference of their partners in ``m``."""
    m = check_matching(g, m)
    if len(m) != len(g.left):
        raise MatchingError("ordering_from_matching needs an L-saturating matching")
    return tuple(x for x, _ in sorted(m, key=lambda e: g.right_rank[e[1]]))


def greedy_under_ordering(g: OrderedBipartiteGraph, ordering: Sequence[str]) -> Matching:
    return run_p_greedy(g.with_left_order(ordering))


def _max_matching_by_prefix(g: OrderedBipartiteGraph) -> Tuple[int, List[Optional[int]]]:
    """Insert right vertices in preference order until L is saturated.

    After each insertion a single augmenting-path search from the new vertex
    restores a maximum matching of the prefix. Returns (k, mate_l), where k is
    the length of the first saturating prefix or 0 if there is none.
    """
    n_left = len(g.left)
    mate_l: List[Optional[int]] = [None] * n_left
    mate_r: List[Optional[int]] = [None] * len(g.right)
    size = 0
    for r0 in range(len(g.right)):
        if _augment_from(g, r0, mate_l, mate_r):
            size += 1
            if size == n_left:
                return r0 + 1, mate_l
    return 0, mate_l


def _augment_from(g: OrderedBipartiteGraph, r0: int, mate_l: List[Optional[int]], mate_r: List[Optional[int]]) -> bool:
    # iterative DFS over alternating paths; stack holds (right vertex, next neighbour index)
    visited = {r0}
    stack = [[r0, 0]]
    while stack:
        top = stack[-1]
        r, p = top
        adj = g.right_adj[r]
        if p == len(adj):
            stack.pop()
            continue
        top[1] = p + 1
        x = adj[p]
        r_next = mate_l[x]
        if r_next is None:
            # flip the path: level t is re-matched with the left vertex it descended through
            for level in stack[:-1]:
                rr, q = level
                xx = g.right_adj[rr][q - 1]
                mate_l[xx], mate_r[rr] = rr, xx
            mate_l[x], mate_r[r] = r, x
            return True
        if r_next not in visited:
            visited.add(r_next)
            stack.append([r_next, 0])
    return False


def min_order_saturating(g: OrderedBipartiteGraph) -> MinOrderResult:
    if not g.left:
        return MinOrderResult(0, frozenset(), ())
    k, mate_l = _max_matching_by_prefix(g)
    if k == 0:
        return MinOrderResult(INFINITY)
    m = frozenset((g.left[i], g.right[j]) for i, j in enumerate(mate_l))
    return MinOrderResult(k, m, ordering_from_matching(g, m))


def min_order_pbt(g: OrderedBipartiteGraph) -> MinOrderResult:
    """Order of the PBT greedy matching under the given orders, or infinity.

    Infinity certifies that no L-saturating matching with the PBT-property exists.
    """
    m = run_pbt_greedy(g)
    if not is_l_saturating(g, m):
        return MinOrderResult(INFINITY)
    return MinOrderResult(matching_order(g, m), m, g.left)


def brute_force_min_order(g: OrderedBipartiteGraph, max_edges: int = BRUTE_FORCE_MAX_EDGES) -> MinOrderResult:
    """Minimum order over every matching, by edge inclusion/exclusion with vertex masks."""
    edges = g.edge_list()
    if len(edges) > max_edges:
        raise BudgetExceeded("brute-force minimum order (edges)", max_edges, len(edges))
    ranked = [(g.left_rank[x], g.right_rank[y]) for x, y in edges]
    full_left = (1 << len(g.left)) - 1
    best: List = [INFINITY, None]

    def visit(t: int, used_l: int, used_r: int, chosen: List[int], highest: int) -> None:
        if used_l == full_left:
            if highest < best[0]:
                best[0], best[1] = highest, list(chosen)
            return
        if t == len(ranked):
            return
        i, j = ranked[t]
        if not (used_l >> i & 1 or used_r >> j & 1):
            chosen.append(t)
            visit(t + 1, used_l | 1 << i, used_r | 1 << j, chosen, max(highest, j + 1))
            chosen.pop()
        visit(t + 1, used_l, used_r, chosen, highest)

    visit(0, 0, 0, [], 0)
    if best[1] is None:
        return MinOrderResult(INFINITY)
    m = frozenset(edges[t] for t in best[1])
    return MinOrderResult(best[0], m, ordering_from_matching(g, m))
