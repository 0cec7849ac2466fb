"""Finite abstract rewriting systems and the greedy rewriting system over matchings.

A :class:`RewriteSystem` is a finite digraph over hashable states. Confluence
checks are done on reachability sets stored as integer bitmasks, which keeps
the quadratic checks cheap for systems of a few thousand states.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterator, List, Optional, Sequence, Tuple

from .graph import BudgetExceeded, Edge, Matching, OrderedBipartiteGraph, check_matching

DEFAULT_MAX_STATES = 1_000_000
FULL_SYSTEM_MAX_EDGES = 12

State = Hashable


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class RewriteSystem:
    states: Tuple[State, ...]
    arcs: Tuple[Tuple[State, State], ...]

    index: Dict[State, int] = field(init=False, repr=False, compare=False)
    succ: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        states = tuple(self.states)
        index = {s: i for i, s in enumerate(states)}
        if len(index) != len(states):
            raise ValueError("duplicate state in rewrite system")
        succ: List[List[int]] = [[] for _ in states]
        arcs = []
        for a, b in self.arcs:
            if a not in index or b not in index:
                raise ValueError(f"arc {a!r} -> {b!r} references an unknown state")
            if index[b] not in succ[index[a]]:
                succ[index[a]].append(index[b])
                arcs.append((a, b))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "arcs", tuple(arcs))
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "succ", tuple(tuple(s) for s in succ))

    def successors(self, s: State) -> Tuple[State, ...]:
        return tuple(self.states[j] for j in self.succ[self.index[s]])

    def sinks(self) -> FrozenSet[State]:
        return frozenset(s for s, out in zip(self.states, self.succ) if not out)

    @cached_property
    def _topological(self) -> Optional[List[int]]:
        ts = TopologicalSorter({i: out for i, out in enumerate(self.succ)})
        try:
            # successors come first: children are "predecessors" for graphlib
            return list(ts.static_order())
        except CycleError:
            return None

    @cached_property
    def reach(self) -> Tuple[int, ...]:
        """Reflexive-transitive reachability, one bitmask per state."""
        n = len(self.states)
        masks = [0] * n
        order = self._topological
        if order is not None:
            for i in order:
                m = 1 << i
                for j in self.succ[i]:
                    m |= masks[j]
                masks[i] = m
            return tuple(masks)
        for i in range(n):
            seen = 1 << i
            todo = [i]
            while todo:
                u = todo.pop()
                for v in self.succ[u]:
                    if not seen >> v & 1:
                        seen |= 1 << v
                        todo.append(v)
            masks[i] = seen
        return tuple(masks)

    @cached_property
    def _sink_mask(self) -> int:
        m = 0
        for i, out in enumerate(self.succ):
            if not out:
                m |= 1 << i
        return m

    def to_json(self, encode: Callable[[State], Any] = str) -> Dict[str, Any]:
        return {
            "states": [encode(s) for s in self.states],
            "arcs": [[encode(a), encode(b)] for a, b in self.arcs],
        }


def sinks_reachable(sys: RewriteSystem, start: State) -> FrozenSet[State]:
    if start not in sys.index:
        raise KeyError(f"unknown start state {start!r}")
    mask = sys.reach[sys.index[start]] & sys._sink_mask
    return frozenset(sys.states[i] for i in _bits(mask))


def satisfies_unique_sink(sys: RewriteSystem) -> bool:
    sinks = sys._sink_mask
    return all(bin(r & sinks).count("1") == 1 for r in sys.reach)


def is_locally_confluent(sys: RewriteSystem) -> bool:
    reach = sys.reach
    for out in sys.succ:
        for b, c in itertools.combinations(out, 2):
            if not reach[b] & reach[c]:
                return False
    return True


def is_confluent(sys: RewriteSystem) -> bool:
    """Every two states with a common ancestor have a common descendant."""
    reach = sys.reach
    n = len(reach)
    ancestors = [0] * n
    for a, r in enumerate(reach):
        for b in _bits(r):
            ancestors[b] |= 1 << a
    for b in range(n):
        co_reachable = 0
        for a in _bits(ancestors[b]):
            co_reachable |= reach[a]
        for c in _bits(co_reachable >> (b + 1)):
            if not reach[b] & reach[b + 1 + c]:
                return False
    return True


def is_acyclic(sys: RewriteSystem) -> bool:
    return sys._topological is not None


# -- the greedy rewriting system over matchings --------------------------------


@dataclass(frozen=True)
class GreedyFrontier:
    """Unmatched vertices that still have an unmatched neighbour, per side."""

    l_frontier: FrozenSet[str]
    r_frontier: FrozenSet[str]

    def __bool__(self) -> bool:
        return bool(self.l_frontier)


def _frontier_ranks(g: OrderedBipartiteGraph, m: Matching) -> Tuple[List[int], List[int]]:
    ml = {g.left_rank[x] for x, _ in m}
    mr = {g.right_rank[y] for _, y in m}
    lf = [i for i, adj in enumerate(g.left_adj) if i not in ml and any(j not in mr for j in adj)]
    rf = [j for j, adj in enumerate(g.right_adj) if j not in mr and any(i not in ml for i in adj)]
    return lf, rf


def frontier(g: OrderedBipartiteGraph, m: Matching) -> GreedyFrontier:
    m = check_matching(g, m)
    lf, rf = _frontier_ranks(g, m)
    return GreedyFrontier(frozenset(g.left[i] for i in lf), frozenset(g.right[j] for j in rf))


def condition_edges(g: OrderedBipartiteGraph, m: Matching) -> Optional[Tuple[Edge, Edge]]:
    """The edges added by the L-Condition and the R-Condition arcs out of ``m``.

    Returns ``None`` when ``m`` is maximal. Both edges coincide exactly when the
    top of the left frontier is adjacent to the top of the right frontier.
    """
    m = check_matching(g, m)
    lf, rf = _frontier_ranks(g, m)
    if not lf:
        return None
    ml = {g.left_rank[x] for x, _ in m}
    mr = {g.right_rank[y] for _, y in m}
    x1 = lf[0]
    y1 = next(j for j in g.left_adj[x1] if j not in mr)
    y2 = rf[0]
    x2 = next(i for i in g.right_adj[y2] if i not in ml)
    return (g.left[x1], g.right[y1]), (g.left[x2], g.right[y2])


def greedy_successors(g: OrderedBipartiteGraph, m: Matching) -> FrozenSet[Matching]:
    edges = condition_edges(g, m)
    if edges is None:
        return frozenset()
    m = frozenset(m)
    return frozenset(m | {e} for e in edges)


def explore_greedy_system(g: OrderedBipartiteGraph, max_states: int = DEFAULT_MAX_STATES) -> RewriteSystem:
    """Breadth-first expansion of the greedy rewriting system from the empty matching."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    empty: Matching = frozenset()
    seen = {empty}
    order = [empty]
    arcs = []
    queue = deque([empty])
    while queue:
        m = queue.popleft()
        for m2 in sorted(greedy_successors(g, m), key=lambda s: sorted(s)):
            arcs.append((m, m2))
            if m2 not in seen:
                if len(seen) >= max_states:
                    raise BudgetExceeded("greedy system exploration", max_states, len(seen) + 1)
                seen.add(m2)
                order.append(m2)
                queue.append(m2)
    return RewriteSystem(tuple(order), tuple(arcs))


def full_greedy_system(g: OrderedBipartiteGraph, max_edges: int = FULL_SYSTEM_MAX_EDGES) -> RewriteSystem:
    """The greedy rewriting system over *every* matching of ``g`` (diagnostic only)."""
    edges = g.edge_list()
    if len(edges) > max_edges:
        raise BudgetExceeded("full greedy system (edges)", max_edges, len(edges))
    states: List[Matching] = []
    for size in range(min(len(g.left), len(g.right)) + 1):
        for combo in itertools.combinations(edges, size):
            xs = {x for x, _ in combo}
            ys = {y for _, y in combo}
            if len(xs) == size and len(ys) == size:
                states.append(frozenset(combo))
    arcs = [(m, m2) for m in states for m2 in greedy_successors(g, m)]
    return RewriteSystem(tuple(states), tuple(arcs))


def matching_label(m: Matching) -> str:
    """Compact, order-independent state label: ``x1-y2,x2-y1``."""
    return ",".join(f"{x}-{y}" for x, y in sorted(m))


# -- random systems for the Newman equivalence checks ---------------------------


def random_layered_dag(
    rng: random.Random,
    n_states: int,
    n_layers: int,
    arc_prob: float,
    funnel: float = 0.0,
) -> RewriteSystem:
    """A random DAG on at most ``n_states`` states, arcs only from lower to higher layers.

    With probability ``funnel`` each dead-end state is wired to a single shared
    terminal, which pushes the system towards the unique-sink condition.
    ``funnel=1`` always yields a unique-sink system. The terminal counts
    against ``n_states``.
    """
    if funnel > 0 and n_states > 1:
        n_states -= 1
    n_layers = max(1, min(n_layers, n_states))
    layer_of = sorted(rng.randrange(n_layers) for _ in range(n_states))
    arcs = []
    for a in range(n_states):
        for b in range(a + 1, n_states):
            if layer_of[b] > layer_of[a] and rng.random() < arc_prob:
                arcs.append((a, b))
    has_out = {a for a, _ in arcs}
    terminal = n_states
    dead = [a for a in range(n_states) if a not in has_out]
    wired = [a for a in dead if rng.random() < funnel]
    states: Sequence[int] = range(n_states + 1) if wired else range(n_states)
    arcs.extend((a, terminal) for a in wired)
    return RewriteSystem(tuple(states), tuple(arcs))


def plant_two_sink_fork(sys: RewriteSystem, rng: random.Random) -> RewriteSystem:
    """Add two fresh sinks hanging off one random state, breaking the unique-sink condition."""
    a = rng.choice(sys.states)
    b, c = ("fork", 0, a), ("fork", 1, a)
    return RewriteSystem(sys.states + (b, c), sys.arcs + ((a, b), (a, c)))
