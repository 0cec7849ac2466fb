"""Greedy matching procedures on vertex-ordered bipartite graphs.

All procedures share :class:`_GreedyRun`, which keeps the two frontiers
incrementally. Frontier membership only ever shrinks while a matching grows,
so the "top of frontier" cursors and the per-vertex neighbour cursors move
forward only and a complete run costs O(|L| + |R| + |E|).
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .graph import Matching, OrderedBipartiteGraph

log = logging.getLogger(__name__)

POLICY_KINDS = ("left", "right", "alternating", "random")


@dataclass(frozen=True)
class InterleavingPolicy:
    """Which arc to follow whenever the L- and R-Condition disagree.

    ``left`` and ``right`` always pick the same condition, ``alternating``
    flips at every choice point starting with L, ``random`` draws from a
    generator seeded with ``seed``.
    """

    kind: str = "left"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}; expected one of {POLICY_KINDS}")

    def choices(self) -> Iterator[str]:
        if self.kind == "left":
            while True:
                yield "L"
        elif self.kind == "right":
            while True:
                yield "R"
        elif self.kind == "alternating":
            while True:
                yield "L"
                yield "R"
        else:
            rng = random.Random(self.seed)
            while True:
                yield rng.choice("LR")


@dataclass(frozen=True)
class TraceStep:
    step: int
    condition: str  # "L", "R", or "LR" when both conditions add the same edge
    edge: Tuple[str, str]
    choice_point: bool


class _GreedyRun:
    def __init__(self, g: OrderedBipartiteGraph):
        self.g = g
        self.mate_l: List[Optional[int]] = [None] * len(g.left)
        self.mate_r: List[Optional[int]] = [None] * len(g.right)
        self._nl = [0] * len(g.left)
        self._nr = [0] * len(g.right)
        self._top_l = 0
        self._top_r = 0

    def best_of_left(self, i: int) -> Optional[int]:
        adj = self.g.left_adj[i]
        p = self._nl[i]
        while p < len(adj) and self.mate_r[adj[p]] is not None:
            p += 1
        self._nl[i] = p
        return adj[p] if p < len(adj) else None

    def best_of_right(self, j: int) -> Optional[int]:
        adj = self.g.right_adj[j]
        p = self._nr[j]
        while p < len(adj) and self.mate_l[adj[p]] is not None:
            p += 1
        self._nr[j] = p
        return adj[p] if p < len(adj) else None

    def top_left(self) -> Optional[int]:
        i = self._top_l
        while i < len(self.mate_l) and (self.mate_l[i] is not None or self.best_of_left(i) is None):
            i += 1
        self._top_l = i
        return i if i < len(self.mate_l) else None

    def top_right(self) -> Optional[int]:
        j = self._top_r
        while j < len(self.mate_r) and (self.mate_r[j] is not None or self.best_of_right(j) is None):
            j += 1
        self._top_r = j
        return j if j < len(self.mate_r) else None

    def l_edge(self) -> Optional[Tuple[int, int]]:
        i = self.top_left()
        return None if i is None else (i, self.best_of_left(i))

    def r_edge(self) -> Optional[Tuple[int, int]]:
        j = self.top_right()
        return None if j is None else (self.best_of_right(j), j)

    def add(self, i: int, j: int) -> None:
        self.mate_l[i] = j
        self.mate_r[j] = i

    def matching(self) -> Matching:
        g = self.g
        return frozenset((g.left[i], g.right[j]) for i, j in enumerate(self.mate_l) if j is not None)


def run_p_greedy(g: OrderedBipartiteGraph) -> Matching:
    """Repeatedly match the top left frontier vertex with its best free neighbour."""
    run = _GreedyRun(g)
    while (e := run.l_edge()) is not None:
        run.add(*e)
    return run.matching()


def run_p_greedy_prime(g: OrderedBipartiteGraph) -> Matching:
    """The same procedure driven from the right side."""
    run = _GreedyRun(g)
    while (e := run.r_edge()) is not None:
        run.add(*e)
    return run.matching()


def run_interleaved(
    g: OrderedBipartiteGraph,
    policy: InterleavingPolicy,
    trace: Optional[List[TraceStep]] = None,
) -> Matching:
    """Follow a path of the greedy rewriting system, branching according to ``policy``.

    Every step is logged at DEBUG level and, if ``trace`` is given, appended to it.
    """
    run = _GreedyRun(g)
    choices = policy.choices()
    step = 0
    while (le := run.l_edge()) is not None:
        re_ = run.r_edge()
        if le == re_:
            cond, e, choice_point = "LR", le, False
        else:
            cond = next(choices)
            e = le if cond == "L" else re_
            choice_point = True
        run.add(*e)
        ts = TraceStep(step, cond, (g.left[e[0]], g.right[e[1]]), choice_point)
        log.debug("step %d: %s-condition adds %s-%s%s", step, cond, *ts.edge, " (choice)" if choice_point else "")
        if trace is not None:
            trace.append(ts)
        step += 1
    return run.matching()


def run_pbt_greedy(g: OrderedBipartiteGraph) -> Matching:
    """Greedy matching restricted to partners that no more preferred left vertex can claim.

    Stops at the first top frontier vertex without such a partner, so the
    result need not saturate L.
    """
    run = _GreedyRun(g)
    while (x := run.top_left()) is not None:
        candidates = [
            j for j in g.left_adj[x]
            if run.mate_r[j] is None and g.right_adj[j][0] == x
        ]
        if not candidates:
            break
        run.add(x, candidates[0])
    return run.matching()
