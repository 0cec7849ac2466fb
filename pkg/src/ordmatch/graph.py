"""Vertex-ordered bipartite graphs, matchings and the order of a matching.

Preference is positional everywhere: index 0 of ``left``/``right`` is the most
preferred vertex. Vertex identifiers are opaque strings; internally they are
mapped to dense integer ranks so that "most preferred" is a ``min``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

INFINITY = math.inf

Edge = Tuple[str, str]
Matching = FrozenSet[Edge]
Order = Union[int, float]  # a natural number, or INFINITY


class GraphError(ValueError):
    """Raised when a graph description violates the type invariants.

    All violations found are collected in ``violations``.
    """

    def __init__(self, violations: Iterable[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class MatchingError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration or exploration ran past its configured limit."""

    def __init__(self, what: str, limit: int, reached: int):
        self.what = what
        self.limit = limit
        self.reached = reached
        super().__init__(f"{what}: budget of {limit} exceeded (reached {reached})")


@dataclass(frozen=True)
class OrderedBipartiteGraph:
    """A finite bipartite graph with strict total preference orders on both sides.

    ``left`` and ``right`` list vertex ids from most to least preferred. The
    constructor validates every invariant and raises :class:`GraphError` with
    the complete list of problems.
    """

    left: Tuple[str, ...]
    right: Tuple[str, ...]
    edges: FrozenSet[Edge]

    left_rank: Dict[str, int] = field(init=False, repr=False, compare=False)
    right_rank: Dict[str, int] = field(init=False, repr=False, compare=False)
    # neighbour ranks sorted by preference of the other side
    left_adj: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    right_adj: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        left = tuple(self.left)
        right = tuple(self.right)
        edges = frozenset((x, y) for x, y in self.edges)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "edges", edges)

        problems = _vertex_problems(left, right)
        left_rank = {x: i for i, x in enumerate(left)}
        right_rank = {y: j for j, y in enumerate(right)}
        for x, y in sorted(edges):
            if x not in left_rank:
                problems.append(f"dangling edge endpoint: {x!r} is not a left vertex (edge {x!r}-{y!r})")
            if y not in right_rank:
                problems.append(f"dangling edge endpoint: {y!r} is not a right vertex (edge {x!r}-{y!r})")
        if problems:
            raise GraphError(problems)

        ladj: List[List[int]] = [[] for _ in left]
        radj: List[List[int]] = [[] for _ in right]
        for x, y in edges:
            i, j = left_rank[x], right_rank[y]
            ladj[i].append(j)
            radj[j].append(i)
        object.__setattr__(self, "left_rank", left_rank)
        object.__setattr__(self, "right_rank", right_rank)
        object.__setattr__(self, "left_adj", tuple(tuple(sorted(a)) for a in ladj))
        object.__setattr__(self, "right_adj", tuple(tuple(sorted(a)) for a in radj))

    @classmethod
    def from_ranks(
        cls, left: Sequence[str], right: Sequence[str], pairs: Iterable[Tuple[int, int]]
    ) -> "OrderedBipartiteGraph":
        return cls(tuple(left), tuple(right), frozenset((left[i], right[j]) for i, j in pairs))

    def adjacent(self, x: str, y: str) -> bool:
        return (x, y) in self.edges

    def neighbors_of_left(self, x: str) -> Tuple[str, ...]:
        """Right neighbours of ``x``, most preferred first."""
        return tuple(self.right[j] for j in self.left_adj[self.left_rank[x]])

    def neighbors_of_right(self, y: str) -> Tuple[str, ...]:
        return tuple(self.left[i] for i in self.right_adj[self.right_rank[y]])

    def with_left_order(self, order: Sequence[str]) -> "OrderedBipartiteGraph":
        """Same graph with the left preference replaced by ``order``."""
        order = tuple(order)
        if len(order) != len(self.left) or set(order) != set(self.left):
            raise GraphError([f"invalid permutation of the left vertices: {list(order)!r}"])
        return OrderedBipartiteGraph(order, self.right, self.edges)

    def edge_list(self) -> List[Edge]:
        """Edges sorted by (left rank, right rank)."""
        return sorted(self.edges, key=lambda e: (self.left_rank[e[0]], self.right_rank[e[1]]))

    def to_json(self) -> Dict[str, Any]:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "edges": [list(e) for e in self.edge_list()],
        }


def _vertex_problems(left: Sequence[str], right: Sequence[str]) -> List[str]:
    problems = []
    seen: Dict[str, str] = {}
    for side, names in (("left", left), ("right", right)):
        for v in names:
            if not isinstance(v, str) or v == "":
                problems.append(f"empty identifier on the {side} side: {v!r}")
                continue
            if v in seen:
                problems.append(f"duplicate vertex {v!r} ({seen[v]} and {side})")
            else:
                seen[v] = side
    return problems


def validate_graph(raw: Mapping[str, Any]) -> OrderedBipartiteGraph:
    """Build a graph from its JSON description ``{"left", "right", "edges"}``.

    Unlike the constructor, this also rejects duplicate edges in the raw list.
    """
    problems = []
    for key in ("left", "right", "edges"):
        if key not in raw:
            problems.append(f"missing key {key!r}")
        elif not isinstance(raw[key], list):
            problems.append(f"{key!r} must be a list")
    if problems:
        raise GraphError(problems)

    edges: List[Edge] = []
    for e in raw["edges"]:
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            problems.append(f"malformed edge {e!r}")
            continue
        edges.append((e[0], e[1]))
    seen = set()
    for e in edges:
        if e in seen:
            problems.append(f"duplicate edge {e[0]!r}-{e[1]!r}")
        seen.add(e)
    try:
        g = OrderedBipartiteGraph(tuple(raw["left"]), tuple(raw["right"]), frozenset(edges))
    except GraphError as exc:
        raise GraphError(problems + exc.violations) from None
    if problems:
        raise GraphError(problems)
    return g


def check_matching(g: OrderedBipartiteGraph, m: Iterable[Edge]) -> Matching:
    """Return ``m`` as a frozen matching, raising :class:`MatchingError` if it is not one in ``g``."""
    m = frozenset((x, y) for x, y in m)
    used_l, used_r = set(), set()
    for x, y in m:
        if (x, y) not in g.edges:
            raise MatchingError(f"{x!r}-{y!r} is not an edge of the graph")
        if x in used_l or y in used_r:
            raise MatchingError(f"vertex occurs twice in the matching at {x!r}-{y!r}")
        used_l.add(x)
        used_r.add(y)
    return m


def is_l_saturating(g: OrderedBipartiteGraph, m: Iterable[Edge]) -> bool:
    m = check_matching(g, m)
    return len(m) == len(g.left)


def matching_order(g: OrderedBipartiteGraph, m: Iterable[Edge]) -> Order:
    """Smallest k such that ``m`` saturates L and leaves y_{k+1}..y_N unmatched.

    Non-saturating matchings have order ``INFINITY``; with L empty the order is 0.
    """
    m = check_matching(g, m)
    if len(m) != len(g.left):
        return INFINITY
    return max((g.right_rank[y] + 1 for _, y in m), default=0)


def has_pbt_property(g: OrderedBipartiteGraph, m: Iterable[Edge]) -> bool:
    """True iff ``m`` saturates L and each partner's most preferred neighbour is its mate."""
    m = check_matching(g, m)
    if len(m) != len(g.left):
        return False
    for x, y in m:
        if g.right_adj[g.right_rank[y]][0] != g.left_rank[x]:
            return False
    return True


def matching_to_json(g: OrderedBipartiteGraph, m: Iterable[Edge]) -> List[List[str]]:
    return [list(e) for e in sorted(m, key=lambda e: (g.left_rank[e[0]], g.right_rank[e[1]]))]


def order_to_json(k: Order) -> Union[int, str]:
    return "inf" if k == INFINITY else int(k)
