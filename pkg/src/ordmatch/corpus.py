"""Fixture graphs and random instance generators.

The fixtures are chosen so that every result has both a positive and a
boundary witness: graphs without any L-saturating matching, graphs that have
one but no PBT matching, states with two outgoing rewrite arcs, and right
vertices without neighbours. ``python -m ordmatch.corpus DIR`` writes them
as JSON graph files.
"""
from __future__ import annotations

import itertools
import json
import random
import sys
from pathlib import Path
from typing import Dict, List, Tuple

from .graph import OrderedBipartiteGraph


def compact_graph(left: str, right: str, edges: str) -> OrderedBipartiteGraph:
    """Shorthand: ``compact_graph("x1 x2", "y1 y2", "x1y2 x2y1")``."""
    ls, rs = left.split(), right.split()
    pairs = []
    for tok in edges.split():
        cut = tok.index("y")
        pairs.append((tok[:cut], tok[cut:]))
    return OrderedBipartiteGraph(tuple(ls), tuple(rs), frozenset(pairs))


def _complete(nl: int, nr: int) -> OrderedBipartiteGraph:
    ls = [f"x{i + 1}" for i in range(nl)]
    rs = [f"y{j + 1}" for j in range(nr)]
    return OrderedBipartiteGraph(tuple(ls), tuple(rs), frozenset(itertools.product(ls, rs)))


def random_graph(rng: random.Random, n_left: int, n_right: int, p: float) -> OrderedBipartiteGraph:
    """Erdos-Renyi bipartite graph with shuffled preference orders."""
    ls = [f"x{i + 1}" for i in range(n_left)]
    rs = [f"y{j + 1}" for j in range(n_right)]
    edges = frozenset((x, y) for x in ls for y in rs if rng.random() < p)
    rng.shuffle(ls)
    rng.shuffle(rs)
    return OrderedBipartiteGraph(tuple(ls), tuple(rs), edges)


def _hand_made() -> Dict[str, OrderedBipartiteGraph]:
    return {
        "empty": compact_graph("", "", ""),
        "no-edges": compact_graph("x1 x2", "y1 y2", ""),
        "left-only": compact_graph("x1 x2", "", ""),
        "right-only": compact_graph("", "y1 y2 y3", ""),
        "single-edge": compact_graph("x1", "y1", "x1y1"),
        "late-partner": compact_graph("x1", "y1 y2", "x1y2"),
        "three-right": compact_graph("x1 x2", "y1 y2 y3", "x1y2 x1y3 x2y2"),
        "crossing": compact_graph("x1 x2", "y1 y2", "x1y2 x2y1"),
        "parallel": compact_graph("x1 x2", "y1 y2", "x1y1 x2y2"),
        "pbt-chain": compact_graph("x1 x2", "y1 y2", "x1y1 x2y1 x2y2"),
        "no-pbt": compact_graph("x1 x2", "y1 y2", "x1y2 x2y2 x1y1"),
        "k22": _complete(2, 2),
        "k23": _complete(2, 3),
        "k33": _complete(3, 3),
        "k34": _complete(3, 4),
        "star-left": compact_graph("x1 x2 x3", "y1", "x1y1 x2y1 x3y1"),
        "star-right": compact_graph("x1", "y1 y2 y3", "x1y1 x1y2 x1y3"),
        # greedy takes y1 for x1 and strands x2; a saturating matching exists
        "greedy-strands": compact_graph("x1 x2", "y1 y2", "x1y1 x1y2 x2y1"),
        # reordering L lowers the order: best is x2y1 x1y2, greedy gives x1y1 x2y3
        "reorder-helps": compact_graph("x1 x2", "y1 y2 y3", "x1y1 x1y2 x2y1 x2y3"),
        "isolated-top-right": compact_graph("x1 x2 x3", "y1 y2 y3 y4", "x1y2 x2y3 x3y4 x1y4 x2y2"),
        "hall-violation": compact_graph("x1 x2 x3", "y1 y2 y3", "x1y1 x2y1 x3y1 x3y2 x3y3"),
        "path-4": compact_graph("x1 x2", "y1 y2", "x1y1 x2y1 x1y2"),
        "ladder": compact_graph("x1 x2 x3", "y1 y2 y3", "x1y2 x2y1 x2y3 x3y2"),
        "two-branch-deep": compact_graph("x1 x2 x3", "y1 y2 y3", "x1y3 x2y2 x3y1 x1y2"),
        "pbt-blocked-late": compact_graph("x1 x2 x3", "y1 y2 y3", "x1y1 x1y2 x2y2 x3y2 x3y3"),
        "staircase": compact_graph("x1 x2 x3", "y1 y2 y3", "x1y1 x2y1 x2y2 x3y1 x3y2 x3y3"),
        "anti-staircase": compact_graph("x1 x2 x3", "y1 y2 y3", "x1y3 x2y2 x2y3 x3y1 x3y2 x3y3"),
    }


def fixtures() -> Dict[str, OrderedBipartiteGraph]:
    """About forty named fixture graphs, all with at most 20 edges and |L| <= 6."""
    out = _hand_made()
    rng = random.Random(20240611)
    shapes = [(3, 3, 0.5), (3, 4, 0.4), (4, 4, 0.35), (4, 5, 0.5), (2, 5, 0.6),
              (5, 4, 0.6), (4, 6, 0.3), (5, 5, 0.5), (6, 6, 0.3), (4, 4, 0.8),
              (5, 6, 0.4), (6, 5, 0.45), (3, 6, 0.7)]
    for t, (nl, nr, p) in enumerate(shapes):
        g = random_graph(rng, nl, nr, p)
        while len(g.edges) > 20:
            g = random_graph(rng, nl, nr, p)
        out[f"random-{t:02d}-{nl}x{nr}"] = g
    return out


def write_fixtures(directory: Path) -> List[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, g in fixtures().items():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(g.to_json(), indent=1) + "\n")
        paths.append(path)
    return paths


def random_graph_batch(seed: int, count: int, max_side: int = 6,
                       probs: Tuple[float, ...] = (0.2, 0.5, 0.8)) -> List[OrderedBipartiteGraph]:
    rng = random.Random(seed)
    return [random_graph(rng, rng.randint(0, max_side), rng.randint(0, max_side), probs[i % len(probs)])
            for i in range(count)]


if __name__ == "__main__":
    for p in write_fixtures(Path(sys.argv[1] if len(sys.argv) > 1 else "corpus")):
        print(p)
