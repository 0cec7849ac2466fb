"""Command-line interface: ``ordmatch <command> ...``.

Every command prints one JSON report on stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 oracle disagreement, 2 bad input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import ars, oracles
from .graph import (
    BudgetExceeded,
    GraphError,
    OrderedBipartiteGraph,
    has_pbt_property,
    is_l_saturating,
    matching_order,
    matching_to_json,
    order_to_json,
    validate_graph,
)
from .greedy import InterleavingPolicy, run_interleaved, run_p_greedy, run_p_greedy_prime, run_pbt_greedy
from .optimize import brute_force_min_order, min_order_pbt, min_order_saturating
from . import teaching

log = logging.getLogger("ordmatch")

EXIT_OK, EXIT_ORACLE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    oracle_agreement: Optional[bool] = None

    def to_json(self) -> Dict[str, Any]:
        out = {"command": self.command, "inputs": self.inputs, "results": self.results}
        if self.oracle_agreement is not None:
            out["oracle_agreement"] = self.oracle_agreement
        return out


class InputError(Exception):
    pass


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def load_graph(path: str) -> OrderedBipartiteGraph:
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        return validate_graph(raw)
    except GraphError as exc:
        raise InputError(f"{path}: " + "; ".join(exc.violations)) from None


def load_concept_class(path: str) -> teaching.ConceptClass:
    raw = _load_json(path)
    try:
        return teaching.ConceptClass.from_json(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _max_states(arg: Optional[int]) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("ORDMATCH_MAX_STATES")
    return int(env) if env else ars.DEFAULT_MAX_STATES


# -- commands --------------------------------------------------------------------


def cmd_greedy(graph_file: str, side: str = "l", seed: Optional[int] = None, oracle: bool = False) -> Report:
    g = load_graph(graph_file)
    rep = Report("greedy", {"graph": graph_file, "side": side, "seed": seed})
    trace: List = []
    if side == "l":
        m = run_p_greedy(g)
    elif side == "r":
        m = run_p_greedy_prime(g)
    else:
        m = run_interleaved(g, InterleavingPolicy("random", seed if seed is not None else 0), trace)
    rep.results = {
        "matching": matching_to_json(g, m),
        "order": order_to_json(matching_order(g, m)),
        "maximal": not ars.frontier(g, m),
    }
    if trace:
        rep.results["trace"] = [[t.condition, *t.edge] for t in trace]
    if oracle:
        rep.oracle_agreement = oracles.all_greedy_paths_sinks(g) == {m}
    return rep


def cmd_confluence(graph_file: Optional[str], max_states: Optional[int] = None, full: bool = False,
                   demo_newman: Optional[int] = None, oracle: bool = False) -> Report:
    if demo_newman is not None:
        rng = random.Random(demo_newman)
        sys_ = ars.plant_two_sink_fork(ars.random_layered_dag(rng, 12, 4, 0.3, funnel=1.0), rng)
        rep = Report("confluence", {"demo_newman": demo_newman})
        start = None
    else:
        if graph_file is None:
            raise InputError("confluence needs a graph file or --demo-newman SEED")
        g = load_graph(graph_file)
        rep = Report("confluence", {"graph": graph_file, "full": full, "max_states": _max_states(max_states)})
        sys_ = ars.full_greedy_system(g) if full else ars.explore_greedy_system(g, _max_states(max_states))
        start = frozenset()
    sinks = sys_.sinks() if start is None else ars.sinks_reachable(sys_, start)
    rep.results = {
        "states": len(sys_.states),
        "arcs": len(sys_.arcs),
        "sinks": len(sinks),
        "acyclic": ars.is_acyclic(sys_),
        "locally_confluent": ars.is_locally_confluent(sys_),
        "confluent": ars.is_confluent(sys_),
        "unique_sink": ars.satisfies_unique_sink(sys_),
    }
    if start is not None:
        greedy = next(iter(sinks)) if len(sinks) == 1 else None
        rep.results["greedy_matching"] = None if greedy is None else matching_to_json(g, greedy)
        if oracle:
            rep.oracle_agreement = oracles.all_greedy_paths_sinks(g) == set(sinks)
    return rep


def cmd_min_order(graph_file: str, oracle: bool = False) -> Report:
    g = load_graph(graph_file)
    res = min_order_saturating(g)
    rep = Report("min-order", {"graph": graph_file})
    rep.results = {
        "order": order_to_json(res.order),
        "matching": None if res.matching is None else matching_to_json(g, res.matching),
        "witness_ordering": None if res.witness_ordering is None else list(res.witness_ordering),
    }
    if oracle:
        rep.oracle_agreement = (
            brute_force_min_order(g).order == res.order == oracles.min_order_by_enumeration(g)
        )
    return rep


def cmd_pbt(graph_file: str, oracle: bool = False) -> Report:
    g = load_graph(graph_file)
    m = run_pbt_greedy(g)
    res = min_order_pbt(g)
    rep = Report("pbt", {"graph": graph_file, "reading": "R' filter excludes partners of any x' preferred over x*"})
    rep.results = {
        "matching": matching_to_json(g, m),
        "saturating": is_l_saturating(g, m),
        "pbt_property": has_pbt_property(g, m),
        "order": order_to_json(res.order),
    }
    if oracle:
        rep.oracle_agreement = oracles.min_order_by_enumeration(g, pbt_only=True) == res.order
    return rep


def _teach_one(args) -> Dict[str, Any]:
    cc, order, sample_seed = args
    rep = teaching.bound_report(cc, order, sample_seed)
    out = rep.to_json()
    out["concept_order"] = order if isinstance(order, str) or order is None else "file"
    return out


def cmd_teach(class_file: str, concept_order: str = "lex", orders: int = 0, sample_seed: Optional[int] = None,
              jobs: int = 1, oracle: bool = False) -> Report:
    cc = load_concept_class(class_file)
    first: Any = concept_order
    if concept_order not in ("lex",) and not concept_order.startswith("random:"):
        first = _load_json(concept_order)
        if not isinstance(first, list):
            raise InputError(f"{concept_order}: concept order file must hold a JSON list")
    tasks = [(cc, first, sample_seed)] + [(cc, f"random:{s}", sample_seed) for s in range(orders)]
    try:
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                runs = list(pool.map(_teach_one, tasks))
        else:
            runs = [_teach_one(t) for t in tasks]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = Report("teach", {"class": class_file, "concept_order": concept_order, "orders": orders,
                           "sample_seed": sample_seed})
    rep.results = {"runs": runs}
    if oracle:
        g = teaching.build_consistency_graph(cc, None, sample_seed)
        agree = oracles.consistency_edges(cc) == set(g.edges)
        for r in runs:
            agree &= r["exact_lower_bound"] <= r["greedy_cost"] <= r["upper_bound"] and r["subsample_bound"]
        rep.oracle_agreement = bool(agree)
    return rep


def cmd_bounds(n: int, oracle: bool = False) -> Report:
    if n < 0:
        raise InputError("n must be non-negative")
    gamma0 = teaching.solve_gamma0()
    rep = Report("bounds", {"n": n})
    rep.results = {
        "phi": [teaching.phi(n, d) for d in range(n + 1)],
        "samples_up_to": [teaching.samples_up_to(n, d) for d in range(n + 1)],
        "d_star": teaching.d_star(n) if n >= 1 else None,
        "exact_lower_bound": teaching.exact_cost_lower_bound(n, 2 ** n),
        "gamma0": gamma0,
        "gamma0_times_n": gamma0 * n,
    }
    if oracle:
        target = n * math.log(2)
        linear = next((d for d in range(1, n + 1) if teaching.log_sample_estimate(n, d) >= target), None)
        rep.oracle_agreement = (
            rep.results["samples_up_to"][-1] == 3 ** n
            and rep.results["phi"][-1] == 2 ** n
            and (n == 0 or linear == rep.results["d_star"])
        )
    return rep


def cmd_newman(count: int, seed: int) -> Report:
    """Random layered DAGs, half of them with a planted two-sink fork."""
    rng = random.Random(seed)
    tally = {"agree": 0, "disagree": 0, "unique_sink_true": 0, "unique_sink_false": 0}
    for t in range(count):
        sys_ = ars.random_layered_dag(rng, rng.randint(1, 200), rng.randint(1, 12), rng.choice((0.02, 0.05, 0.2)),
                                      funnel=rng.choice((0.0, 0.9, 1.0)))
        if t % 2:
            sys_ = ars.plant_two_sink_fork(sys_, rng)
        verdicts = {ars.satisfies_unique_sink(sys_), ars.is_confluent(sys_), ars.is_locally_confluent(sys_)}
        tally["agree" if len(verdicts) == 1 else "disagree"] += 1
        tally[f"unique_sink_{str(ars.satisfies_unique_sink(sys_)).lower()}"] += 1
    rep = Report("newman", {"count": count, "seed": seed}, tally)
    rep.oracle_agreement = tally["disagree"] == 0
    return rep


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordmatch", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log greedy traces to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("greedy", parents=[common], help="greedy matching of a graph file")
    s.add_argument("graph")
    s.add_argument("--side", choices=("l", "r", "interleave"), default="l")
    s.add_argument("--seed", type=int)
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("confluence", parents=[common], help="explore the greedy rewriting system")
    s.add_argument("graph", nargs="?")
    s.add_argument("--max-states", type=int)
    s.add_argument("--full", action="store_true", help="all matchings, graphs with <= 12 edges only")
    s.add_argument("--demo-newman", type=int, metavar="SEED", help="check a random DAG with a planted two-sink fork")
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("min-order", parents=[common], help="minimum-order L-saturating matching")
    s.add_argument("graph")
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("pbt", parents=[common], help="greedy matching with the PBT-property")
    s.add_argument("graph")
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("teach", parents=[common], help="greedy teaching cost of a concept class")
    s.add_argument("concept_class")
    s.add_argument("--concept-order", default="lex", help="lex, random:SEED, or a JSON file listing the concepts")
    s.add_argument("--orders", type=int, default=0, help="additional random concept orders to sweep")
    s.add_argument("--sample-seed", type=int, help="random tie-break among equal-size samples")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("bounds", parents=[common], help="counting bounds and gamma0 for a domain size")
    s.add_argument("n", type=int)
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("newman", parents=[common], help="Newman equivalence on random DAGs")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """Parse ``argv`` and execute; returns (exit code, report dict or None)."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        if args.command == "greedy":
            rep = cmd_greedy(args.graph, args.side, args.seed, args.oracle)
        elif args.command == "confluence":
            rep = cmd_confluence(args.graph, args.max_states, args.full, args.demo_newman, args.oracle)
        elif args.command == "min-order":
            rep = cmd_min_order(args.graph, args.oracle)
        elif args.command == "pbt":
            rep = cmd_pbt(args.graph, args.oracle)
        elif args.command == "teach":
            rep = cmd_teach(args.concept_class, args.concept_order, args.orders, args.sample_seed, args.jobs,
                            args.oracle)
        elif args.command == "bounds":
            rep = cmd_bounds(args.n, args.oracle)
        else:
            rep = cmd_newman(args.count, args.seed)
    except InputError as exc:
        print(f"ordmatch: error: {exc}", file=sys.stderr)
        return EXIT_INPUT, None
    except BudgetExceeded as exc:
        print(f"ordmatch: error: {exc}", file=sys.stderr)
        err = Report(args.command, {k: v for k, v in vars(args).items() if k != "command"},
                     {"error": "budget exceeded", "what": exc.what, "limit": exc.limit, "reached": exc.reached})
        return EXIT_BUDGET, err.to_json()
    code = EXIT_ORACLE if rep.oracle_agreement is False else EXIT_OK
    return code, rep.to_json()


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out = run(argv)
    if out is not None:
        json.dump(out, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
