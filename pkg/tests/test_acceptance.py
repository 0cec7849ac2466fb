"""Exit criteria. Each test prints one ``[acceptance]`` PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""
import itertools
import math
import random
import time

import pytest

from ordmatch import ars
from ordmatch.corpus import fixtures, random_graph_batch
from ordmatch.graph import INFINITY, is_l_saturating, matching_order
from ordmatch.greedy import InterleavingPolicy, run_interleaved, run_p_greedy, run_p_greedy_prime
from ordmatch.optimize import (
    brute_force_min_order,
    greedy_under_ordering,
    min_order_pbt,
    min_order_saturating,
    ordering_from_matching,
)
from ordmatch.oracles import all_greedy_paths_sinks, all_matchings, all_pbt_matchings
from ordmatch.teaching import (
    ConceptClass,
    ceil_log2,
    d_star,
    enumerate_realizable_samples,
    exact_cost_lower_bound,
    h_gamma,
    log_sample_estimate,
    phi,
    samples_up_to,
    solve_gamma0,
    subsample_check,
)

pytestmark = pytest.mark.acceptance

GAMMA0_TOL = 1e-9
CONCEPT_ORDERS = ["lex"] + [f"random:{s}" for s in range(10)]
SAMPLE_ORDERS = [None, 1, 2]  # lexicographic tie-break plus two seeded extensions


@pytest.fixture
def verdict(capsys):
    def emit(criterion: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[acceptance] {criterion}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def gamma0():
    return solve_gamma0(GAMMA0_TOL)


@pytest.fixture(scope="module")
def c_all_runs():
    """(n, concept order, sample order) -> subsample check for C_all, n = 1..8."""
    out = {}
    start = time.perf_counter()
    for n in range(1, 9):
        cc = ConceptClass.all_concepts(n)
        for co, so in itertools.product(CONCEPT_ORDERS, SAMPLE_ORDERS):
            out[n, co, so] = subsample_check(cc, co, so)
    return out, time.perf_counter() - start


def test_c1_unique_greedy_matching(verdict):
    start = time.perf_counter()
    graphs = list(fixtures().values()) + random_graph_batch(seed=2024, count=200, max_side=6)
    bad = []
    for t, g in enumerate(graphs):
        m = run_p_greedy(g)
        ok = all_greedy_paths_sinks(g) == {m} and run_p_greedy_prime(g) == m
        ok = ok and all(run_interleaved(g, InterleavingPolicy("random", s)) == m for s in range(20))
        if not ok:
            bad.append(t)
    elapsed = time.perf_counter() - start
    verdict("C1 unique greedy matching", not bad and elapsed < 10,
            f"({len(graphs)} graphs, failures={bad}, {elapsed:.2f}s)")


def test_c2_newman_equivalence(verdict):
    rng = random.Random(1942)
    systems = []
    for _ in range(500):
        systems.append(ars.random_layered_dag(rng, rng.randint(1, 200), rng.randint(1, 12),
                                              rng.choice((0.02, 0.05, 0.2)), rng.choice((0.0, 0.9, 1.0))))
    for _ in range(100):
        base = ars.random_layered_dag(rng, rng.randint(1, 198), rng.randint(1, 12),
                                      rng.choice((0.02, 0.05, 0.2)), rng.choice((0.0, 0.9, 1.0)))
        systems.append(ars.plant_two_sink_fork(base, rng))
    counts = {True: 0, False: 0}
    disagreements = 0
    for s in systems:
        assert len(s.states) <= 200 and ars.is_acyclic(s)
        u = ars.satisfies_unique_sink(s)
        if not (u == ars.is_confluent(s) == ars.is_locally_confluent(s)):
            disagreements += 1
        counts[u] += 1
    ok = disagreements == 0 and counts[True] >= 30 and counts[False] >= 30
    verdict("C2 Newman equivalence", ok,
            f"(disagreements={disagreements}, true={counts[True]}, false={counts[False]})")


def test_c3_minimum_order(verdict):
    start = time.perf_counter()
    problems = []
    checked = 0
    for name, g in fixtures().items():
        if len(g.edges) > 20:
            continue
        checked += 1
        k = min_order_saturating(g).order
        if k != brute_force_min_order(g).order:
            problems.append(f"{name}: min order")
        for m in all_matchings(g):
            if is_l_saturating(g, m):
                inherited = greedy_under_ordering(g, ordering_from_matching(g, m))
                if matching_order(g, inherited) > matching_order(g, m):
                    problems.append(f"{name}: inherited ordering")
        if len(g.left) <= 6:
            best = min((matching_order(g, greedy_under_ordering(g, p)) for p in itertools.permutations(g.left)),
                       default=INFINITY)
            if best != k:
                problems.append(f"{name}: ordering sweep")
    elapsed = time.perf_counter() - start
    verdict("C3 minimum order", not problems and elapsed < 60,
            f"({checked} graphs, problems={problems}, {elapsed:.2f}s)")


def test_c4_pbt_optimality(verdict):
    problems = []
    for name, g in fixtures().items():
        expected = min((matching_order(g, m) for m in all_pbt_matchings(g)), default=INFINITY)
        if min_order_pbt(g).order != expected:
            problems.append(name)
    verdict("C4 PBT optimality", not problems, f"(problems={problems})")


def _random_classes(count: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 6)
        universe = ["".join(b) for b in itertools.product("01", repeat=n)]
        out.append(ConceptClass(tuple(f"p{i}" for i in range(n)),
                                tuple(rng.sample(universe, rng.randint(1, min(40, len(universe)))))))
    return out


def test_c5_upper_bound(verdict, c_all_runs):
    runs, setup_time = c_all_runs
    start = time.perf_counter()
    problems = []
    cases = [(n, co, so, chk) for (n, co, so), chk in runs.items()]
    for t, cc in enumerate(_random_classes(30, seed=4)):
        for co, so in itertools.product(CONCEPT_ORDERS, SAMPLE_ORDERS):
            cases.append((f"random-{t}", co, so, subsample_check(cc, co, so)))
    for label, co, so, chk in cases:
        if chk.q > ceil_log2(chk.class_size):
            problems.append((label, co, so, "upper bound"))
        if chk.q >= 1 and not chk.ok:
            problems.append((label, co, so, "subsample remark"))
    elapsed = time.perf_counter() - start + setup_time
    verdict("C5 upper bound", not problems and elapsed < 120,
            f"({len(cases)} runs, problems={problems[:5]}, {elapsed:.2f}s)")


def test_c6_lower_bound(verdict, c_all_runs, gamma0):
    runs, _ = c_all_runs
    problems = []
    for (n, co, so), chk in runs.items():
        if not (chk.q >= gamma0 * n and chk.q >= exact_cost_lower_bound(n, 2 ** n)):
            problems.append((n, co, so, chk.q))
    worst = min(chk.q / n for (n, _, _), chk in runs.items())
    verdict("C6 lower bound", not problems, f"({len(runs)} runs, min q/n={worst:.3f}, problems={problems})")


def test_c7_gamma0(verdict, gamma0):
    grid = [i / 10 ** 4 for i in range(1, 10 ** 4 + 1)]
    values = [h_gamma(x) for x in grid]
    monotone = all(a < b for a, b in zip(values, values[1:]))
    d_ok = all(d_star(n) >= gamma0 * n for n in range(1, 10 ** 4 + 1))
    checks = {
        "range": 0.214 < gamma0 < 0.215,
        "root": abs(h_gamma(gamma0) - 2) <= 1e-7,
        "monotone": monotone,
        "h(1)": abs(h_gamma(1.0) - 2 * math.e) <= 1e-12,
        "d_star": d_ok,
    }
    verdict("C7 gamma0", all(checks.values()), f"(gamma0={gamma0:.10f}, {checks})")


def test_c8_counting_identities(verdict):
    problems = []
    for n in range(0, 9):
        enumerated = len(enumerate_realizable_samples(ConceptClass.all_concepts(n)))
        if not samples_up_to(n, n) == 3 ** n == enumerated:
            problems.append(("samples", n))
    for n in range(1, 31):
        for d in range(1, n + 1):
            lhs = math.log(phi(n, d))
            rhs = d * (1 + math.log(n) - math.log(d))
            if lhs > rhs + 1e-9 * max(1.0, abs(rhs)):
                problems.append(("phi", n, d))
            # the sample-count estimate used for d*, in the same log form
            if math.log(samples_up_to(n, d)) > log_sample_estimate(n, d) + 1e-9 * max(1.0, abs(rhs)):
                problems.append(("samples estimate", n, d))
    verdict("C8 counting identities", not problems, f"(problems={problems})")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
