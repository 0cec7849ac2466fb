import math
import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ordmatch.graph import BudgetExceeded
from ordmatch.optimize import min_order_saturating
from ordmatch.oracles import consistency_edges
from ordmatch.teaching import (
    ConceptClass,
    Sample,
    bound_report,
    build_consistency_graph,
    ceil_log2,
    check_subsample_bound,
    concept_ordering,
    d_star,
    enumerate_realizable_samples,
    exact_cost_lower_bound,
    greedy_cost,
    h_gamma,
    phi,
    samples_up_to,
    solve_gamma0,
    subsample_check,
)

GAMMA0 = solve_gamma0(1e-12)


@st.composite
def concept_classes(draw, max_n=5, max_size=20):
    n = draw(st.integers(0, max_n))
    universe = ["".join(bits) for bits in itertools.product("01", repeat=n)]
    size = draw(st.integers(1, min(max_size, len(universe))))
    concepts = draw(st.permutations(universe))[:size]
    return ConceptClass(tuple(f"p{i}" for i in range(n)), tuple(concepts))


def test_concept_class_validation():
    with pytest.raises(ValueError):
        ConceptClass(("a",), ("0", "0"))
    with pytest.raises(ValueError):
        ConceptClass(("a",), ("01",))
    with pytest.raises(ValueError):
        ConceptClass(("a", "a"), ("01",))
    with pytest.raises(ValueError):
        ConceptClass(("a",), ())
    assert ConceptClass.from_json({"domain_size": 2, "all": True}).concepts == ("00", "01", "10", "11")


def test_sample_roundtrip():
    s = Sample.from_pattern("-1-0")
    assert s.examples == ((1, 1), (3, 0)) and len(s) == 2
    assert s.pattern(4) == "-1-0"
    assert s.consistent_with("0110") and not s.consistent_with("0111")
    with pytest.raises(ValueError):
        Sample(((0, 1), (0, 0)))


def test_realizable_samples_single_concept():
    cc = ConceptClass(("a",), ("0",))
    assert [s.pattern(1) for s in enumerate_realizable_samples(cc)] == ["-", "0"]


@pytest.mark.parametrize("n, expected", [(1, 3), (2, 9), (3, 27)])
def test_realizable_samples_count(n, expected):
    samples = enumerate_realizable_samples(ConceptClass.all_concepts(n))
    assert len(samples) == expected
    assert len(samples[0]) == 0


def test_sample_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_realizable_samples(ConceptClass(tuple(f"p{i}" for i in range(17)), ("0" * 17,)))


@given(concept_classes(), st.one_of(st.none(), st.integers(0, 1000)))
@settings(max_examples=60)
def test_sample_order_extends_cardinality(cc, seed):
    sizes = [len(s) for s in enumerate_realizable_samples(cc, seed)]
    assert sizes == sorted(sizes)


def test_consistency_graph_shape():
    g = build_consistency_graph(ConceptClass.all_concepts(2))
    assert (len(g.left), len(g.right), len(g.edges)) == (4, 9, 16)
    g3 = build_consistency_graph(ConceptClass.all_concepts(3))
    for c in g3.left:
        assert g3.adjacent(c, "s:---")
        assert len(g3.neighbors_of_left(c)) == 8


@given(concept_classes(max_n=4), st.integers(0, 50))
@settings(max_examples=60)
def test_consistency_edges_match_brute_force(cc, seed):
    g = build_consistency_graph(cc, f"random:{seed}")
    assert set(g.edges) == consistency_edges(cc)
    assert min_order_saturating(g).order != math.inf


def test_concept_ordering():
    cc = ConceptClass(("a", "b"), ("11", "00", "10"))
    assert concept_ordering(cc) == ("00", "10", "11")
    assert concept_ordering(cc, ["10", "00", "11"]) == ("10", "00", "11")
    assert sorted(concept_ordering(cc, "random:4")) == ["00", "10", "11"]
    with pytest.raises(ValueError):
        concept_ordering(cc, ["10"])
    with pytest.raises(ValueError):
        concept_ordering(cc, "reverse")


def test_cost_examples():
    assert greedy_cost(ConceptClass(("a", "b"), ("01",))) == 0
    assert greedy_cost(ConceptClass.all_concepts(1)) == 1
    for n in range(2, 7):
        for order in ("lex", "random:1", "random:2"):
            q = greedy_cost(ConceptClass.all_concepts(n), order)
            assert math.ceil(GAMMA0 * n) <= q <= n


def test_subsample_check_examples():
    assert check_subsample_bound(ConceptClass(("a",), ("1",)))
    chk = subsample_check(ConceptClass.all_concepts(3))
    assert chk.ok and chk.q <= 3
    assert chk.matched_to_preferred == chk.proper_subsamples == 2 ** chk.q - 1


@given(concept_classes(max_n=5, max_size=24), st.integers(0, 100), st.one_of(st.none(), st.integers(0, 100)))
@settings(max_examples=60, deadline=None)
def test_upper_bound_and_remark(cc, seed, sample_seed):
    order = f"random:{seed}"
    q = greedy_cost(cc, order, sample_seed)
    assert q <= ceil_log2(len(cc.concepts))
    assert check_subsample_bound(cc, order, sample_seed)


def test_phi_and_sample_counts():
    assert phi(7, 0) == 1 and phi(4, 2) == 11
    assert samples_up_to(7, 0) == 1 and samples_up_to(2, 1) == 5
    for n in range(9):
        assert samples_up_to(n, n) == 3 ** n
        assert phi(n, n) == 2 ** n
    with pytest.raises(ValueError):
        phi(2, 3)
    with pytest.raises(ValueError):
        samples_up_to(2, -1)


def test_phi_estimate():
    for n in range(1, 31):
        for d in range(1, n + 1):
            assert math.log(phi(n, d)) <= d * (1 + math.log(n / d)) + 1e-9


def test_exact_lower_bound():
    assert exact_cost_lower_bound(5, 1) == 0
    assert exact_cost_lower_bound(4, 16) == 2
    with pytest.raises(ValueError):
        exact_cost_lower_bound(1, 4)
    for n in range(1, 7):
        assert exact_cost_lower_bound(n, 2 ** n) <= greedy_cost(ConceptClass.all_concepts(n))


def test_d_star_against_linear_scan():
    assert d_star(1) == 1
    for n in range(1, 400):
        linear = next(d for d in range(1, n + 1) if (2 * math.e * n / d) ** d >= 2 ** n) if n < 300 else None
        if linear is not None:
            assert d_star(n) == linear
        assert d_star(n) >= GAMMA0 * n
    with pytest.raises(ValueError):
        d_star(0)


def test_h_gamma():
    assert h_gamma(1) == pytest.approx(2 * math.e, abs=1e-12)
    assert 1 < h_gamma(0.001) < 1.02
    with pytest.raises(ValueError):
        h_gamma(0)
    with pytest.raises(ValueError):
        h_gamma(1.5)


def test_gamma0():
    g0 = solve_gamma0(1e-6)
    assert 0.214 < g0 < 0.215
    assert abs(h_gamma(g0) - 2) <= 10 * 1e-6
    with pytest.raises(ValueError):
        solve_gamma0(0)


def test_ceil_log2():
    assert [ceil_log2(k) for k in range(1, 10)] == [0, 1, 2, 2, 3, 3, 3, 3, 4]


def test_bound_report():
    rep = bound_report(ConceptClass.all_concepts(4))
    assert rep.upper_bound == 4 and rep.exact_lower_bound == 2
    assert rep.exact_lower_bound <= rep.greedy_cost <= rep.upper_bound
    assert rep.subsample_bound
    assert 0.214 < rep.gamma0 < 0.215
