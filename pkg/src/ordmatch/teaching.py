"""Consistency graphs of concept classes, greedy teaching cost and its bounds.

Concepts are bitstrings over an ordered domain (character i is the label of
domain point i). A sample is written as a pattern over ``{'-', '0', '1'}``:
``'-'`` marks an absent point, so ``"-1-0"`` is {(x1, 1), (x3, 0)}. In the
consistency graph concepts become left vertices ``"c:<bits>"`` and samples
right vertices ``"s:<pattern>"``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .graph import BudgetExceeded, OrderedBipartiteGraph, matching_order
from .greedy import run_p_greedy

MAX_DOMAIN = 16
LN2 = math.log(2.0)


@dataclass(frozen=True)
class ConceptClass:
    domain: Tuple[str, ...]
    concepts: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "concepts", tuple(self.concepts))
        n = len(self.domain)
        if len(set(self.domain)) != n:
            raise ValueError("duplicate domain point")
        if not self.concepts:
            raise ValueError("a concept class needs at least one concept")
        for c in self.concepts:
            if len(c) != n or set(c) - {"0", "1"}:
                raise ValueError(f"concept {c!r} is not a 0/1 labelling of {n} points")
        if len(set(self.concepts)) != len(self.concepts):
            raise ValueError("concepts must be distinct")

    @classmethod
    def all_concepts(cls, n: int) -> "ConceptClass":
        """C_all over the domain x1..xn, concepts in lexicographic order."""
        return cls(tuple(f"x{i + 1}" for i in range(n)),
                   tuple("".join(bits) for bits in itertools.product("01", repeat=n)))

    @classmethod
    def from_json(cls, raw: Mapping[str, Any]) -> "ConceptClass":
        if raw.get("all"):
            return cls.all_concepts(int(raw["domain_size"]))
        return cls(tuple(raw["domain"]), tuple(raw["concepts"]))

    @property
    def n(self) -> int:
        return len(self.domain)


@dataclass(frozen=True, order=True)
class Sample:
    """A set of labelled examples, stored as sorted (point index, label) pairs."""

    examples: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        ex = tuple(sorted(self.examples))
        if len({p for p, _ in ex}) != len(ex):
            raise ValueError("a sample may not label a point twice")
        object.__setattr__(self, "examples", ex)

    def __len__(self) -> int:
        return len(self.examples)

    def pattern(self, n: int) -> str:
        cells = ["-"] * n
        for p, b in self.examples:
            cells[p] = str(b)
        return "".join(cells)

    @classmethod
    def from_pattern(cls, pattern: str) -> "Sample":
        return cls(tuple((p, int(ch)) for p, ch in enumerate(pattern) if ch != "-"))

    def consistent_with(self, concept: str) -> bool:
        return all(concept[p] == str(b) for p, b in self.examples)


def _subsample_patterns(concept: str) -> List[str]:
    # the 2^n subsets of the concept's full sample
    return ["".join(ch if keep else "-" for ch, keep in zip(concept, mask))
            for mask in itertools.product((False, True), repeat=len(concept))]


def enumerate_realizable_samples(cc: ConceptClass, seed: Optional[int] = None) -> List[Sample]:
    """All samples realizable by ``cc``, smaller samples first.

    Ties within one size are broken lexicographically on the example pairs, or
    by a seeded shuffle when ``seed`` is given (another linear extension of the
    cardinality order).
    """
    if cc.n > MAX_DOMAIN:
        raise BudgetExceeded("realizable samples (domain size)", MAX_DOMAIN, cc.n)
    patterns = set()
    for c in cc.concepts:
        patterns.update(_subsample_patterns(c))
    samples = sorted(Sample.from_pattern(p) for p in patterns)
    if seed is None:
        samples.sort(key=lambda s: (len(s), s.examples))
    else:
        rng = random.Random(seed)
        keys = {s: rng.random() for s in samples}
        samples.sort(key=lambda s: (len(s), keys[s]))
    return samples


ConceptOrder = Union[None, str, Sequence[str]]


def concept_ordering(cc: ConceptClass, how: ConceptOrder = None) -> Tuple[str, ...]:
    """Resolve ``None``/``"lex"``, ``"random:SEED"`` or an explicit sequence to a permutation."""
    if how is None or how == "lex":
        return tuple(sorted(cc.concepts))
    if isinstance(how, str):
        if not how.startswith("random:"):
            raise ValueError(f"unknown concept order {how!r}")
        order = sorted(cc.concepts)
        random.Random(int(how.split(":", 1)[1])).shuffle(order)
        return tuple(order)
    order = tuple(how)
    if len(order) != len(cc.concepts) or set(order) != set(cc.concepts):
        raise ValueError("concept order is not a permutation of the concepts")
    return order


def concept_vertex(bits: str) -> str:
    return "c:" + bits


def sample_vertex(pattern: str) -> str:
    return "s:" + pattern


def build_consistency_graph(
    cc: ConceptClass, concept_order: ConceptOrder = None, sample_seed: Optional[int] = None
) -> OrderedBipartiteGraph:
    left = tuple(concept_vertex(c) for c in concept_ordering(cc, concept_order))
    right = tuple(sample_vertex(s.pattern(cc.n)) for s in enumerate_realizable_samples(cc, sample_seed))
    edges = frozenset((concept_vertex(c), sample_vertex(p))
                      for c in cc.concepts for p in _subsample_patterns(c))
    return OrderedBipartiteGraph(left, right, edges)


@dataclass(frozen=True)
class CostResult:
    q: int
    concept: str  # the concept holding the largest matched sample
    sample: str
    matching: Dict[str, str]  # concept -> sample pattern
    graph: OrderedBipartiteGraph


def greedy_cost_details(
    cc: ConceptClass, concept_order: ConceptOrder = None, sample_seed: Optional[int] = None
) -> CostResult:
    g = build_consistency_graph(cc, concept_order, sample_seed)
    m = run_p_greedy(g)
    k = matching_order(g, m)
    if k == math.inf:
        raise AssertionError("greedy matching of a consistency graph must saturate the concepts")
    mate = {c[2:]: s[2:] for c, s in m}
    if k == 0:
        return CostResult(0, "", "", mate, g)
    sample = g.right[k - 1][2:]
    concept = next(c for c, s in mate.items() if s == sample)
    return CostResult(len(sample) - sample.count("-"), concept, sample, mate, g)


def greedy_cost(cc: ConceptClass, concept_order: ConceptOrder = None, sample_seed: Optional[int] = None) -> int:
    """Size of the largest sample the greedy matching assigns to a concept."""
    return greedy_cost_details(cc, concept_order, sample_seed).q


@dataclass(frozen=True)
class SubsampleCheck:
    q: int
    class_size: int
    inequality_holds: bool  # |C| >= 2^(q-1) + 1
    proper_subsamples: int  # 2^q - 1
    matched_to_preferred: int  # how many of them sit with a more preferred concept

    @property
    def ok(self) -> bool:
        return self.inequality_holds and self.matched_to_preferred == self.proper_subsamples


def subsample_check(
    cc: ConceptClass, concept_order: ConceptOrder = None, sample_seed: Optional[int] = None
) -> SubsampleCheck:
    """Counting argument behind the log|C| upper bound, checked on the actual matching.

    For q = 0 there is no positive-size sample to inspect and the check passes
    vacuously.
    """
    res = greedy_cost_details(cc, concept_order, sample_seed)
    size = len(cc.concepts)
    if res.q == 0:
        return SubsampleCheck(0, size, True, 0, 0)
    g = res.graph
    owner = {s: c for c, s in res.matching.items()}
    rank_c = g.left_rank[concept_vertex(res.concept)]
    subs = [p for p in _subsample_patterns_of(res.sample) if p != res.sample]
    preferred = sum(1 for p in subs if p in owner and g.left_rank[concept_vertex(owner[p])] < rank_c)
    return SubsampleCheck(res.q, size, size >= 2 ** (res.q - 1) + 1, len(subs), preferred)


def _subsample_patterns_of(pattern: str) -> List[str]:
    present = [p for p, ch in enumerate(pattern) if ch != "-"]
    out = []
    for mask in itertools.product((False, True), repeat=len(present)):
        cells = ["-"] * len(pattern)
        for keep, p in zip(mask, present):
            if keep:
                cells[p] = pattern[p]
        out.append("".join(cells))
    return out


def check_subsample_bound(cc: ConceptClass, concept_order: ConceptOrder = None, sample_seed: Optional[int] = None) -> bool:
    return subsample_check(cc, concept_order, sample_seed).ok


# -- counting and the lower-bound constant -------------------------------------


def ceil_log2(k: int) -> int:
    """Exact ceiling of log2(k) for k >= 1."""
    if k < 1:
        raise ValueError("ceil_log2 needs k >= 1")
    return (k - 1).bit_length()


def _check_nd(n: int, d: int) -> None:
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got n={n}, d={d}")


def phi(n: int, d: int) -> int:
    """sum_{i<=d} C(n, i), exactly."""
    _check_nd(n, d)
    return sum(math.comb(n, i) for i in range(d + 1))


def samples_up_to(n: int, d: int) -> int:
    """Number of labelled samples of size at most d over n points."""
    _check_nd(n, d)
    return sum(math.comb(n, i) * 2 ** i for i in range(d + 1))


def log_sample_estimate(n: int, d: int) -> float:
    """ln (2en/d)^d."""
    return d * (math.log(2 * math.e * n) - math.log(d))


def d_star(n: int) -> int:
    """Smallest d in 1..n with (2en/d)^d >= 2^n, compared in log space.

    The left side grows with d on 1..n, so a bisection finds the threshold.
    """
    if n < 1:
        raise ValueError("d_star needs n >= 1")
    target = n * LN2
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if log_sample_estimate(n, mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def exact_cost_lower_bound(n: int, class_size: int) -> int:
    """Smallest d such that at least ``class_size`` samples have size <= d."""
    if class_size < 1:
        raise ValueError("class_size must be positive")
    if class_size > 3 ** n:
        raise ValueError(f"{class_size} concepts cannot be taught with the {3 ** n} samples over {n} points")
    d, total = 0, 1
    while total < class_size:
        d += 1
        total += math.comb(n, d) * 2 ** d
    return d


def h_gamma(gamma: float) -> float:
    """(2e/gamma)^gamma, evaluated as exp(gamma * ln(2e/gamma))."""
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    return math.exp(gamma * math.log(2 * math.e / gamma))


def solve_gamma0(tolerance: float = 1e-12) -> float:
    """Root of h(gamma) = 2 on (0, 1] by bisection."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = 1e-300, 1.0
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if h_gamma(mid) < 2:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class BoundReport:
    n: int
    class_size: int
    log_c: float
    greedy_cost: int
    upper_bound: int
    exact_lower_bound: int
    d_star: Optional[int]
    gamma0: float
    subsample_bound: bool

    def to_json(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def bound_report(
    cc: ConceptClass, concept_order: ConceptOrder = None, sample_seed: Optional[int] = None
) -> BoundReport:
    size = len(cc.concepts)
    check = subsample_check(cc, concept_order, sample_seed)
    return BoundReport(
        n=cc.n,
        class_size=size,
        log_c=math.log2(size),
        greedy_cost=check.q,
        upper_bound=ceil_log2(size),
        exact_lower_bound=exact_cost_lower_bound(cc.n, size),
        d_star=d_star(cc.n) if cc.n >= 1 else None,
        gamma0=solve_gamma0(),
        subsample_bound=check.ok,
    )
