"""Property suites driven by ``moyforge verify`` and by the test-suite.

Each suite draws its inputs from a seeded generator, checks one family of
invariants and returns a :class:`SuiteResult` holding a pass/fail table.
A failing suite also carries the smallest failing input it saw.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .generator import GenConfig, random_graph
from .graph import ColoredGraph, disjoint_union
from .knot import STANDARD_DIAGRAMS, braid_closure, link_invariant, mirror, parse_pd
from .library import circle, figure2_graph, theta
from .moduli_rep import (
    check_trace_lemma,
    eigenvalue_residual,
    random_decoration,
    roundtrip_residual,
    to_representation,
    verify_vertex_relations,
)
from .rewrite import Evaluator, IrreducibleGraph
from .rules import _splice, digon_rule, find_matches, loop_rule, moy3_rule, moy4_rule
from .states import count_colorings, naive_count

__all__ = ["SuiteResult", "SUITES", "run_suite", "DEFAULT_SIZES"]


@dataclass
class SuiteResult:
    name: str
    seed: int
    size: int
    rows: list[dict] = field(default_factory=list)
    irreducible: list[str] = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rows if not r["passed"])

    @property
    def passed(self) -> bool:
        return self.failures == 0 and not self.irreducible

    def add(self, check: str, passed: bool, **detail):
        self.rows.append({"check": check, "passed": bool(passed), **detail})

    def offer(self, g: ColoredGraph, N: int, **detail):
        """Keep the smallest failing graph as the reported counterexample."""
        size = (g.num_vertices(), g.num_edges())
        if self.counterexample is None or size < tuple(self.counterexample["size"]):
            self.counterexample = {"size": list(size), "N": N, "graph": g.to_json_obj(N), **detail}

    def to_json_obj(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "size": self.size,
            "checks": len(self.rows),
            "failures": self.failures,
            "irreducible": self.irreducible,
            "table": self.rows,
            "counterexample": self.counterexample,
        }


def _graphs(seed: int, count: int, max_vertices: int = 12):
    """Mixed stream of random pairings and planar ladders."""
    rng = random.Random(seed)
    plain = GenConfig(max_vertices=max_vertices)
    ladder = GenConfig(max_vertices=max_vertices, planar=True)
    for i in range(count):
        yield random_graph(ladder if i % 3 == 2 else plain, rng)


# ----------------------------------------------------------------------


def theorem_q1(seed: int = 0, size: int = 10, ns=(2, 3, 4), naive_edges: int = 8) -> SuiteResult:
    """``P_N(G)(1)`` equals the number of subset colorings.

    The counter is itself compared with brute force on graphs with at most
    ``naive_edges`` edges.
    """
    res = SuiteResult("theorem-q1", seed, size)
    for i, g in enumerate(_graphs(seed, size)):
        for N in ns:
            count = count_colorings(g, N)
            if g.num_edges() <= naive_edges:
                brute = naive_count(g, N)
                res.add(f"graph {i} N={N} counter", brute == count, count=count, naive=brute)
                if brute != count:
                    res.offer(g, N, kind="counter", count=count, naive=brute)
            try:
                value = Evaluator(N).evaluate(g)
            except IrreducibleGraph as exc:
                res.irreducible.append(exc.canonical.hex())
                continue
            ok = value.eval_at_one() == count
            res.add(f"graph {i} N={N}", ok, eval_at_one=value.eval_at_one(), count=count)
            if not ok:
                res.offer(g, N, kind="theorem", eval_at_one=value.eval_at_one(), count=count)
    return res


# Factors at q = 1 of each relation, by family and term order.
RECURSION_FACTORS = {
    "MOY0": lambda N: (N,),
    "MOY1": lambda N: (N - 1,),
    "MOY2": lambda N: (2,),
    "MOY3": lambda N: (N - 2, 1),
    "MOY4": lambda N: (1, 1),
}


def _one_colored_rules():
    return {"MOY1": loop_rule(1, 1), "MOY2": digon_rule(1, 1), "MOY3": moy3_rule(), "MOY4": moy4_rule()}


def recursion_check(g: ColoredGraph, N: int, family: str) -> tuple[int, int] | None:
    """``(count(g), predicted)`` for the first match of ``family``, or None.

    The prediction combines the counts of the replacement graphs with the
    factors of :data:`RECURSION_FACTORS`; ``MOY0`` compares ``g`` plus a
    circle with ``g`` itself.
    """
    if family == "MOY0":
        return count_colorings(disjoint_union(g, circle()), N), N * count_colorings(g, N)
    rule = _one_colored_rules()[family]
    matches = find_matches(g, rule, first_only=True)
    if not matches:
        return None
    factors = RECURSION_FACTORS[family](N)
    predicted = sum(
        f * count_colorings(_splice(g, rule, matches[0], repl), N)
        for f, (_, repl) in zip(factors, rule.terms)
    )
    return count_colorings(g, N), predicted


def moy_recursions(seed: int = 0, size: int = 100, ns=(2, 3, 4, 5)) -> SuiteResult:
    """Each relation at ``q = 1`` checked on the coloring counter."""
    res = SuiteResult("moy-recursions", seed, size)
    for family in RECURSION_FACTORS:
        found = bad = 0
        for i, g in enumerate(_graphs(seed, 40 * size)):
            if found >= size:
                break
            N = ns[i % len(ns)]
            got = recursion_check(g, N, family)
            if got is None:
                continue
            found += 1
            count, predicted = got
            if count != predicted:
                bad += 1
                res.add(f"{family} graph {i} N={N}", False, count=count, predicted=predicted)
                res.offer(g, N, family=family, count=count, predicted=predicted)
        res.add(f"{family} instances", found >= size, found=found, wanted=size)
        res.add(f"{family} recursion", bad == 0, instances=found, mismatches=bad)
    return res


REP_GRAPHS = {"circle": circle, "theta": theta, "figure2": figure2_graph}


def rep_relations(seed: int = 0, size: int = 100, ns=(3, 4, 5), tol: float = 1e-9,
                  graphs=tuple(REP_GRAPHS)) -> SuiteResult:
    """Subspace decorations against their meridian representations."""
    res = SuiteResult("rep-relations", seed, size)
    for i in range(size):
        name = graphs[i % len(graphs)]
        N = ns[(i // len(graphs)) % len(ns)]
        g = REP_GRAPHS[name]()
        d = random_decoration(g, N, rng_seed=seed * 100_003 + i)
        if d is None:
            res.add(f"{name} N={N} #{i} sample", False, reason="no admissible decoration found")
            continue
        r = to_representation(d, g)
        worst = {
            "vertex": verify_vertex_relations(r, g),
            "eigenvalue": eigenvalue_residual(r),
            "roundtrip": roundtrip_residual(r, d),
            "unitarity": r.unitarity_residual(),
        }
        ok = all(v <= tol for v in worst.values())
        res.add(f"{name} N={N} #{i}", ok, **worst)
        if not ok:
            res.offer(g, N, residuals=worst)
    return res


def trace_lemma(seed: int = 0, size: int = 1000, ns=(3, 4, 5, 6), tol: float = 1e-8) -> SuiteResult:
    res = SuiteResult("trace-lemma", seed, size)
    for N in ns:
        st = check_trace_lemma(N, size, rng_seed=seed * 7919 + N, tol=tol)
        res.add(
            f"N={N}", st.passed,
            trials=st.trials, orthogonal=st.orthogonal_trials, failures=st.failures,
            max_orthogonal_error=st.max_orthogonal_error,
            min_nonorthogonal_gap=st.min_nonorthogonal_gap,
        )
        if not st.passed and res.counterexample is None:
            res.counterexample = {"N": N, "trial": st.counterexamples[:1]}
    return res


def _r2_insert(word: list[int], rng: random.Random, strands: int) -> list[int]:
    i = rng.randint(1, strands - 1) * rng.choice((1, -1))
    pos = rng.randint(0, len(word))
    return word[:pos] + [i, -i] + word[pos:]


def _r3_swap(word: list[int]) -> list[int] | None:
    for p in range(len(word) - 2):
        a, b, c = word[p:p + 3]
        if a == c and a > 0 and b > 0 and abs(a - b) == 1:
            return word[:p] + [b, a, b] + word[p + 3:]
    return None


def reidemeister(seed: int = 0, size: int = 3, ns=(2, 3, 4)) -> SuiteResult:
    """R2/R3 invariance, R1 up to a monomial, and mirror symmetry."""
    res = SuiteResult("reidemeister", seed, size)
    rng = random.Random(seed)
    pairs = [
        ("R2 on one crossing", (2, [1]), (2, [1, 1, -1])),
        ("R2 between strands", (3, [1, 2]), (3, [1, -2, 2, 2])),
        ("R3 positive", (3, [1, 2, 1]), (3, [2, 1, 2])),
        ("R3 inside a knot", (3, [1, 2, 1, -2]), (3, [2, 1, 2, -2])),
    ]
    for k in range(size):
        word = [rng.choice((1, 2)) * rng.choice((1, -1)) for _ in range(rng.randint(2, 4))]
        pairs.append((f"R2 random #{k}", (3, word), (3, _r2_insert(word, rng, 3))))
        base = word + [1, 2, 1]
        pairs.append((f"R3 random #{k}", (3, base), (3, _r3_swap(base))))
    for N in ns:
        ev = Evaluator(N)
        for label, (s1, w1), (s2, w2) in pairs:
            v1 = link_invariant(braid_closure(s1, w1), N, evaluator=ev)
            v2 = link_invariant(braid_closure(s2, w2), N, evaluator=ev)
            res.add(f"{label} N={N}", v1 == v2, words=[w1, w2])
        unknot = link_invariant(parse_pd("O[1]"), N, evaluator=ev)
        for name in ("kink+", "kink-"):
            v = link_invariant(parse_pd(STANDARD_DIAGRAMS[name]), N, evaluator=ev)
            q, r = v.divmod(unknot)
            res.add(f"R1 {name} N={N}", r.is_zero() and q.is_monomial(), ratio=q.to_json_obj())
        for name in ("trefoil", "figure8"):
            d = parse_pd(STANDARD_DIAGRAMS[name])
            v, m = link_invariant(d, N, evaluator=ev), link_invariant(mirror(d), N, evaluator=ev)
            res.add(f"mirror {name} N={N}", m == v.bar())
    return res


SUITES = {
    "moy-recursions": moy_recursions,
    "theorem-q1": theorem_q1,
    "rep-relations": rep_relations,
    "trace-lemma": trace_lemma,
    "reidemeister": reidemeister,
}

DEFAULT_SIZES = {
    "moy-recursions": 100,
    "theorem-q1": 10,
    "rep-relations": 100,
    "trace-lemma": 1000,
    "reidemeister": 3,
}


def run_suite(name: str, seed: int = 0, size: int | None = None, ns=None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    kw = {} if ns is None else {"ns": tuple(ns)}
    return SUITES[name](seed=seed, size=DEFAULT_SIZES[name] if size is None else size, **kw)
