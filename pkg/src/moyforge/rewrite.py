"""Evaluate P_N of a closed colored graph by rewriting with the MOY relations.

Strategy, applied to each connected component:

1. a component that is a single loop is removed by the circle axiom;
2. any edge colored above ``N`` makes the value 0;
3. the first applicable reducing rule in priority order
   MOY1 > MOY2 > MOY3 > MOY4 is applied to the first match found;
4. failing that, a breadth-first search over associativity moves (TRICK,
   at most ``TRICK_DEPTH`` of them) looks for a graph admitting a
   single-term reducing move (MOY1 or MOY2);
5. otherwise :class:`IrreducibleGraph` is raised.

While a 3-colored edge is present, step 4 runs before the square moves
MOY3/MOY4, so 3-colored edges are removed before new ones are created.

Every step strictly decreases ``(vertices, edges)`` in each output term
(a TRICK step is only counted together with the move it enables).  Results
are memoized on ``(canonical form, N)``.
"""

from __future__ import annotations

import os
import random
import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .graph import ColoredGraph, GraphExpr, split_components
from .laurent import ONE, ZERO, LaurentPoly
from .rules import (
    Embedding,
    MoveRule,
    apply_move,
    circle_rule,
    circle_value,
    find_matches,
    rules_for,
)

__all__ = [
    "IrreducibleGraph",
    "TerminationError",
    "Evaluator",
    "Step",
    "evaluate",
    "default_memo_cap",
]


class IrreducibleGraph(Exception):
    """No rule applies; ``canonical`` identifies the stuck graph."""

    def __init__(self, graph: ColoredGraph, N: int):
        self.graph = graph
        self.N = N
        self.canonical = graph.canonical()
        super().__init__(
            f"no MOY move applies at N={N} to a graph with {graph.num_vertices()} vertices"
        )


class TerminationError(AssertionError):
    pass


TRICK_DEPTH = 3

_worker = threading.local()


def default_memo_cap() -> int | None:
    raw = os.environ.get("MOYFORGE_MEMO_CAP")
    if not raw:
        return None
    cap = int(raw)
    return cap if cap > 0 else None


@dataclass(frozen=True)
class Step:
    rule: str
    canonical: bytes
    vertices: int
    terms: int


@dataclass
class Stats:
    moves: dict[str, int] = field(default_factory=dict)
    memo_hits: int = 0
    memo_misses: int = 0

    def bump(self, label: str):
        self.moves[label] = self.moves.get(label, 0) + 1


def _measure(g: ColoredGraph) -> tuple[int, int]:
    return g.num_vertices(), g.num_edges()


class Evaluator:
    """Reusable evaluator with its own memo table.

    ``order="priority"`` follows the fixed strategy; ``order="random"``
    shuffles the reducing rules and picks a random match at every step
    (for confluence experiments).  ``jobs > 1`` evaluates the terms of a
    branching move concurrently.
    """

    def __init__(
        self,
        N: int,
        order: str = "priority",
        seed: int | None = None,
        memo_cap: int | None = -1,
        trace: bool = False,
        jobs: int = 1,
    ):
        if N < 1:
            raise ValueError("N must be positive")
        if order not in ("priority", "random"):
            raise ValueError(f"unknown order {order!r}")
        self.N = N
        self.order = order
        self.rng = random.Random(seed)
        self.memo_cap = default_memo_cap() if memo_cap == -1 else memo_cap
        self.memo: OrderedDict[bytes, LaurentPoly] = OrderedDict()
        self.lock = threading.Lock()
        self.trace: list[Step] | None = [] if trace else None
        self.stats = Stats()
        self.jobs = max(1, jobs)
        self._pool = ThreadPoolExecutor(self.jobs) if self.jobs > 1 else None

    # -- public --------------------------------------------------------
    def evaluate(self, g: ColoredGraph) -> LaurentPoly:
        if not g.is_closed:
            raise ValueError("evaluate needs a closed graph")
        return self._eval(g)

    def map(self, fn, items):
        """``[fn(x) for x in items]``, spread over the worker pool.

        Calls made from inside a worker run sequentially, so nested use
        cannot exhaust the pool and deadlock.
        """
        items = list(items)
        if self._pool is None or len(items) < 2 or getattr(_worker, "active", False):
            return [fn(x) for x in items]

        def run(x):
            _worker.active = True
            try:
                return fn(x)
            finally:
                _worker.active = False

        return list(self._pool.map(run, items))

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()

    # -- memo ----------------------------------------------------------
    def _memo_get(self, key: bytes):
        with self.lock:
            hit = self.memo.get(key)
            if hit is not None:
                self.memo.move_to_end(key)
                self.stats.memo_hits += 1
            else:
                self.stats.memo_misses += 1
            return hit

    def _memo_put(self, key: bytes, value: LaurentPoly):
        with self.lock:
            self.memo[key] = value
            if self.memo_cap is not None:
                while len(self.memo) > self.memo_cap:
                    self.memo.popitem(last=False)

    def _record(self, label: str, g: ColoredGraph, terms: int):
        with self.lock:
            self.stats.bump(label)
            if self.trace is not None:
                self.trace.append(Step(label, g.canonical(), g.num_vertices(), terms))

    # -- recursion -----------------------------------------------------
    def _eval(self, g: ColoredGraph) -> LaurentPoly:
        if g.max_color() > self.N:
            self._record("VANISH", g, 0)
            return ZERO
        total = ONE
        for comp in split_components(g):
            if not comp.vertices:
                (k,) = comp.circles
                self._record(circle_rule(k).label, comp, 1)
                total = total * circle_value(k, self.N)
            else:
                total = total * self._eval_connected(comp)
            if total.is_zero():
                break
        return total

    def _eval_connected(self, g: ColoredGraph) -> LaurentPoly:
        key = g.canonical()
        hit = self._memo_get(key)
        if hit is not None:
            return hit
        rule, emb, g2 = self._choose(g)
        if g2 is not None:
            self._record("TRICK", g, 1)
        src = g if g2 is None else g2
        expr = apply_move(src, rule, emb, self.N)
        self._record(rule.label, src, len(expr))
        before = _measure(g)
        for _, h in expr:
            if _measure(h) >= before:
                raise TerminationError(f"{rule.label} did not reduce {before} -> {_measure(h)}")
        value = self._sum(expr)
        self._memo_put(key, value)
        return value

    def _sum(self, expr: GraphExpr) -> LaurentPoly:
        terms = list(expr)
        values = self.map(lambda t: self._eval(t[1]), terms)
        total = ZERO
        for (c, _), v in zip(terms, values):
            total = total + c * v
        return total

    def _tier(self, g: ColoredGraph, families: tuple[str, ...]) -> list[MoveRule]:
        fam = rules_for(max(g.max_color(), 1))
        rules = [r for name in families for r in fam[name]]
        if self.order == "random":
            self.rng.shuffle(rules)
        return rules

    def _first(self, g: ColoredGraph, rules: list[MoveRule]):
        for rule in rules:
            if self.order == "random":
                matches = find_matches(g, rule)
                if matches:
                    return rule, self.rng.choice(matches)
            else:
                matches = find_matches(g, rule, first_only=True)
                if matches:
                    return rule, matches[0]
        return None, None

    def _choose(self, g: ColoredGraph) -> tuple[MoveRule, Embedding, ColoredGraph | None]:
        """Pick the next move; the third item is the TRICK-rewritten graph, if any.

        A graph carrying a 3-colored edge is cleaned up by single-term moves
        (possibly after one TRICK) before any square move is tried.
        """
        single = self._tier(g, ("MOY1", "MOY2"))
        square = self._tier(g, ("MOY3", "MOY4"))
        if self.order == "random" and g.max_color() <= 2:
            merged = single + square
            self.rng.shuffle(merged)
            single, square = merged, []
        rule, emb = self._first(g, single)
        if rule is not None:
            return rule, emb, None
        if g.max_color() <= 2:
            rule, emb = self._first(g, square)
            if rule is not None:
                return rule, emb, None
        found = self._trick(g)
        if found is not None:
            return found
        rule, emb = self._first(g, square)
        if rule is not None:
            return rule, emb, None
        raise IrreducibleGraph(g, self.N)

    def _trick(self, g: ColoredGraph):
        """Breadth-first search over TRICK rewrites for a single-term move.

        The search is bounded by ``TRICK_DEPTH`` and deduplicated on
        canonical forms; the returned graph is the rewritten one.
        """
        frontier = [g]
        seen = {g.canonical()}
        for _ in range(TRICK_DEPTH):
            nxt = []
            for h in frontier:
                for trick in self._tier(h, ("TRICK",)):
                    for emb in find_matches(h, trick):
                        (_, h2), = apply_move(h, trick, emb, self.N)
                        key = h2.canonical()
                        if key in seen:
                            continue
                        seen.add(key)
                        rule, found = self._first(h2, self._tier(h2, ("MOY1", "MOY2")))
                        if rule is not None:
                            return rule, found, h2
                        nxt.append(h2)
            frontier = nxt
            if not frontier:
                break
        return None


def evaluate(g: ColoredGraph, N: int, **kw) -> LaurentPoly:
    """P_N(g) for a closed graph (see :class:`Evaluator` for options)."""
    ev = Evaluator(N, **kw)
    try:
        return ev.evaluate(g)
    finally:
        ev.close()
