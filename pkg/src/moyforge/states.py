"""Counting subset colorings of a closed colored graph.

A subset coloring assigns to each ``k``-colored edge a ``k``-element subset
of ``{1..N}`` such that at every vertex the two parts are disjoint and their
union is the sum edge.  These are the coordinate-subspace decorations, i.e.
the torus-fixed points of the decoration space, so their number is its
Euler characteristic.

The counter runs a frontier dynamic program over a greedy vertex order.
The compiled kernel from ``_kernels`` is used when it was built and the
packed state fits in 64 bits; otherwise the pure-Python ``_dp`` runs.
Setting ``MOYFORGE_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb, prod

from . import _dp
from .graph import MERGE, ColoredGraph

try:  # pragma: no cover - depends on the build
    if os.environ.get("MOYFORGE_PURE"):
        raise ImportError
    from . import _kernels
except ImportError:  # pragma: no cover
    _kernels = None

__all__ = [
    "SubsetColoring",
    "count_colorings",
    "enumerate_colorings",
    "naive_count",
    "build_plan",
    "kernel_backend",
]


def kernel_backend() -> str:
    return "compiled" if _kernels is not None else "python"


@dataclass(frozen=True)
class SubsetColoring:
    """Edge id -> subset; circles are keyed ``"circle:<index>"``."""

    assignment: tuple[tuple[str, frozenset[int]], ...]

    def as_dict(self) -> dict[str, frozenset[int]]:
        return dict(self.assignment)

    def to_json_obj(self) -> dict[str, list[int]]:
        return {k: sorted(v) for k, v in self.assignment}


def _roles(g: ColoredGraph, v: str) -> tuple[str, str, str]:
    ins, outs = g.incidence()[v]
    if g.vertices[v] == MERGE:
        return outs[0], ins[0], ins[1]
    return ins[0], outs[0], outs[1]


def _vertex_order(g: ColoredGraph) -> list[str]:
    inc = g.incidence()
    nbrs = {
        v: [eid for eid in inc[v][0] + inc[v][1]] for v in g.vertices
    }
    order: list[str] = []
    done: set[str] = set()
    frontier: set[str] = set()
    remaining = set(g.vertices)
    while remaining:
        best = None
        best_key = None
        for v in sorted(remaining):
            touching = sum(1 for e in nbrs[v] if e in frontier)
            # prefer vertices closing many frontier edges and opening few
            key = (-touching, len(nbrs[v]) - 2 * touching, v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        order.append(best)
        remaining.discard(best)
        done.add(best)
        for e in nbrs[best]:
            edge = g.edges[e]
            if edge.tail in done and edge.head in done:
                frontier.discard(e)
            else:
                frontier.add(e)
    return order


def build_plan(g: ColoredGraph) -> tuple[list[tuple], int]:
    """Return ``(plan, max frontier width)`` for :func:`_dp.count_plan`."""
    order = _vertex_order(g)
    done: set[str] = set()
    frontier: list[str] = []
    plan = []
    width = 0
    for v in order:
        t, a, b = _roles(g, v)
        pos = {e: i for i, e in enumerate(frontier)}
        done.add(v)
        role_code = {t: -1, a: -2, b: -3}
        new_frontier = [e for e in frontier if e not in role_code]
        for e in (t, a, b):
            edge = g.edges[e]
            other = edge.head if edge.tail == v else edge.tail
            if e not in pos and other not in done:
                new_frontier.append(e)
        out = tuple(pos[e] if e in pos else role_code[e] for e in new_frontier)
        plan.append((
            pos.get(t, -1), pos.get(a, -1), pos.get(b, -1),
            g.edges[t].color, g.edges[a].color, g.edges[b].color,
            out,
        ))
        frontier = new_frontier
        width = max(width, len(frontier))
    return plan, width


def count_colorings(g: ColoredGraph, N: int) -> int:
    """Number of subset colorings of the closed graph ``g``."""
    if not g.is_closed:
        raise ValueError("count_colorings needs a closed graph")
    circle_factor = prod(comb(N, k) for k in g.circles)
    if circle_factor == 0 or not g.vertices:
        return circle_factor
    if g.max_color() > N:
        return 0
    plan, width = build_plan(g)
    if _kernels is not None and N <= 9 and N * width <= 64:
        body = _kernels.count_plan(N, plan)
    else:
        body = _dp.count_plan(N, plan)
    return circle_factor * body


def enumerate_colorings(g: ColoredGraph, N: int, limit: int | None = None) -> list[SubsetColoring]:
    """Explicit subset colorings by backtracking, at most ``limit`` of them."""
    out: list[SubsetColoring] = []
    circle_choices = [
        [frozenset(c) for c in itertools.combinations(range(1, N + 1), k)] for k in g.circles
    ]
    body: list[dict[str, int]] = []
    if g.vertices:
        _backtrack(g, N, body, limit if limit is None else limit)
    else:
        body = [{}]
    for masks in body:
        for circ in itertools.product(*circle_choices):
            if limit is not None and len(out) >= limit:
                return out
            items = [(eid, _mask_to_set(m)) for eid, m in sorted(masks.items())]
            items += [(f"circle:{i}", s) for i, s in enumerate(circ)]
            out.append(SubsetColoring(tuple(items)))
    return out


def _mask_to_set(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def _backtrack(g: ColoredGraph, N: int, sink: list[dict[str, int]], limit):
    order = _vertex_order(g)
    roles = [_roles(g, v) for v in order]
    full = (1 << N) - 1
    colors = {e: x.color for e, x in g.edges.items()}
    assign: dict[str, int] = {}

    def rec(i: int) -> bool:
        if limit is not None and len(sink) >= limit:
            return True
        if i == len(order):
            sink.append(dict(assign))
            return False
        t, a, b = roles[i]
        known = {e: assign.get(e, -1) for e in (t, a, b)}
        for tm, am, bm in _dp._complete(
            full, known[t], known[a], known[b], colors[t], colors[a], colors[b]
        ):
            if tm.bit_count() != colors[t] or am.bit_count() != colors[a] or bm.bit_count() != colors[b]:
                continue
            fresh = [e for e in (t, a, b) if e not in assign]
            for e, m in ((t, tm), (a, am), (b, bm)):
                assign[e] = m
            if rec(i + 1):
                return True
            for e in fresh:
                del assign[e]
        return False

    rec(0)


def naive_count(g: ColoredGraph, N: int) -> int:
    """Brute force over every edge assignment; exponential, for testing."""
    eids = sorted(g.edges)
    choices = [
        [sum(1 << (i - 1) for i in c) for c in itertools.combinations(range(1, N + 1), g.edges[e].color)]
        for e in eids
    ]
    idx = {e: i for i, e in enumerate(eids)}
    roles = [tuple(idx[x] for x in _roles(g, v)) for v in g.vertices]
    total = 0
    for masks in itertools.product(*choices):
        if all(masks[a] & masks[b] == 0 and masks[a] | masks[b] == masks[t] for t, a, b in roles):
            total += 1
    return total * prod(comb(N, k) for k in g.circles)
