"""Oriented link diagrams in PD notation and their quantum sl(N) polynomial.

PD text is a ``;``-separated list of tokens:

* ``X[a,b,c,d]``  positive crossing,
* ``Y[a,b,c,d]``  negative crossing,
* ``O[k]``        ``k`` extra crossingless unknotted components.

Arc labels are positive integers listed counterclockwise starting from the
incoming under-strand, so the under-strand runs ``a -> c``.  The over-strand
runs ``d -> b`` at a positive crossing and ``b -> d`` at a negative one.

Each crossing is replaced by the oriented smoothing or by the wide-edge
graph (two 1-colored strands merging into a 2-colored edge and splitting
again); the polynomial is the weighted sum of the MOY evaluations.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable

from .graph import MERGE, SPLIT, ColoredGraph, Edge, GraphExpr
from .laurent import ONE, ZERO, LaurentPoly, quantum_integer
from .rewrite import Evaluator, IrreducibleGraph

__all__ = [
    "Crossing",
    "PDDiagram",
    "PDError",
    "parse_pd",
    "mirror",
    "crossing_coefficients",
    "resolve",
    "state_graph",
    "link_invariant",
    "normalized",
    "CONVENTIONS",
    "braid_closure",
    "STANDARD_DIAGRAMS",
]

CONVENTIONS = ("A", "B")


class PDError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    sign: int
    arcs: tuple[int, int, int, int]

    @property
    def incoming(self) -> tuple[int, int]:
        a, b, c, d = self.arcs
        return (a, d) if self.sign > 0 else (a, b)

    @property
    def outgoing(self) -> tuple[int, int]:
        a, b, c, d = self.arcs
        return (c, b) if self.sign > 0 else (c, d)

    def smoothing(self) -> dict[int, int]:
        """Oriented smoothing: incoming arc -> the outgoing arc it joins."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return {a: b, d: c}
        return {a: d, b: c}

    def token(self) -> str:
        return ("X" if self.sign > 0 else "Y") + "[" + ",".join(map(str, self.arcs)) + "]"


@dataclass(frozen=True)
class PDDiagram:
    crossings: tuple[Crossing, ...]
    free_circles: int = 0

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    @property
    def arcs(self) -> set[int]:
        return {a for c in self.crossings for a in c.arcs}

    @property
    def components(self) -> int:
        succ = {}
        for c in self.crossings:
            a, b, cc, d = c.arcs
            succ[a] = cc
            over_in, over_out = (d, b) if c.sign > 0 else (b, d)
            succ[over_in] = over_out
        seen: set[int] = set()
        count = 0
        for start in succ:
            if start in seen:
                continue
            count += 1
            x = start
            while x not in seen:
                seen.add(x)
                x = succ[x]
        return count + self.free_circles

    def to_text(self) -> str:
        tokens = [c.token() for c in self.crossings]
        if self.free_circles:
            tokens.append(f"O[{self.free_circles}]")
        return ";".join(tokens)


_TOKEN = re.compile(r"^\s*([XYO])\s*\[\s*([0-9,\s]*)\]\s*$")


def parse_pd(text: str) -> PDDiagram:
    """Parse and validate PD text (see module docstring)."""
    crossings = []
    circles = 0
    for raw in re.split(r"[;\n]", text):
        if not raw.strip():
            continue
        m = _TOKEN.match(raw)
        if not m:
            raise PDError(f"malformed token {raw.strip()!r}")
        kind, body = m.groups()
        nums = [int(x) for x in body.replace(" ", "").split(",") if x]
        if kind == "O":
            if len(nums) != 1 or nums[0] < 1:
                raise PDError(f"O token needs one positive count, got {raw.strip()!r}")
            circles += nums[0]
            continue
        if len(nums) != 4:
            raise PDError(f"crossing {raw.strip()!r} needs 4 arc labels")
        if any(n < 1 for n in nums):
            raise PDError(f"arc labels must be positive in {raw.strip()!r}")
        crossings.append(Crossing(1 if kind == "X" else -1, tuple(nums)))
    d = PDDiagram(tuple(crossings), circles)
    _check(d)
    return d


def _check(d: PDDiagram):
    uses: dict[int, int] = {}
    heads: dict[int, int] = {}
    tails: dict[int, int] = {}
    for i, c in enumerate(d.crossings):
        for a in c.arcs:
            uses[a] = uses.get(a, 0) + 1
        for a in c.incoming:
            if a in heads:
                raise PDError(f"orientation conflict: arc {a} enters crossings {heads[a]} and {i}")
            heads[a] = i
        for a in c.outgoing:
            if a in tails:
                raise PDError(f"orientation conflict: arc {a} leaves crossings {tails[a]} and {i}")
            tails[a] = i
    for a, n in sorted(uses.items()):
        if n != 2:
            raise PDError(f"arc {a} appears {n} times (dangling or reused)")
    for a in uses:
        if a not in heads or a not in tails:
            raise PDError(f"orientation conflict on arc {a}")


def mirror(d: PDDiagram) -> PDDiagram:
    """Swap over and under at every crossing."""
    out = []
    for c in d.crossings:
        a, b, cc, dd = c.arcs
        if c.sign > 0:
            out.append(Crossing(-1, (dd, a, b, cc)))
        else:
            out.append(Crossing(1, (b, cc, dd, a)))
    return PDDiagram(tuple(out), d.free_circles)


def crossing_coefficients(sign: int, N: int, convention: str = "A") -> tuple[LaurentPoly, LaurentPoly]:
    """``(smoothing coefficient, wide-edge coefficient)`` for one crossing.

    Convention A: a positive crossing is ``q^(1-N)`` smoothing minus
    ``q^(-N)`` wide edge, a negative one ``q^(N-1)`` smoothing minus ``q^N``
    wide edge.  Convention B swaps the two pictures.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if sign > 0:
        first, second = LaurentPoly.monomial(1 - N), LaurentPoly.monomial(-N, -1)
    else:
        first, second = LaurentPoly.monomial(N - 1), LaurentPoly.monomial(N, -1)
    return (first, second) if convention == "A" else (second, first)


def state_graph(d: PDDiagram, wide: Iterable[bool]) -> ColoredGraph:
    """Closed graph for one resolution state (``wide[i]`` per crossing)."""
    wide = list(wide)
    vertices: dict[str, str] = {}
    edges: dict[str, Edge] = {}
    cont: dict[int, int] = {}
    head_vertex: dict[int, str] = {}
    tail_vertex: dict[int, str] = {}
    for i, (c, w) in enumerate(zip(d.crossings, wide)):
        if w:
            vertices[f"m{i}"] = MERGE
            vertices[f"s{i}"] = SPLIT
            edges[f"w{i}"] = Edge(2, f"m{i}", f"s{i}")
            for a in c.incoming:
                head_vertex[a] = f"m{i}"
            for a in c.outgoing:
                tail_vertex[a] = f"s{i}"
        else:
            cont.update(c.smoothing())
    seen: set[int] = set()
    for start, tail in sorted(tail_vertex.items()):
        a = start
        while a not in head_vertex:
            seen.add(a)
            a = cont[a]
        seen.add(a)
        edges[f"a{start}"] = Edge(1, tail, head_vertex[a])
    circles = [1] * d.free_circles
    for a in sorted(d.arcs):
        if a in seen:
            continue
        circles.append(1)
        x = a
        while x not in seen:
            seen.add(x)
            x = cont[x]
    return ColoredGraph(vertices, edges, circles)


def resolve(d: PDDiagram, N: int, convention: str = "A") -> GraphExpr:
    """The ``2^c``-term expansion (terms with isomorphic graphs are merged)."""
    terms = []
    for state in itertools.product((False, True), repeat=len(d.crossings)):
        coeff = ONE
        for c, w in zip(d.crossings, state):
            coeff = coeff * crossing_coefficients(c.sign, N, convention)[1 if w else 0]
        terms.append((coeff, state_graph(d, state)))
    return GraphExpr(terms)


def link_invariant(
    d: PDDiagram, N: int, convention: str = "A", evaluator: Evaluator | None = None
) -> LaurentPoly:
    """Unnormalized quantum sl(N) polynomial; the unknot gives ``[N]``."""
    ev = evaluator or Evaluator(N)

    def one(term):
        coeff, g = term
        try:
            return coeff * ev.evaluate(g)
        except IrreducibleGraph as exc:
            exc.state_graph = g
            raise

    total = ZERO
    for value in ev.map(one, resolve(d, N, convention)):
        total = total + value
    return total


def normalized(value: LaurentPoly, N: int) -> LaurentPoly:
    """Divide by the unknot value ``[N]`` (exactly)."""
    return value.exact_div(quantum_integer(N))


def braid_closure(strands: int, word: Iterable[int]) -> PDDiagram:
    """Closure of an upward braid; ``i`` is the positive generator between
    positions ``i`` and ``i+1``, ``-i`` its inverse."""
    labels = list(range(1, strands + 1))
    fresh = itertools.count(strands + 1)
    raw = []
    touched = set()
    for g in word:
        i = abs(g)
        if not 1 <= i < strands:
            raise PDError(f"generator {g} outside a {strands}-strand braid")
        left, right = labels[i - 1], labels[i]
        new_left, new_right = next(fresh), next(fresh)
        if g > 0:
            # left strand passes over to the right
            raw.append((1, [right, new_right, new_left, left]))
            labels[i - 1], labels[i] = new_left, new_right
        else:
            raw.append((-1, [left, right, new_right, new_left]))
            labels[i - 1], labels[i] = new_left, new_right
        touched.update((i - 1, i))
    close = {labels[p]: p + 1 for p in range(strands)}
    crossings = tuple(Crossing(sign, tuple(close.get(a, a) for a in arcs)) for sign, arcs in raw)
    d = PDDiagram(crossings, strands - len(touched))
    _check(d)
    return d


STANDARD_DIAGRAMS = {
    "unknot": "O[1]",
    "trefoil": "X[4,2,5,1];X[6,4,1,3];X[2,6,3,5]",
    "trefoil-left": "Y[1,4,2,5];Y[3,6,4,1];Y[5,2,6,3]",
    "figure8": "X[4,2,5,1];X[8,6,1,5];Y[6,3,7,4];Y[2,7,3,8]",
    "hopf": "X[2,4,3,1];X[4,2,1,3]",
    "kink+": "X[1,1,2,2]",
    "kink-": "Y[1,2,2,1]",
    "unlink-r2": "Y[1,4,2,3];X[2,4,1,3]",
}
