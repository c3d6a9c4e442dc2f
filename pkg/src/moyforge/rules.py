"""Local MOY relations as pattern -> linear-combination rewrite rules.

Every rule is stored as data: a pattern graph whose boundary legs carry
string labels, and a list of ``(coefficient, replacement graph)`` terms over
the same legs.  Coefficients are functions of ``N`` returning Laurent
polynomials.  Matching and application are generic: nothing below knows
which rule it is running.

Families (``a``, ``b``, ``c`` are edge colors):

* ``MOY1[a,b]``  loop:  an ``a`` edge merges with a ``b`` loop and splits
  back off it; coefficient ``[N-a choose b]``  (``[N-1]`` for ``a=b=1``).
* ``MOY2[a,b]``  digon: an ``a+b`` edge splits into ``a``, ``b`` that merge
  again; coefficient ``[a+b choose a]``  (``[2]`` for ``a=b=1``).
* ``MOY3``  the square with two 2-colored sides, ``[N-2]`` times the
  through-strands plus the turnbacks; ``MOY3[k]`` is the same square with
  sides ``k+1`` and ``k``.
* ``MOY4``  the square with one 2-colored side, the parallel pair plus the
  3-colored H.
* ``TRICK[a,b,c]``  associativity of two merges (or two splits).

* ``MOY0`` / ``CIRCLE_K[k]``  a closed ``k``-colored loop is ``[N choose k]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .graph import MERGE, SPLIT, ColoredGraph, Edge, GraphExpr
from .laurent import LaurentPoly, quantum_binomial, quantum_integer

__all__ = [
    "MoveRule",
    "Embedding",
    "find_matches",
    "apply_move",
    "circle_value",
    "circle_rule",
    "loop_rule",
    "digon_rule",
    "moy3_rule",
    "moy4_rule",
    "trick_rule",
    "rules_for",
    "REDUCING_FAMILIES",
]

Coefficient = Callable[[int], LaurentPoly]


def circle_value(k: int, N: int) -> LaurentPoly:
    """A closed ``k``-colored loop; ``[N]`` for ``k = 1``."""
    return quantum_binomial(N, k) if k <= N else LaurentPoly()


def circle_rule(k: int) -> MoveRule:
    """Removal of one closed ``k``-colored loop (``MOY0`` for ``k = 1``)."""
    name = "MOY0" if k == 1 else "CIRCLE_K"
    return MoveRule(name, (k,), ColoredGraph(circles=[k]),
                    ((lambda N: circle_value(k, N), ColoredGraph()),))


def _const(value: int) -> Coefficient:
    poly = LaurentPoly.constant(value)
    return lambda N: poly


@dataclass(frozen=True)
class MoveRule:
    name: str
    params: tuple[int, ...]
    pattern: ColoredGraph
    terms: tuple[tuple[Coefficient, ColoredGraph], ...]
    reducing: bool = True
    doc: str = field(default="", compare=False)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}[{','.join(map(str, self.params))}]"

    def coefficients(self, N: int) -> list[LaurentPoly]:
        return [coef(N) for coef, _ in self.terms]

    def coefficients_at_one(self, N: int) -> list[int]:
        return [c.eval_at_one() for c in self.coefficients(N)]

    def __repr__(self):
        return f"MoveRule({self.label})"


def _g(vertices, edges, legs) -> ColoredGraph:
    return ColoredGraph(vertices, {k: Edge(*v) for k, v in edges.items()}, (), legs)


def loop_rule(a: int, b: int) -> MoveRule:
    pattern = _g(
        {"M": MERGE, "S": SPLIT},
        {"x": (a, "X", "M"), "l": (b, "S", "M"), "w": (a + b, "M", "S"), "y": (a, "S", "Y")},
        ["X", "Y"],
    )
    repl = _g({}, {"e": (a, "X", "Y")}, ["X", "Y"])
    return MoveRule("MOY1", (a, b), pattern, ((lambda N: _binom(N - a, b), repl),))


def digon_rule(a: int, b: int) -> MoveRule:
    pattern = _g(
        {"S": SPLIT, "M": MERGE},
        {"i": (a + b, "I", "S"), "u": (a, "S", "M"), "v": (b, "S", "M"), "o": (a + b, "M", "O")},
        ["I", "O"],
    )
    repl = _g({}, {"e": (a + b, "I", "O")}, ["I", "O"])
    return MoveRule("MOY2", (a, b), pattern, ((lambda N: quantum_binomial(a + b, a), repl),))


def moy3_rule(k: int = 1) -> MoveRule:
    """Square whose directed cycle alternates colors ``k+1`` and ``k``.

    The four legs are 1-colored.  ``k = 1`` is the usual MOY3 relation;
    larger ``k`` appears once 3-colored edges exist, with coefficients
    ``[N-2 choose k]`` and ``[N-2 choose k-1]``.
    """
    # directed 4-cycle M1 -W1-> S1 -y-> M2 -W2-> S2 -x-> M1
    pattern = _g(
        {"M1": MERGE, "S1": SPLIT, "M2": MERGE, "S2": SPLIT},
        {
            "a": (1, "A", "M1"), "x": (k, "S2", "M1"), "W1": (k + 1, "M1", "S1"),
            "c": (1, "S1", "C"), "y": (k, "S1", "M2"), "d": (1, "D", "M2"),
            "W2": (k + 1, "M2", "S2"), "b": (1, "S2", "B"),
        },
        ["A", "B", "C", "D"],
    )
    through = _g({}, {"ac": (1, "A", "C"), "db": (1, "D", "B")}, ["A", "B", "C", "D"])
    turnback = _g({}, {"ab": (1, "A", "B"), "dc": (1, "D", "C")}, ["A", "B", "C", "D"])
    if k == 1:
        coefs = (lambda N: quantum_integer(N - 2), _const(1))
    else:
        coefs = (lambda N: _binom(N - 2, k), lambda N: _binom(N - 2, k - 1))
    return MoveRule("MOY3", () if k == 1 else (k,), pattern,
                    ((coefs[0], through), (coefs[1], turnback)))


def _binom(n: int, k: int) -> LaurentPoly:
    return quantum_binomial(n, k) if n >= 0 else LaurentPoly()


def moy4_rule() -> MoveRule:
    # square with a single 2-colored side R; legs P, Q colored 2 and a, b colored 1
    pattern = _g(
        {"S2": SPLIT, "M1": MERGE, "S1": SPLIT, "M2": MERGE},
        {
            "P": (2, "LP", "S2"), "c": (1, "S2", "M1"), "d": (1, "S2", "M2"),
            "a": (1, "La", "M1"), "R": (2, "M1", "S1"), "b": (1, "S1", "Lb"),
            "e": (1, "S1", "M2"), "Q": (2, "M2", "LQ"),
        },
        ["La", "Lb", "LP", "LQ"],
    )
    parallel = _g({}, {"ab": (1, "La", "Lb"), "PQ": (2, "LP", "LQ")}, ["La", "Lb", "LP", "LQ"])
    through3 = _g(
        {"M": MERGE, "S": SPLIT},
        {"a": (1, "La", "M"), "P": (2, "LP", "M"), "F": (3, "M", "S"),
         "Q": (2, "S", "LQ"), "b": (1, "S", "Lb")},
        ["La", "Lb", "LP", "LQ"],
    )
    return MoveRule("MOY4", (), pattern, ((_const(1), parallel), (_const(1), through3)))


def trick_rule(a: int, b: int, c: int, kind: str = MERGE) -> MoveRule:
    """Re-bracketing ``(x + y) + z -> x + (y + z)`` for merges (or splits)."""
    legs = ["X", "Y", "Z", "O"]
    if kind == MERGE:
        pattern = _g(
            {"M1": MERGE, "M2": MERGE},
            {"x": (a, "X", "M1"), "y": (b, "Y", "M1"), "p": (a + b, "M1", "M2"),
             "z": (c, "Z", "M2"), "o": (a + b + c, "M2", "O")},
            legs,
        )
        repl = _g(
            {"M1": MERGE, "M2": MERGE},
            {"y": (b, "Y", "M1"), "z": (c, "Z", "M1"), "p": (b + c, "M1", "M2"),
             "x": (a, "X", "M2"), "o": (a + b + c, "M2", "O")},
            legs,
        )
    else:
        pattern = _g(
            {"S1": SPLIT, "S2": SPLIT},
            {"o": (a + b + c, "O", "S2"), "p": (a + b, "S2", "S1"), "z": (c, "S2", "Z"),
             "x": (a, "S1", "X"), "y": (b, "S1", "Y")},
            legs,
        )
        repl = _g(
            {"S1": SPLIT, "S2": SPLIT},
            {"o": (a + b + c, "O", "S2"), "p": (b + c, "S2", "S1"), "x": (a, "S2", "X"),
             "y": (b, "S1", "Y"), "z": (c, "S1", "Z")},
            legs,
        )
    return MoveRule("TRICK", (a, b, c), pattern, ((_const(1), repl),), reducing=False,
                    doc=kind)


REDUCING_FAMILIES = ("MOY1", "MOY2", "MOY3", "MOY4")

_RULE_CACHE: dict[int, dict[str, list[MoveRule]]] = {}


def rules_for(max_color: int) -> dict[str, list[MoveRule]]:
    """All rule instances whose edges fit under ``max_color``, by family."""
    if max_color in _RULE_CACHE:
        return _RULE_CACHE[max_color]
    fam: dict[str, list[MoveRule]] = {"MOY1": [], "MOY2": [], "MOY3": [], "MOY4": [], "TRICK": []}
    for a in range(1, max_color + 1):
        for b in range(1, max_color + 1 - a):
            fam["MOY1"].append(loop_rule(a, b))
            if a <= b:
                fam["MOY2"].append(digon_rule(a, b))
    if max_color >= 2:
        fam["MOY3"].append(moy3_rule())
        fam["MOY4"].append(moy4_rule())
    for k in range(2, max_color):
        fam["MOY3"].append(moy3_rule(k))
    for a, b, c in itertools.product(range(1, max_color + 1), repeat=3):
        if a + b + c <= max_color:
            fam["TRICK"].append(trick_rule(a, b, c, MERGE))
            fam["TRICK"].append(trick_rule(a, b, c, SPLIT))
    _RULE_CACHE[max_color] = fam
    return fam


# ----------------------------------------------------------------------
# matching


@dataclass(frozen=True)
class Embedding:
    """Pattern vertex -> host vertex and pattern edge -> host edge."""

    vmap: tuple[tuple[str, str], ...]
    emap: tuple[tuple[str, str], ...]

    @property
    def vertices(self) -> dict[str, str]:
        return dict(self.vmap)

    @property
    def edges(self) -> dict[str, str]:
        return dict(self.emap)


def _bijections(p_edges: list[str], h_edges: list[str], pcolor, hcolor) -> Iterator[dict[str, str]]:
    if len(p_edges) != len(h_edges):
        return
    for perm in itertools.permutations(h_edges):
        if all(pcolor(p) == hcolor(h) for p, h in zip(p_edges, perm)):
            yield dict(zip(p_edges, perm))


def find_matches(g: ColoredGraph, rule: MoveRule, first_only: bool = False) -> list[Embedding]:
    """All color- and orientation-preserving embeddings of ``rule.pattern``.

    Pattern vertices map injectively to host vertices of the same kind, and
    the edge ends at each pattern vertex map bijectively onto the edge ends
    of its image.  A leg edge may land on any host edge with the right color,
    including one whose far end is also inside the image (two legs glued to
    each other).  Embeddings differing only by an automorphism that also
    fixes the leg assignment are reported once.
    """
    pat = rule.pattern
    if not pat.vertices:
        (k,) = pat.circles
        hits = [i for i, c in enumerate(g.circles) if c == k]
        return [Embedding((), (("circle", str(i)),)) for i in hits[: 1 if first_only else None]]
    if len(pat.vertices) > len(g.vertices):
        return []
    p_inc = pat.incidence()
    h_inc = g.incidence()
    pe = pat.edges
    he = g.edges
    p_legs = set(pat.legs)
    internal = {eid for eid, e in pe.items() if e.tail not in p_legs and e.head not in p_legs}

    # pattern vertices in an order where each is reached by an internal edge
    order: list[str] = []
    start = sorted(pat.vertices)[0]
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop(0)
        order.append(v)
        for eid in p_inc[v][0] + p_inc[v][1]:
            if eid in internal:
                e = pe[eid]
                w = e.head if e.tail == v else e.tail
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    if len(order) != len(pat.vertices):
        raise ValueError(f"pattern of {rule.label} is not connected")

    pcol = lambda x: pe[x].color
    hcol = lambda x: he[x].color
    results: list[Embedding] = []
    keys = set()

    def extend(i: int, vmap: dict[str, str], emap: dict[str, str]) -> bool:
        if i == len(order):
            key = (
                frozenset(vmap.values()),
                frozenset(emap[e] for e in internal),
                frozenset((e, emap[e]) for e in pe if e not in internal),
            )
            if key not in keys:
                keys.add(key)
                results.append(Embedding(tuple(sorted(vmap.items())), tuple(sorted(emap.items()))))
            return first_only
        v = order[i]
        if i == 0:
            candidates = [x for x, k in g.vertices.items() if k == pat.vertices[v]]
        else:
            # determined by an already-mapped internal edge
            cand = None
            for eid in p_inc[v][0] + p_inc[v][1]:
                if eid in emap and eid in internal:
                    h = he[emap[eid]]
                    cand = h.head if pe[eid].head == v else h.tail
                    break
            candidates = [cand] if cand is not None else []
        used = set(vmap.values())
        for x in candidates:
            if x in used or g.vertices.get(x) != pat.vertices[v]:
                continue
            for bin_ in _bijections(p_inc[v][0], h_inc[x][0], pcol, hcol):
                for bout in _bijections(p_inc[v][1], h_inc[x][1], pcol, hcol):
                    local = {**bin_, **bout}
                    ok = True
                    for pe_id, he_id in local.items():
                        if pe_id in emap and emap[pe_id] != he_id:
                            ok = False
                            break
                    if not ok:
                        continue
                    new_emap = dict(emap)
                    new_emap.update(local)
                    # an internal edge with both ends mapped must land on one host edge
                    for pe_id in local:
                        if pe_id in internal:
                            e = pe[pe_id]
                            h = he[new_emap[pe_id]]
                            other = e.tail if e.head == v else e.head
                            if other in vmap and (
                                (e.head == v and vmap[other] != h.tail)
                                or (e.tail == v and vmap[other] != h.head)
                            ):
                                ok = False
                                break
                    if not ok:
                        continue
                    vmap[v] = x
                    if extend(i + 1, vmap, new_emap):
                        return True
                    del vmap[v]
        return False

    extend(0, {}, {})
    return results


# ----------------------------------------------------------------------
# application

_fresh = itertools.count()


def _splice(g: ColoredGraph, rule: MoveRule, emb: Embedding, repl: ColoredGraph) -> ColoredGraph:
    pat = rule.pattern
    if not pat.vertices:
        circles = list(g.circles)
        del circles[int(emb.edges["circle"])]
        return ColoredGraph(g.vertices, g.edges, circles + list(repl.circles), g.legs)
    p_legs = set(pat.legs)
    vmap = emb.vertices
    emap = emb.edges
    image_v = set(vmap.values())
    internal_h = set()
    # (host edge, "tail"|"head") -> junction label for the pattern leg covering that end
    inside_end: dict[tuple[str, str], str] = {}
    for pe_id, e in pat.edges.items():
        h = emap[pe_id]
        if e.tail in p_legs:
            inside_end[(h, "head")] = e.tail
        elif e.head in p_legs:
            inside_end[(h, "tail")] = e.head
        else:
            internal_h.add(h)

    tag = next(_fresh)
    jn = lambda leg: f"\x00J{tag}:{leg}"
    pieces: dict[str, list] = {}
    for hid, e in g.edges.items():
        if hid in internal_h:
            continue
        tail = jn(inside_end[(hid, "tail")]) if (hid, "tail") in inside_end else e.tail
        head = jn(inside_end[(hid, "head")]) if (hid, "head") in inside_end else e.head
        pieces[hid] = [e.color, tail, head]
    vertices = {v: k for v, k in g.vertices.items() if v not in image_v}
    r_legs = set(repl.legs)
    for v, k in repl.vertices.items():
        vertices[f"{v}#{tag}"] = k
    for rid, e in repl.edges.items():
        tail = jn(e.tail) if e.tail in r_legs else f"{e.tail}#{tag}"
        head = jn(e.head) if e.head in r_legs else f"{e.head}#{tag}"
        pieces[f"{rid}#{tag}"] = [e.color, tail, head]

    circles = list(g.circles) + list(repl.circles)
    by_head = {p[2]: pid for pid, p in pieces.items() if p[2].startswith("\x00J")}
    by_tail = {p[1]: pid for pid, p in pieces.items() if p[1].startswith("\x00J")}
    for leg in pat.legs:
        j = jn(leg)
        pin = by_head.pop(j)
        pout = by_tail.pop(j)
        if pin == pout:
            circles.append(pieces.pop(pin)[0])
            continue
        cin, tail, _ = pieces.pop(pin)
        cout, _, head = pieces.pop(pout)
        if cin != cout:
            raise AssertionError(f"color clash gluing leg {leg}: {cin} vs {cout}")
        pieces[pin] = [cin, tail, head]
        if tail.startswith("\x00J"):
            by_tail[tail] = pin
        if head.startswith("\x00J"):
            by_head[head] = pin
    edges = {pid: Edge(c, t, h) for pid, (c, t, h) in pieces.items()}
    return ColoredGraph(vertices, edges, circles, g.legs)


def apply_move(g: ColoredGraph, rule: MoveRule, emb: Embedding, N: int) -> GraphExpr:
    """Excise the matched fragment and glue in each replacement term."""
    terms = []
    for coef, repl in rule.terms:
        c = coef(N)
        if c.is_zero():
            continue
        terms.append((c, _splice(g, rule, emb, repl)))
    return GraphExpr(terms)
