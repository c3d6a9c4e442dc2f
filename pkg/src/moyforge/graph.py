"""Oriented colored trivalent graphs, possibly with labeled boundary legs.

A vertex is either a *merge* (two incoming edges colored ``a`` and ``b``,
one outgoing edge colored ``a+b``) or a *split* (the mirror image).  Closed
vertex-free loops are kept as a multiset of colors in ``circles``.  An edge
endpoint is either a vertex id or a boundary-leg label; each leg label is
used by exactly one edge end.

Graphs carry no planar embedding.  Every computation here depends only on
the abstract oriented multigraph.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "MERGE",
    "SPLIT",
    "Edge",
    "ColoredGraph",
    "Violation",
    "GraphValidationError",
    "validate",
    "check",
    "canonical_form",
    "split_components",
    "disjoint_union",
    "GraphExpr",
]

MERGE = "merge"
SPLIT = "split"
_KINDS = (MERGE, SPLIT)


@dataclass(frozen=True)
class Edge:
    color: int
    tail: str
    head: str


class ColoredGraph:
    """Immutable colored trivalent multigraph."""

    __slots__ = ("_vertices", "_edges", "_circles", "_legs", "_canon", "_inc")

    def __init__(
        self,
        vertices: Mapping[str, str] = (),
        edges: Mapping[str, Edge] = (),
        circles: Iterable[int] = (),
        legs: Iterable[str] = (),
    ):
        self._vertices = dict(vertices)
        self._edges = {
            eid: (e if isinstance(e, Edge) else Edge(*e)) for eid, e in dict(edges).items()
        }
        self._circles = tuple(sorted(circles))
        self._legs = tuple(sorted(legs))
        self._canon = None
        self._inc = None
        clash = set(self._vertices) & set(self._legs)
        if clash:
            raise ValueError(f"ids used both as vertex and leg: {sorted(clash)}")

    # -- basic accessors -----------------------------------------------
    @property
    def vertices(self) -> dict[str, str]:
        return self._vertices

    @property
    def edges(self) -> dict[str, Edge]:
        return self._edges

    @property
    def circles(self) -> tuple[int, ...]:
        return self._circles

    @property
    def legs(self) -> tuple[str, ...]:
        return self._legs

    @property
    def is_closed(self) -> bool:
        return not self._legs

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges) + len(self._circles)

    def max_color(self) -> int:
        colors = [e.color for e in self._edges.values()] + list(self._circles)
        return max(colors, default=0)

    def is_empty(self) -> bool:
        return not self._vertices and not self._edges and not self._circles

    def incidence(self) -> dict[str, tuple[list[str], list[str]]]:
        """Map each vertex/leg id to ``(incoming edge ids, outgoing edge ids)``."""
        if self._inc is None:
            inc: dict[str, tuple[list[str], list[str]]] = {
                v: ([], []) for v in itertools.chain(self._vertices, self._legs)
            }
            for eid, e in self._edges.items():
                if e.head in inc:
                    inc[e.head][0].append(eid)
                if e.tail in inc:
                    inc[e.tail][1].append(eid)
            self._inc = inc
        return self._inc

    def relabeled(self, vmap: Mapping[str, str], emap: Mapping[str, str]) -> ColoredGraph:
        """Rename vertices and edges (legs keep their labels)."""
        def ep(x):
            return vmap.get(x, x)
        return ColoredGraph(
            {vmap[v]: k for v, k in self._vertices.items()},
            {emap[eid]: Edge(e.color, ep(e.tail), ep(e.head)) for eid, e in self._edges.items()},
            self._circles,
            self._legs,
        )

    def with_circles(self, circles: Iterable[int]) -> ColoredGraph:
        return ColoredGraph(self._vertices, self._edges, circles, self._legs)

    # -- serialization -------------------------------------------------
    def to_json_obj(self, N: int | None = None) -> dict:
        obj = {
            "vertices": [{"id": v, "kind": k} for v, k in sorted(self._vertices.items())],
            "edges": [
                {"id": eid, "color": e.color, "tail": e.tail, "head": e.head}
                for eid, e in sorted(self._edges.items())
            ],
            "circles": list(self._circles),
            "legs": list(self._legs),
        }
        if N is not None:
            obj = {"N": N, **obj}
        return obj

    def to_json(self, N: int | None = None, **kw) -> str:
        return json.dumps(self.to_json_obj(N), **kw)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> ColoredGraph:
        try:
            vertices = {}
            for v in obj.get("vertices", []):
                if v["kind"] not in _KINDS:
                    raise ValueError(f"vertex {v['id']!r}: unknown kind {v['kind']!r}")
                if v["id"] in vertices:
                    raise ValueError(f"duplicate vertex id {v['id']!r}")
                vertices[str(v["id"])] = v["kind"]
            edges = {}
            for e in obj.get("edges", []):
                if e["id"] in edges:
                    raise ValueError(f"duplicate edge id {e['id']!r}")
                color = e["color"]
                if not isinstance(color, int) or isinstance(color, bool):
                    raise ValueError(f"edge {e['id']!r}: color must be an integer")
                edges[str(e["id"])] = Edge(color, str(e["tail"]), str(e["head"]))
            circles = [int(c) for c in obj.get("circles", [])]
            legs = [str(x) for x in obj.get("legs", [])]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: {exc!r}") from exc
        return cls(vertices, edges, circles, legs)

    @classmethod
    def from_json(cls, text: str) -> ColoredGraph:
        return cls.from_json_obj(json.loads(text))

    # -- identity ------------------------------------------------------
    def canonical(self) -> bytes:
        if self._canon is None:
            self._canon = _canonical_form(self)
        return self._canon

    def isomorphic(self, other: ColoredGraph) -> bool:
        return self.canonical() == other.canonical()

    def __repr__(self):
        return (
            f"ColoredGraph(V={len(self._vertices)}, E={len(self._edges)}, "
            f"circles={list(self._circles)}, legs={list(self._legs)})"
        )


# ----------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str  # "valence" | "flux" | "color_range" | "dangling" | "leg"
    where: str
    message: str


class GraphValidationError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        text = "; ".join(f"{v.kind} at {v.where}: {v.message}" for v in violations)
        super().__init__(text)


def validate(g: ColoredGraph, N: int) -> list[Violation]:
    """Return every violation of the trivalent flux rules (empty list = ok).

    Colors must lie in ``1..N``; color ``N`` is the top exterior power and is
    needed for ``N = 2`` graphs with 2-colored edges.
    """
    out: list[Violation] = []
    legs = set(g.legs)
    known = set(g.vertices) | legs
    for eid, e in g.edges.items():
        if not 1 <= e.color <= N:
            out.append(Violation("color_range", f"edge {eid}", f"color {e.color} outside 1..{N}"))
        for end in (e.tail, e.head):
            if end not in known:
                out.append(Violation("dangling", f"edge {eid}", f"unknown endpoint {end!r}"))
    for i, c in enumerate(g.circles):
        if not 1 <= c <= N:
            out.append(Violation("color_range", f"circle {i}", f"color {c} outside 1..{N}"))
    inc = g.incidence()
    for leg in g.legs:
        ins, outs = inc[leg]
        if len(ins) + len(outs) != 1:
            out.append(Violation("leg", f"leg {leg}", f"used by {len(ins) + len(outs)} edge ends"))
    for v, kind in g.vertices.items():
        ins, outs = inc[v]
        n_in, n_out = (2, 1) if kind == MERGE else (1, 2)
        if len(ins) != n_in or len(outs) != n_out:
            out.append(Violation(
                "valence", f"vertex {v}",
                f"{kind} needs {n_in} in / {n_out} out, has {len(ins)} in / {len(outs)} out",
            ))
            continue
        cin = sum(g.edges[x].color for x in ins)
        cout = sum(g.edges[x].color for x in outs)
        if cin != cout:
            out.append(Violation("flux", f"vertex {v}", f"incoming {cin} != outgoing {cout}"))
    return out


def check(g: ColoredGraph, N: int) -> ColoredGraph:
    violations = validate(g, N)
    if violations:
        raise GraphValidationError(violations)
    return g


# ----------------------------------------------------------------------
# canonical labeling


def _canonical_form(g: ColoredGraph) -> bytes:
    nodes = sorted(g.vertices) + sorted(g.legs)
    index = {x: i for i, x in enumerate(nodes)}
    n = len(nodes)
    # initial invariant: vertex kind, or the leg label itself (legs are matched by label)
    init = [("v", g.vertices[x]) if x in g.vertices else ("l", x) for x in nodes]
    arcs = [(index[e.tail], index[e.head], e.color) for e in g.edges.values()]
    out_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    in_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for t, h, c in arcs:
        out_adj[t].append((h, c))
        in_adj[h].append((t, c))

    def relabel(sigs):
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        return [order[s] for s in sigs]

    def refine(colors: list[int]) -> list[int]:
        k = len(set(colors))
        while True:
            sigs = [
                (
                    colors[i],
                    tuple(sorted((c, colors[h]) for h, c in out_adj[i])),
                    tuple(sorted((c, colors[t]) for t, c in in_adj[i])),
                )
                for i in range(n)
            ]
            new = relabel(sigs)
            k2 = len(set(new))
            if k2 == k:
                return new
            colors, k = new, k2

    def encode(colors: list[int]) -> tuple:
        # colors is a discrete labeling here
        enc_nodes = tuple(init[i] for i in sorted(range(n), key=lambda i: colors[i]))
        enc_arcs = tuple(sorted((colors[t], colors[h], c) for t, h, c in arcs))
        return enc_nodes, enc_arcs

    best = None
    start = refine(relabel(init)) if n else []

    def search(colors: list[int]):
        nonlocal best
        counts = Counter(colors)
        target = None
        for col in sorted(counts):
            if counts[col] > 1:
                target = col
                break
        if target is None:
            cand = encode(colors)
            if best is None or cand < best:
                best = cand
            return
        for i in range(n):
            if colors[i] != target:
                continue
            # individualize i: it sorts just before the rest of its cell
            ind = [2 * c + (1 if (c == target and j != i) else 0) for j, c in enumerate(colors)]
            search(refine(relabel(ind)))

    if n:
        search(start)
        body = best
    else:
        body = ((), ())
    return repr((body, g.circles)).encode()


def canonical_form(g: ColoredGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic.

    Isomorphisms preserve vertex kinds, edge colors and orientations, and fix
    boundary-leg labels.
    """
    return g.canonical()


# ----------------------------------------------------------------------
# components


def split_components(g: ColoredGraph) -> list[ColoredGraph]:
    """Connected components; every circle becomes its own component."""
    parent: dict[str, str] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in itertools.chain(g.vertices, g.legs):
        parent[x] = x
    for e in g.edges.values():
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
    groups: dict[str, list[str]] = defaultdict(list)
    for x in itertools.chain(g.vertices, g.legs):
        groups[find(x)].append(x)
    edge_groups: dict[str, dict[str, Edge]] = defaultdict(dict)
    for eid, e in g.edges.items():
        edge_groups[find(e.tail)][eid] = e
    comps = []
    for root in sorted(groups):
        members = groups[root]
        verts = {x: g.vertices[x] for x in members if x in g.vertices}
        legs = [x for x in members if x not in g.vertices]
        comps.append(ColoredGraph(verts, edge_groups.get(root, {}), (), legs))
    comps.extend(ColoredGraph(circles=[c]) for c in g.circles)
    return comps


def disjoint_union(*graphs: ColoredGraph) -> ColoredGraph:
    """Union with ids prefixed by component index (legs must not collide)."""
    vertices: dict[str, str] = {}
    edges: dict[str, Edge] = {}
    circles: list[int] = []
    legs: list[str] = []
    for i, g in enumerate(graphs):
        pre = f"u{i}."
        lg = set(g.legs)
        def ep(x, pre=pre, lg=lg):
            return x if x in lg else pre + x
        vertices.update({pre + v: k for v, k in g.vertices.items()})
        edges.update({pre + eid: Edge(e.color, ep(e.tail), ep(e.head)) for eid, e in g.edges.items()})
        circles.extend(g.circles)
        legs.extend(g.legs)
    if len(set(legs)) != len(legs):
        raise ValueError("leg labels collide in disjoint union")
    return ColoredGraph(vertices, edges, circles, legs)


# ----------------------------------------------------------------------
# formal linear combinations


class GraphExpr:
    """Finite Z[q, 1/q]-linear combination of graphs, keyed by canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[object, ColoredGraph]] = ()):
        from .laurent import LaurentPoly

        acc: dict[bytes, list] = {}
        legs = None
        for coeff, g in terms:
            if not isinstance(coeff, LaurentPoly):
                coeff = LaurentPoly.constant(coeff)
            if legs is None:
                legs = g.legs
            elif g.legs != legs:
                raise ValueError(f"mismatched boundary legs {g.legs} vs {legs}")
            key = g.canonical()
            if key in acc:
                acc[key][0] = acc[key][0] + coeff
            else:
                acc[key] = [coeff, g]
        self._terms = {k: (c, g) for k, (c, g) in acc.items() if not c.is_zero()}

    def terms(self) -> list[tuple[object, ColoredGraph]]:
        return [self._terms[k] for k in sorted(self._terms)]

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def __add__(self, other: GraphExpr) -> GraphExpr:
        return GraphExpr(list(self) + list(other))

    def scale(self, coeff) -> GraphExpr:
        return GraphExpr((coeff * c, g) for c, g in self)

    def coefficient_of(self, g: ColoredGraph):
        from .laurent import ZERO

        hit = self._terms.get(g.canonical())
        return hit[0] if hit else ZERO

    def __repr__(self):
        return f"GraphExpr({len(self._terms)} terms)"
