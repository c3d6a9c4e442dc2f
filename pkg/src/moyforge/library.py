"""Small named graphs used as fixtures, examples and test inputs."""

from __future__ import annotations

from .graph import MERGE, SPLIT, ColoredGraph, Edge

__all__ = ["circle", "theta", "web_closure", "figure2_graph", "FIGURE2_LETTERS", "NAMED"]


def circle(k: int = 1) -> ColoredGraph:
    return ColoredGraph(circles=[k])


def theta(a: int = 1, b: int = 1) -> ColoredGraph:
    """Two edges colored ``a`` and ``b`` merging into one colored ``a+b``."""
    return ColoredGraph(
        {"m": MERGE, "s": SPLIT},
        {
            "x": Edge(a, "s", "m"),
            "y": Edge(b, "s", "m"),
            "w": Edge(a + b, "m", "s"),
        },
    )


def web_closure(strands: int, rungs: list[int]) -> ColoredGraph:
    """Closure of a ladder of 1-colored upward strands.

    ``rungs`` lists positions ``i`` (1-based, ``i < strands``) from bottom to
    top; each rung merges strands ``i`` and ``i+1`` into a 2-colored edge that
    immediately splits back.  Strands never touched by a rung close into
    1-colored circles.
    """
    for i in rungs:
        if not 1 <= i < strands:
            raise ValueError(f"rung position {i} outside 1..{strands - 1}")
    vertices: dict[str, str] = {}
    edges: dict[str, Edge] = {}
    visits: list[list[int]] = [[] for _ in range(strands + 1)]
    for k, i in enumerate(rungs):
        vertices[f"m{k}"] = MERGE
        vertices[f"s{k}"] = SPLIT
        edges[f"w{k}"] = Edge(2, f"m{k}", f"s{k}")
        visits[i].append(k)
        visits[i + 1].append(k)
    circles = []
    for s in range(1, strands + 1):
        ks = visits[s]
        if not ks:
            circles.append(1)
            continue
        for j, k in enumerate(ks):
            nxt = ks[(j + 1) % len(ks)]
            edges[f"t{s}.{j}"] = Edge(1, f"s{k}", f"m{nxt}")
    return ColoredGraph(vertices, edges, circles)


# 1-colored edges of the ladder closure, by strand, named as in the
# standard drawing of G: strand 1 carries a, f; strand 2 carries b, c, d, g;
# strand 3 carries e, h.
FIGURE2_LETTERS = {
    "t1.0": "a", "t1.1": "f",
    "t2.0": "b", "t2.1": "c", "t2.2": "d", "t2.3": "g",
    "t3.0": "e", "t3.1": "h",
}


def figure2_graph() -> ColoredGraph:
    """The eight-vertex graph ``G`` with four 2-colored edges.

    It is the closure of the three-strand ladder with rungs at positions
    1, 2, 1, 2.  The 1-colored edges are named ``a`` .. ``h``; the
    2-colored rungs are ``w0`` .. ``w3``.
    """
    g = web_closure(3, [1, 2, 1, 2])
    emap = {eid: FIGURE2_LETTERS.get(eid, eid) for eid in g.edges}
    return g.relabeled({v: v for v in g.vertices}, emap)


NAMED = {
    "circle": circle,
    "theta": theta,
    "figure2": figure2_graph,
}
