"""Random and exhaustive generation of small closed colored graphs.

Random graphs come from color-consistent random pairing: pick vertex types
(``a + b -> a+b`` merges and the mirror splits), then for every color match
the outgoing edge ends with the incoming ones by a random permutation.
Type choices whose in/out counts disagree for some color are rejected and
redrawn.  Nothing here looks at planarity unless ``planar=True`` is asked
for, in which case graphs are closures of random ladders (always planar).
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator

from .graph import MERGE, SPLIT, ColoredGraph, Edge, canonical_form, validate
from .library import web_closure

__all__ = ["GenConfig", "random_graph", "random_graphs", "enumerate_graphs"]


@dataclass(frozen=True)
class GenConfig:
    max_vertices: int = 8
    palette: tuple[int, ...] = (1, 2)
    seed: int | None = None
    min_vertices: int = 0
    max_circles: int = 1
    connected: bool = False
    planar: bool = False

    def __post_init__(self):
        if self.max_vertices < 0 or self.max_vertices % 2:
            raise ValueError("max_vertices must be a non-negative even number")
        if not self.palette or not set(self.palette) <= {1, 2, 3}:
            raise ValueError("palette must be a non-empty subset of {1, 2, 3}")
        object.__setattr__(self, "palette", tuple(sorted(set(self.palette))))


def _vertex_types(palette) -> list[tuple[int, int]]:
    # unordered parts (a, b) with a <= b whose sum is also in the palette
    return [(a, b) for a in palette for b in palette if a <= b and a + b in palette]


def _pair(rng: random.Random, kinds: list[tuple[str, int, int]], circles: list[int]) -> ColoredGraph | None:
    vertices = {}
    outs: dict[int, list[str]] = defaultdict(list)
    ins: dict[int, list[str]] = defaultdict(list)
    for i, (kind, a, b) in enumerate(kinds):
        v = f"v{i}"
        vertices[v] = kind
        if kind == MERGE:
            ins[a].append(v)
            ins[b].append(v)
            outs[a + b].append(v)
        else:
            outs[a].append(v)
            outs[b].append(v)
            ins[a + b].append(v)
    if set(ins) != set(outs) or any(len(ins[c]) != len(outs[c]) for c in ins):
        return None
    edges = {}
    n = 0
    for c in sorted(outs):
        heads = list(ins[c])
        rng.shuffle(heads)
        for t, h in zip(outs[c], heads):
            edges[f"e{n}"] = Edge(c, t, h)
            n += 1
    return ColoredGraph(vertices, edges, circles)


def _is_connected(g: ColoredGraph) -> bool:
    from .graph import split_components

    return len(split_components(g)) <= 1


def random_graph(cfg: GenConfig, rng: random.Random | None = None) -> ColoredGraph:
    """One validated closed graph with at most ``cfg.max_vertices`` vertices."""
    rng = rng or random.Random(cfg.seed)
    if cfg.planar:
        return _random_ladder(cfg, rng)
    types = _vertex_types(cfg.palette)
    top = max(cfg.palette)
    for _ in range(10_000):
        half = rng.randint(cfg.min_vertices // 2, cfg.max_vertices // 2) if types else 0
        circles = [] if cfg.connected and half else [
            rng.choice(cfg.palette) for _ in range(rng.randint(0, cfg.max_circles))
        ]
        kinds = [(MERGE, *rng.choice(types)) for _ in range(half)]
        kinds += [(SPLIT, *rng.choice(types)) for _ in range(half)]
        g = _pair(rng, kinds, circles)
        if g is None:
            continue
        if cfg.connected and not _is_connected(g):
            continue
        if validate(g, top):
            continue
        return g
    raise RuntimeError("could not draw a flux-consistent graph")


def _random_ladder(cfg: GenConfig, rng: random.Random) -> ColoredGraph:
    if cfg.palette != (1, 2):
        raise ValueError("planar generation supports the {1, 2} palette only")
    for _ in range(10_000):
        rungs = rng.randint(cfg.min_vertices // 2, cfg.max_vertices // 2)
        strands = rng.randint(2, max(2, min(5, rungs + 1)))
        g = web_closure(strands, [rng.randint(1, strands - 1) for _ in range(rungs)])
        if cfg.connected and not _is_connected(g):
            continue
        return g
    raise RuntimeError("could not draw a connected ladder")


def random_graphs(cfg: GenConfig, count: int) -> list[ColoredGraph]:
    rng = random.Random(cfg.seed)
    return [random_graph(cfg, rng) for _ in range(count)]


def enumerate_graphs(cfg: GenConfig) -> Iterator[ColoredGraph]:
    """Every isomorphism class up to ``cfg.max_vertices`` vertices.

    Circles (at most ``cfg.max_circles``, colors from the palette) are
    added to each vertex-carrying shape unless ``cfg.connected`` is set.
    """
    if cfg.max_vertices > 8:
        raise ValueError("exhaustive enumeration is limited to 8 vertices")
    types = _vertex_types(cfg.palette)
    seen: set[bytes] = set()
    circle_sets = [()]
    for k in range(1, cfg.max_circles + 1):
        circle_sets.extend(itertools.combinations_with_replacement(cfg.palette, k))
    for half in range(cfg.min_vertices // 2, cfg.max_vertices // 2 + 1):
        if half and not types:
            break
        for mtypes in itertools.combinations_with_replacement(types, half):
            for stypes in itertools.combinations_with_replacement(types, half):
                kinds = [(MERGE, a, b) for a, b in mtypes] + [(SPLIT, a, b) for a, b in stypes]
                for g in _all_pairings(kinds):
                    if cfg.connected and not _is_connected(g):
                        continue
                    for circles in (circle_sets if not (cfg.connected and half) else [()]):
                        if cfg.connected and not half and len(circles) != 1:
                            continue
                        h = g.with_circles(circles)
                        key = canonical_form(h)
                        if key not in seen:
                            seen.add(key)
                            yield h


def _all_pairings(kinds) -> Iterator[ColoredGraph]:
    vertices = {}
    outs: dict[int, list[str]] = defaultdict(list)
    ins: dict[int, list[str]] = defaultdict(list)
    for i, (kind, a, b) in enumerate(kinds):
        v = f"v{i}"
        vertices[v] = kind
        if kind == MERGE:
            ins[a].append(v)
            ins[b].append(v)
            outs[a + b].append(v)
        else:
            outs[a].append(v)
            outs[b].append(v)
            ins[a + b].append(v)
    if set(ins) != set(outs) or any(len(ins[c]) != len(outs[c]) for c in ins):
        return
    colors = sorted(outs)
    per_color = [set(itertools.permutations(ins[c])) for c in colors]
    for choice in itertools.product(*per_color):
        edges = {}
        n = 0
        for c, heads in zip(colors, choice):
            for t, h in zip(outs[c], heads):
                edges[f"e{n}"] = Edge(c, t, h)
                n += 1
        yield ColoredGraph(vertices, edges)
