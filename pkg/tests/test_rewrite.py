import json
from pathlib import Path

import pytest

from moyforge.generator import GenConfig, random_graphs
from moyforge.graph import ColoredGraph, Edge, disjoint_union
from moyforge.laurent import ZERO, quantum_binomial, quantum_integer
from moyforge.library import circle, figure2_graph, theta, web_closure
from moyforge.rewrite import Evaluator, IrreducibleGraph, evaluate
from moyforge.states import count_colorings

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("N", range(1, 9))
def test_circle(N):
    assert evaluate(circle(), N) == quantum_integer(N)


@pytest.mark.parametrize("N", range(2, 7))
def test_colored_circle_and_theta(N):
    assert evaluate(circle(2), N) == quantum_binomial(N, 2)
    assert evaluate(theta(), N) == quantum_integer(N) * quantum_integer(N - 1)


@pytest.mark.parametrize("N", range(2, 6))
def test_figure2_graph_closed_form(N):
    qn, q1, q2 = quantum_integer(N), quantum_integer(N - 1), quantum_integer(N - 2)
    expected = qn * q1 * q1 + quantum_integer(2) * qn * q1 * q2
    assert evaluate(figure2_graph(), N) == expected


def test_vanishing_above_n():
    assert evaluate(theta(1, 2), 2) == ZERO
    assert evaluate(circle(3), 2) == ZERO


def test_disjoint_union_multiplies():
    g = disjoint_union(theta(), figure2_graph(), circle())
    N = 4
    assert evaluate(g, N) == evaluate(theta(), N) * evaluate(figure2_graph(), N) * quantum_integer(N)


def test_ladders_match_counts_and_symmetry():
    for rungs in ([1, 1, 1], [1, 2, 2, 1], [2, 1, 2, 1, 2, 1], [1, 3, 2, 3, 1]):
        g = web_closure(4, rungs)
        for N in (2, 3, 4, 5):
            v = evaluate(g, N)
            assert v.eval_at_one() == count_colorings(g, N)
            assert v == v.bar()


def test_random_order_agrees_with_priority():
    gs = random_graphs(GenConfig(max_vertices=10, seed=21), 40)
    for i, g in enumerate(gs):
        for N in (2, 3):
            want = Evaluator(N).evaluate(g)
            assert Evaluator(N, order="random", seed=i).evaluate(g) == want


def test_three_colored_edges():
    gs = random_graphs(GenConfig(max_vertices=8, palette=(1, 2, 3), seed=5), 30)
    for g in gs:
        for N in (3, 4):
            assert evaluate(g, N).eval_at_one() == count_colorings(g, N)


def test_memo_and_stats():
    ev = Evaluator(3)
    ev.evaluate(figure2_graph())
    misses = ev.stats.memo_misses
    ev.evaluate(figure2_graph())
    assert ev.stats.memo_hits >= 1
    assert ev.stats.memo_misses == misses
    assert sum(ev.stats.moves.values()) > 0


def test_memo_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MOYFORGE_MEMO_CAP", "2")
    ev = Evaluator(4)
    ev.evaluate(web_closure(4, [1, 2, 3, 2, 1, 2]))
    assert ev.memo_cap == 2 and len(ev.memo) <= 2


def test_trace_records_moves():
    ev = Evaluator(3, trace=True)
    ev.evaluate(theta())
    rules = [s.rule for s in ev.trace]
    assert "MOY2[1,1]" in rules or "MOY1[1,1]" in rules
    assert all(isinstance(s.canonical, bytes) for s in ev.trace)


def test_parallel_terms_agree():
    g = web_closure(4, [1, 2, 3, 2, 1, 3, 2])
    ev = Evaluator(4, jobs=4)
    try:
        assert ev.evaluate(g) == Evaluator(4).evaluate(g)
    finally:
        ev.close()


def test_open_graph_rejected():
    g = ColoredGraph(edges={"e": Edge(1, "A", "B")}, legs=["A", "B"])
    with pytest.raises(ValueError):
        evaluate(g, 3)


def test_known_stuck_graph_raises_with_canonical_form():
    # a non-planar {1,2} graph of girth 6: no local relation applies
    g = ColoredGraph.from_json_obj(json.loads((DATA / "stuck12.json").read_text()))
    with pytest.raises(IrreducibleGraph) as info:
        evaluate(g, 3)
    assert info.value.canonical == g.canonical()
