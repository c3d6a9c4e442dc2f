import pytest

from moyforge import states
from moyforge.generator import GenConfig, enumerate_graphs, random_graphs
from moyforge.library import circle, figure2_graph, theta
from moyforge.states import count_colorings, enumerate_colorings, naive_count
from oracles import brute_count


@pytest.mark.parametrize("N,expected", [(2, 2), (3, 24), (4, 84), (5, 200)])
def test_figure2_counts(N, expected):
    assert count_colorings(figure2_graph(), N) == expected


@pytest.mark.parametrize("N", range(1, 8))
def test_small_closed_forms(N):
    assert count_colorings(circle(), N) == N
    assert count_colorings(theta(), N) == N * (N - 1)


def test_counter_matches_brute_force_exhaustively():
    for g in enumerate_graphs(GenConfig(max_vertices=6, max_circles=1)):
        for N in (2, 3) if g.num_vertices() > 4 else (2, 3, 4):
            assert count_colorings(g, N) == brute_count(g.to_json_obj(), N)


def test_counter_matches_naive_on_random_graphs():
    gs = [g for g in random_graphs(GenConfig(max_vertices=8, palette=(1, 2, 3), seed=4), 80)
          if g.num_edges() <= 8]
    assert len(gs) >= 30
    for g in gs:
        for N in (3, 4):
            assert count_colorings(g, N) == naive_count(g, N)


def test_enumeration_lists_valid_colorings():
    g = figure2_graph()
    found = enumerate_colorings(g, 3)
    assert len(found) == 24
    for c in found:
        d = c.as_dict()
        for v in g.vertices:
            t, a, b = states._roles(g, v)
            assert not (d[a] & d[b]) and d[a] | d[b] == d[t]
    assert len(enumerate_colorings(g, 3, limit=5)) == 5


def test_pure_python_fallback_agrees(monkeypatch):
    gs = random_graphs(GenConfig(max_vertices=12, seed=9), 30)
    fast = [count_colorings(g, 4) for g in gs]
    monkeypatch.setattr(states, "_kernels", None)
    assert states.kernel_backend() == "python"
    assert [count_colorings(g, 4) for g in gs] == fast


def test_large_n_uses_python_path():
    # beyond the compiled kernel's limits the pure path still counts exactly
    assert count_colorings(theta(), 12) == 12 * 11
    for N in (10, 14):
        assert count_colorings(figure2_graph(), N) == N * (N - 1) ** 2 + 2 * N * (N - 1) * (N - 2)
