import pytest

from moyforge.graph import validate
from moyforge.laurent import LaurentPoly, quantum_binomial, quantum_integer
from moyforge.library import circle, figure2_graph, theta, web_closure
from moyforge.rules import (
    apply_move,
    circle_rule,
    digon_rule,
    find_matches,
    loop_rule,
    moy3_rule,
    moy4_rule,
    rules_for,
    trick_rule,
)
from moyforge.states import count_colorings


def test_pattern_counts_on_small_graphs():
    assert len(find_matches(theta(), digon_rule(1, 1))) == 1
    assert len(find_matches(circle(), circle_rule(1))) == 1
    assert find_matches(circle(), moy3_rule()) == []
    # each 1-edge of theta closes a loop at the 2-edge
    assert len(find_matches(theta(), loop_rule(1, 1))) == 2


@pytest.mark.parametrize("N", range(2, 8))
def test_coefficients_at_one(N):
    assert circle_rule(1).coefficients_at_one(N) == [N]
    assert loop_rule(1, 1).coefficients_at_one(N) == [N - 1]
    assert digon_rule(1, 1).coefficients_at_one(N) == [2]
    assert moy3_rule().coefficients_at_one(N) == [N - 2, 1]
    assert moy4_rule().coefficients_at_one(N) == [1, 1]


def test_q_coefficients():
    N = 5
    assert loop_rule(1, 1).coefficients(N) == [quantum_integer(N - 1)]
    assert digon_rule(1, 1).coefficients(N) == [quantum_integer(2)]
    assert digon_rule(1, 2).coefficients(N) == [quantum_binomial(3, 1)]
    assert moy3_rule().coefficients(N) == [quantum_integer(N - 2), LaurentPoly.constant(1)]
    assert moy3_rule(2).coefficients(N) == [quantum_binomial(3, 2), quantum_binomial(3, 1)]


def test_moves_keep_graphs_valid_and_smaller():
    g = figure2_graph()
    for fam in rules_for(3).values():
        for rule in fam:
            for emb in find_matches(g, rule):
                for _, h in apply_move(g, rule, emb, 4):
                    assert validate(h, 4) == []
                    if rule.reducing:
                        assert (h.num_vertices(), h.num_edges()) < (g.num_vertices(), g.num_edges())


def test_theta_digon_reduces_to_circle():
    (c, h), = apply_move(theta(), digon_rule(1, 1), find_matches(theta(), digon_rule(1, 1))[0], 3)
    assert c == quantum_integer(2)
    assert h.num_vertices() == 0 and h.circles == (2,)


def test_trick_preserves_counts():
    from moyforge.generator import GenConfig, random_graphs

    seen = 0
    for g in random_graphs(GenConfig(max_vertices=8, palette=(1, 2, 3), seed=2), 40):
        for rule in rules_for(3)["TRICK"]:
            for emb in find_matches(g, rule):
                seen += 1
                (_, h), = apply_move(g, rule, emb, 4)
                assert (h.num_vertices(), h.num_edges()) == (g.num_vertices(), g.num_edges())
                for N in (3, 4):
                    assert count_colorings(h, N) == count_colorings(g, N)
    assert seen > 0
    assert trick_rule(1, 1, 1).label == "TRICK[1,1,1]"


def test_matches_deduplicated():
    # two distinct digons; swapping the parallel 1-edges gives no extra match
    g = web_closure(2, [1, 1])
    assert len(find_matches(g, digon_rule(1, 1))) == 2
