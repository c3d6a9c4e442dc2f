import pytest

from moyforge.knot import (
    STANDARD_DIAGRAMS,
    PDError,
    braid_closure,
    crossing_coefficients,
    link_invariant,
    mirror,
    normalized,
    parse_pd,
    resolve,
)
from moyforge.laurent import LaurentPoly, quantum_integer
from moyforge.rewrite import Evaluator
from oracles import equal_up_to_monomial, jones_in_q


def pd(name):
    return parse_pd(STANDARD_DIAGRAMS[name])


def test_parse_basic():
    d = pd("trefoil")
    assert len(d.crossings) == 3 and d.writhe == 3 and d.components == 1
    assert parse_pd("O[1]").components == 1
    assert parse_pd(" X[4, 2, 5, 1] ;X[6,4,1,3];\nX[2,6,3,5] ").crossings == d.crossings
    assert parse_pd(d.to_text()) == d


@pytest.mark.parametrize("text", [
    "X[1,2,3]",
    "Z[1,2,3,4]",
    "X[1,1,1,2]",
    "X[4,2,5,1];X[6,4,1,3]",
    "X[0,1,1,2]",
    "O[0]",
    "X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]",
])
def test_parse_errors(text):
    with pytest.raises(PDError):
        parse_pd(text)


def test_resolve_term_count():
    assert len(resolve(pd("unknot"), 3)) == 1
    assert sum(1 for _ in resolve(pd("trefoil"), 3)) <= 8
    kink = resolve(pd("kink+"), 3)
    assert len(kink) == 2


@pytest.mark.parametrize("N", range(2, 7))
def test_unknot_and_kinks(N):
    assert link_invariant(pd("unknot"), N) == quantum_integer(N)
    for name in ("kink+", "kink-"):
        v = link_invariant(pd(name), N)
        ratio, rem = v.divmod(quantum_integer(N))
        assert rem.is_zero() and ratio.is_monomial()


@pytest.mark.parametrize("name", ["trefoil", "trefoil-left", "figure8", "hopf", "unlink-r2"])
def test_jones_oracle_at_n2(name):
    got = normalized(link_invariant(pd(name), 2), 2).to_json_obj()
    got = {int(k): v for k, v in got.items()}
    assert equal_up_to_monomial(got, jones_in_q(STANDARD_DIAGRAMS[name]))


def test_right_trefoil_exact_jones():
    v = normalized(link_invariant(pd("trefoil"), 2), 2)
    assert v == LaurentPoly({-2: 1, -6: 1, -8: -1})


@pytest.mark.parametrize("N", [2, 3, 4])
def test_mirror_is_bar(N):
    for name in ("trefoil", "figure8", "hopf"):
        d = pd(name)
        assert link_invariant(mirror(d), N) == link_invariant(d, N).bar()


def test_figure8_is_amphichiral():
    v = link_invariant(pd("figure8"), 3)
    assert v == v.bar()


@pytest.mark.parametrize("N", [2, 3, 4])
def test_braid_moves(N):
    ev = Evaluator(N)
    pairs = [((2, [1]), (2, [1, -1, 1])), ((3, [1, 2, 1]), (3, [2, 1, 2])),
             ((3, [1, -2, 1]), (3, [1, 2, -2, -2, 1]))]
    for (s1, w1), (s2, w2) in pairs:
        assert link_invariant(braid_closure(s1, w1), N, evaluator=ev) == \
            link_invariant(braid_closure(s2, w2), N, evaluator=ev)


def test_disjoint_union_multiplies():
    N = 3
    tref = STANDARD_DIAGRAMS["trefoil"]
    both = parse_pd(tref + ";O[1]")
    assert link_invariant(both, N) == link_invariant(parse_pd(tref), N) * quantum_integer(N)


def test_conventions_both_braid_invariant_but_only_a_matches_jones():
    a = braid_closure(3, [1, 2, 1])
    b = braid_closure(3, [2, 1, 2])
    for conv in ("A", "B"):
        assert link_invariant(a, 3, conv) == link_invariant(b, 3, conv)
    text = STANDARD_DIAGRAMS["trefoil"]
    oracle = jones_in_q(text)

    def as_dict(conv):
        v = normalized(link_invariant(parse_pd(text), 2, conv), 2)
        return {int(k): c for k, c in v.to_json_obj().items()}

    assert equal_up_to_monomial(as_dict("A"), oracle)
    assert not equal_up_to_monomial(as_dict("B"), oracle)


def test_crossing_coefficients():
    s, w = crossing_coefficients(1, 3)
    assert s == LaurentPoly({-2: 1}) and w == LaurentPoly({-3: -1})
    s, w = crossing_coefficients(-1, 3)
    assert s == LaurentPoly({2: 1}) and w == LaurentPoly({3: -1})
    assert crossing_coefficients(1, 3, "B") == crossing_coefficients(1, 3)[::-1]
    with pytest.raises(ValueError):
        crossing_coefficients(1, 3, "C")


def test_parallel_evaluation_matches():
    d = pd("figure8")
    ev = Evaluator(3, jobs=3)
    try:
        assert link_invariant(d, 3, evaluator=ev) == link_invariant(d, 3)
    finally:
        ev.close()
