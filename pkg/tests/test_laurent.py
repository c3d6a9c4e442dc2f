from fractions import Fraction

import pytest

from moyforge.laurent import ONE, Q, ZERO, LaurentPoly, quantum_binomial, quantum_integer
from oracles import qbinom_at, qint_at

Q2 = Fraction(2)


def at(p: LaurentPoly, q: Fraction) -> Fraction:
    return sum((Fraction(c) * q**e for e, c in p.items()), Fraction(0))


@pytest.mark.parametrize("n", range(0, 12))
def test_quantum_integer_matches_definition(n):
    assert at(quantum_integer(n), Q2) == qint_at(n, Q2)
    assert quantum_integer(n).eval_at_one() == n


def test_quantum_integer_negative():
    assert quantum_integer(-3) == -quantum_integer(3)


@pytest.mark.parametrize("n", range(0, 9))
def test_quantum_binomial_matches_definition(n):
    for k in range(-1, n + 2):
        assert at(quantum_binomial(n, k), Q2) == qbinom_at(n, k, Q2)


def test_quantum_binomial_rejects_negative_top():
    with pytest.raises(ValueError):
        quantum_binomial(-1, 0)


def test_ring_axioms_on_samples():
    a = LaurentPoly({3: 2, -1: -1})
    b = LaurentPoly({0: 1, 2: 5, -4: 3})
    c = quantum_integer(4)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO
    assert a * ONE == a
    assert (a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one()


def test_bar_and_shift():
    p = LaurentPoly({2: 1, -1: 3})
    assert p.bar() == LaurentPoly({-2: 1, 1: 3})
    assert p.shift(2) == p * Q * Q
    assert p.bar().bar() == p


def test_exact_division():
    num = quantum_integer(6)
    assert num.exact_div(quantum_integer(3)) == LaurentPoly({3: 1, -3: 1})
    with pytest.raises(ArithmeticError):
        quantum_integer(5).exact_div(quantum_integer(2))


def test_pow_and_zero():
    assert (Q + Q.bar()) ** 2 == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert ZERO.is_zero() and not ZERO
    assert LaurentPoly({1: 0}) == ZERO


def test_json_roundtrip_and_key_order():
    p = quantum_integer(4)
    obj = p.to_json_obj()
    assert list(obj) == ["3", "1", "-1", "-3"]
    assert LaurentPoly.from_json(p.to_json()) == p


def test_big_coefficients_stay_exact():
    p = LaurentPoly({0: 3}) ** 80
    assert p[0] == 3**80
