"""Exact Laurent polynomials in one variable ``q`` with integer coefficients.

Values are immutable and hashable.  The zero polynomial has an empty
coefficient map; no stored coefficient is ever zero.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "add",
    "mul",
    "eval_at_one",
    "quantum_integer",
    "quantum_binomial",
    "Q",
    "ONE",
    "ZERO",
]

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError(f"exponent and coefficient must be int, got {e!r}: {c!r}")
            acc[e] = acc.get(e, 0) + c
        self._coeffs = {e: c for e, c in acc.items() if c}
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def _raw(cls, coeffs: dict[int, int]) -> LaurentPoly:
        # trusted path: caller guarantees normalized int -> int map
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    # -- accessors -----------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def items(self):
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def valuation(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self._coeffs)

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def eval_at_one(self) -> int:
        return sum(self._coeffs.values())

    def evaluate(self, q: complex) -> complex:
        return sum(c * q**e for e, c in self._coeffs.items())

    def bar(self) -> LaurentPoly:
        """Image under the involution q -> 1/q."""
        return LaurentPoly._raw({-e: c for e, c in self._coeffs.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q**k."""
        return LaurentPoly._raw({e + k: c for e, c in self._coeffs.items()})

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have inverses")
            (e, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient has no inverse")
            return LaurentPoly({-e * (-n): c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Long division over the integers after clearing powers of ``q``.

        Both operands are shifted to ordinary polynomials with nonzero
        constant term; the remainder is zero exactly when the division is
        exact in Z[q, 1/q].  Returns ``(quotient, remainder)`` with
        ``self == quotient*divisor + remainder``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO, ZERO
        vd = divisor.valuation()
        va = self.valuation()
        d = [divisor[vd + i] for i in range(divisor.degree() - vd + 1)]
        a = [self[va + i] for i in range(self.degree() - va + 1)]
        lead = d[-1]
        quot = [0] * max(len(a) - len(d) + 1, 0)
        for i in range(len(a) - len(d), -1, -1):
            c = a[i + len(d) - 1]
            if c == 0:
                continue
            if c % lead:
                break
            k = c // lead
            quot[i] = k
            for j, dc in enumerate(d):
                a[i + j] -= k * dc
        shift = va - vd
        q_poly = LaurentPoly({shift + i: c for i, c in enumerate(quot)})
        r_poly = LaurentPoly({va + i: c for i, c in enumerate(a)})
        return q_poly, r_poly

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero():
            raise ArithmeticError(f"inexact division of {self} by {divisor}")
        return quotient

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    # -- serialization -------------------------------------------------
    def to_json_obj(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._coeffs.items(), reverse=True)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, int]) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in obj.items()})

    @classmethod
    def from_json(cls, text: str) -> LaurentPoly:
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        return f"LaurentPoly({self.to_json_obj()})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def eval_at_one(a: LaurentPoly) -> int:
    return a.eval_at_one()


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentPoly:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n); [0] = 0.

    Negative ``n`` follows the usual convention [-n] = -[n].
    """
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly._raw({n - 1 - 2 * i: 1 for i in range(n)})


@lru_cache(maxsize=None)
def quantum_binomial(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n choose k], by exact division of quantum integers.

    Outside ``0 <= k <= n`` the value is 0 (no subsets of that size).
    """
    if n < 0:
        raise ValueError(f"quantum_binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * quantum_integer(n - i + 1)
        den = den * quantum_integer(i)
    return num.exact_div(den)
