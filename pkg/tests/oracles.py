"""Independent reference implementations used only by the tests.

Nothing here imports the evaluation engine, the rule tables or the
counting kernel; polynomials are plain ``{exponent: coeff}`` dicts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def qint_at(n: int, q: Fraction) -> Fraction:
    """[n] evaluated at a rational ``q`` straight from the definition."""
    return (q**n - q**-n) / (q - 1 / q)


def qbinom_at(n: int, k: int, q: Fraction) -> Fraction:
    if k < 0 or k > n:
        return Fraction(0)
    num = den = Fraction(1)
    for i in range(k):
        num *= qint_at(n - i, q)
        den *= qint_at(i + 1, q)
    return num / den


def brute_count(graph_json: dict, N: int) -> int:
    """Subset colorings by trying every subset on every edge.

    Works on the JSON form: each ``k``-colored edge gets a ``k``-subset of
    ``{0..N-1}``; at each vertex the two thin edges must be disjoint with
    union the thick one.  Each ``k``-colored circle contributes ``C(N, k)``.
    """
    from math import comb

    edges = graph_json["edges"]
    kinds = {v["id"]: v["kind"] for v in graph_json["vertices"]}
    ins = {v: [] for v in kinds}
    outs = {v: [] for v in kinds}
    for i, e in enumerate(edges):
        outs[e["tail"]].append(i)
        ins[e["head"]].append(i)
    choices = [list(itertools.combinations(range(N), e["color"])) for e in edges]
    total = 0
    for pick in itertools.product(*choices):
        sets = [frozenset(p) for p in pick]
        ok = True
        for v, kind in kinds.items():
            thin, thick = (ins[v], outs[v]) if kind == "merge" else (outs[v], ins[v])
            (x, y), (t,) = thin, thick
            if sets[x] & sets[y] or sets[x] | sets[y] != sets[t]:
                ok = False
                break
        total += ok
    for c in graph_json.get("circles", []):
        total *= comb(N, c)
    return total


# ----------------------------------------------------------------------
# Kauffman bracket


def _pmul(a: dict, b: dict) -> dict:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _loops(pairs: list[tuple[int, int]]) -> int:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(x) for x in parent})


def parse_crossings(text: str) -> tuple[list[tuple[int, int, int, int]], list[int], int]:
    """Arc tuples, writhe signs and extra circles of PD text."""
    tuples, signs, circles = [], [], 0
    for tok in text.replace("\n", ";").split(";"):
        tok = tok.strip()
        if not tok:
            continue
        nums = [int(x) for x in tok[2:-1].split(",")]
        if tok[0] == "O":
            circles += nums[0]
        else:
            tuples.append(tuple(nums))
            signs.append(1 if tok[0] == "X" else -1)
    return tuples, signs, circles


def kauffman_bracket(text: str) -> dict:
    """``<D>`` in the variable ``A`` with ``<O> = 1``.

    A crossing ``[a,b,c,d]`` (counterclockwise from the incoming
    under-arc) has its A-smoothing joining ``a-b`` and ``c-d``: the over
    strand, turned counterclockwise, sweeps the two regions that the
    A-smoothing connects, leaving the corners between ``a, b`` and
    ``c, d`` intact.
    """
    tuples, _, circles = parse_crossings(text)
    delta = {2: -1, -2: -1}
    total: dict[int, int] = {}
    for state in itertools.product((0, 1), repeat=len(tuples)):
        pairs = []
        for (a, b, c, d), s in zip(tuples, state):
            pairs += [(a, b), (c, d)] if s == 0 else [(a, d), (b, c)]
        loops = (_loops(pairs) if pairs else 1) + circles - (0 if pairs else 1)
        n_a = state.count(0)
        term = {n_a - (len(state) - n_a): 1}
        for _ in range(loops - 1):
            term = _pmul(term, delta)
        total = _padd(total, term)
    return total


def jones_in_q(text: str) -> dict:
    """Jones polynomial with ``t = q**-2`` (so ``A = q**(1/2)``).

    ``V = (-A^3)^(-w) <D>``; exponents of ``A`` are halved into ``q``.
    """
    _, signs, _ = parse_crossings(text)
    w = sum(signs)
    f = {-3 * w: -1 if w % 2 else 1}
    v = _pmul(f, kauffman_bracket(text))
    if any(e % 2 for e in v):
        raise ValueError("odd power of A; not a link diagram?")
    return {e // 2: c for e, c in v.items()}


def equal_up_to_monomial(a: dict, b: dict) -> bool:
    """``a == +-q^k b`` for some ``k``."""
    if not a or not b or len(a) != len(b):
        return a == b
    shift = max(a) - max(b)
    for sign in (1, -1):
        if all(a.get(e + shift) == sign * c for e, c in b.items()):
            return True
    return False
