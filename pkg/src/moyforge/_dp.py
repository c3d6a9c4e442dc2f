"""Pure-Python frontier dynamic program for subset colorings.

The state after each step packs the masks of the current frontier edges into
one integer, ``N`` bits per edge.  A step processes one vertex with edges
``T`` (the sum side) and ``A``, ``B`` (the parts): each is either read from
the incoming state (position >= 0) or chosen fresh (position -1).  The
outgoing state lists frontier slots as codes: ``>= 0`` copies a position of
the incoming state, ``-1``/``-2``/``-3`` stores the mask of ``T``/``A``/``B``.
"""

from __future__ import annotations


def _submasks(mask: int, size: int):
    sub = mask
    while True:
        if sub.bit_count() == size:
            yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def count_plan(N: int, plan) -> int:
    full = (1 << N) - 1
    states = {0: 1}
    for tpos, apos, bpos, tc, ac, bc, out in plan:
        nxt: dict[int, int] = {}
        for state, count in states.items():
            t = (state >> (tpos * N)) & full if tpos >= 0 else -1
            a = (state >> (apos * N)) & full if apos >= 0 else -1
            b = (state >> (bpos * N)) & full if bpos >= 0 else -1
            for tm, am, bm in _complete(full, t, a, b, tc, ac, bc):
                key = 0
                for i, code in enumerate(out):
                    if code >= 0:
                        m = (state >> (code * N)) & full
                    elif code == -1:
                        m = tm
                    elif code == -2:
                        m = am
                    else:
                        m = bm
                    key |= m << (i * N)
                nxt[key] = nxt.get(key, 0) + count
        states = nxt
        if not states:
            return 0
    return sum(states.values())


def _complete(full, t, a, b, tc, ac, bc):
    """All (T, A, B) with A, B disjoint, A|B == T, extending the known masks."""
    if a >= 0 and b >= 0:
        if a & b:
            return
        if t >= 0 and t != a | b:
            return
        yield a | b, a, b
        return
    if t >= 0:
        if a >= 0:
            if a & ~t:
                return
            yield t, a, t ^ a
            return
        if b >= 0:
            if b & ~t:
                return
            yield t, t ^ b, b
            return
        for sub in _submasks(t, ac):
            yield t, sub, t ^ sub
        return
    if a >= 0:
        for sub in _submasks(full & ~a, bc):
            yield a | sub, a, sub
        return
    if b >= 0:
        for sub in _submasks(full & ~b, ac):
            yield b | sub, sub, b
        return
    for am in _submasks(full, ac):
        for bm in _submasks(full & ~am, bc):
            yield am | bm, am, bm
