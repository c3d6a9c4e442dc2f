# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_dp.count_plan`` (same plan format, same result).

States are packed into 64-bit words, so callers must ensure
``N * frontier_width <= 64``; per-vertex candidate buffers hold 4096
entries, enough for ``N <= 9``.
"""

from libc.stdint cimport uint64_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline uint64_t _get(uint64_t state, int pos, int N, uint64_t full) nogil:
    return (state >> (pos * N)) & full


def count_plan(int N, plan):
    cdef uint64_t full = (<uint64_t>1 << N) - 1
    cdef dict states = {0: 1}
    cdef dict nxt
    cdef int tpos, apos, bpos, tc, ac, bc, i, code, nout
    cdef int outs[64]
    cdef uint64_t state, t, a, b, key, m, sub, sub2, rest
    cdef uint64_t tms[4096]
    cdef uint64_t ams[4096]
    cdef uint64_t bms[4096]
    cdef int k, nsol
    cdef bint tk, ak, bk
    for step in plan:
        tpos, apos, bpos, tc, ac, bc, out = step
        nout = len(out)
        for i in range(nout):
            outs[i] = out[i]
        nxt = {}
        for pystate, count in states.items():
            state = pystate
            tk = tpos >= 0
            ak = apos >= 0
            bk = bpos >= 0
            t = _get(state, tpos, N, full) if tk else 0
            a = _get(state, apos, N, full) if ak else 0
            b = _get(state, bpos, N, full) if bk else 0
            nsol = 0
            if ak and bk:
                if (a & b) == 0 and (not tk or t == (a | b)):
                    tms[0] = a | b; ams[0] = a; bms[0] = b; nsol = 1
            elif tk and ak:
                if (a & ~t) == 0:
                    tms[0] = t; ams[0] = a; bms[0] = t ^ a; nsol = 1
            elif tk and bk:
                if (b & ~t) == 0:
                    tms[0] = t; ams[0] = t ^ b; bms[0] = b; nsol = 1
            elif tk:
                sub = t
                while True:
                    if _popcount(sub) == ac:
                        tms[nsol] = t; ams[nsol] = sub; bms[nsol] = t ^ sub; nsol += 1
                    if sub == 0:
                        break
                    sub = (sub - 1) & t
            elif ak or bk:
                rest = full & ~(a if ak else b)
                sub = rest
                while True:
                    if _popcount(sub) == (bc if ak else ac):
                        if ak:
                            tms[nsol] = a | sub; ams[nsol] = a; bms[nsol] = sub
                        else:
                            tms[nsol] = b | sub; ams[nsol] = sub; bms[nsol] = b
                        nsol += 1
                    if sub == 0:
                        break
                    sub = (sub - 1) & rest
            else:
                sub = full
                while True:
                    if _popcount(sub) == ac:
                        rest = full & ~sub
                        sub2 = rest
                        while True:
                            if _popcount(sub2) == bc:
                                tms[nsol] = sub | sub2; ams[nsol] = sub; bms[nsol] = sub2; nsol += 1
                            if sub2 == 0:
                                break
                            sub2 = (sub2 - 1) & rest
                    if sub == 0:
                        break
                    sub = (sub - 1) & full
            for k in range(nsol):
                key = 0
                for i in range(nout):
                    code = outs[i]
                    if code >= 0:
                        m = _get(state, code, N, full)
                    elif code == -1:
                        m = tms[k]
                    elif code == -2:
                        m = ams[k]
                    else:
                        m = bms[k]
                    key |= m << (i * N)
                pykey = key
                nxt[pykey] = nxt.get(pykey, 0) + count
        states = nxt
        if not states:
            return 0
    return sum(states.values())
