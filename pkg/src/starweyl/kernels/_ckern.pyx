# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of kernels/pure.py.

Semantics are pinned by pure.py and the cross-backend agreement tests;
coefficients stay Python objects (exact scalars), the win is C-level loop,
dict and tuple handling.
"""


cdef inline tuple _tadd(tuple x, tuple y):
    cdef Py_ssize_t n = len(x)
    cdef Py_ssize_t i
    cdef list out = [None] * n
    for i in range(n):
        out[i] = x[i] + y[i]
    return tuple(out)


cdef inline tuple _dec(tuple t, Py_ssize_t i):
    cdef list out = list(t)
    out[i] = t[i] - 1
    return tuple(out)


def mul_terms(dict a, dict b):
    """Sparse product of two term dicts over the same generators."""
    cdef dict out = {}
    cdef tuple ea, eb, key
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = _tadd(ea, eb)
            v = ca * cb
            prev = out.get(key)
            if prev is not None:
                v = prev + v
            if v:
                out[key] = v
            elif prev is not None:
                del out[key]
    return out


def p_lambda_terms(list entries, dict t):
    """One application of P_Lambda to a tensor-square term dict."""
    cdef dict out = {}
    cdef tuple key, pair, ea, eb
    cdef Py_ssize_t i, j
    cdef object ai, bj
    for pair, c in t.items():
        ea = <tuple> pair[0]
        eb = <tuple> pair[1]
        for entry in entries:
            i = entry[0]
            j = entry[1]
            ai = ea[i]
            bj = eb[j]
            if ai and bj:
                key = (_dec(ea, i), _dec(eb, j))
                v = c * (entry[2] * (ai * bj))
                prev = out.get(key)
                if prev is not None:
                    v = prev + v
                if v:
                    out[key] = v
                elif prev is not None:
                    del out[key]
    return out


def star_terms(list entries, list zfacts, dict a, dict b, Py_ssize_t rmax):
    """Accumulated star product sum_r zfacts[r] * mu(P_Lambda^r(a (x) b))."""
    cdef dict t = {}
    cdef dict out = {}
    cdef tuple ea, eb, key, pair
    cdef Py_ssize_t r = 0
    for ea, ca in a.items():
        for eb, cb in b.items():
            t[(ea, eb)] = ca * cb
    while t:
        zf = zfacts[r]
        if zf:
            for pair, c in t.items():
                key = _tadd(<tuple> pair[0], <tuple> pair[1])
                v = c * zf
                prev = out.get(key)
                if prev is not None:
                    v = prev + v
                if v:
                    out[key] = v
                elif prev is not None:
                    del out[key]
        r += 1
        if r > rmax:
            break
        t = p_lambda_terms(entries, t)
    return out
