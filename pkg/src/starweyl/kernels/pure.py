"""Pure-Python reference implementations of the hot kernels.

All three functions work on plain dicts keyed by exponent tuples, with
coefficient objects that support +, *, unary bool (zero test) and
multiplication by int. The compiled backend (_ckern) implements public
functions with identical semantics; tests assert agreement.
"""


def _dec(t, i):
    return t[:i] + (t[i] - 1,) + t[i + 1 :]


def mul_terms(a, b):
    """Sparse product of two term dicts over the same generators."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            v = ca * cb
            prev = out.get(key)
            v = v if prev is None else prev + v
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out

def p_lambda_terms(entries, t):
    """One application of P_Lambda to a tensor-square term dict.

    entries: nonzero (i, j, lam_ij) triples of the bilinear form.
    t: dict[(exp_left, exp_right) -> coeff].
    Contracts one derivative on each side: coefficient picks up
    lam_ij * alpha_i * beta_j and both exponents drop by one unit.
    """
    out = {}
    for (ea, eb), c in t.items():
        for i, j, lam in entries:
            ai = ea[i]
            bj = eb[j]
            if ai and bj:
                key = (_dec(ea, i), _dec(eb, j))
                v = c * (lam * (ai * bj))
                prev = out.get(key)
                v = v if prev is None else prev + v
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out

def star_terms(entries, zfacts, a, b, rmax):
    """Accumulated star product sum_r zfacts[r] * mu(P_Lambda^r(a (x) b)).

    zfacts[r] must hold z^r / r! in the coefficient domain; rmax bounds the
    number of P_Lambda applications (min of the operand degrees).
    """
    t = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            t[(ea, eb)] = ca * cb
    out = {}
    r = 0
    while t:
        zf = zfacts[r]
        if zf:
            for (ea, eb), c in t.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                v = c * zf
                prev = out.get(key)
                v = v if prev is None else prev + v
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        r += 1
        if r > rmax:
            break
        t = p_lambda_terms(entries, t)
    return out
