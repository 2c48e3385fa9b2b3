"""Linear Poisson structures: Lie algebras, the rescaled universal envelope,
PBW symmetrization, the Gutt star product and BCH machinery.

The envelope carries the relations xi_i xi_j - xi_j xi_i = i*h*[xi_i, xi_j],
so the PBW symmetrizer sigma (plain 1/k! normalisation) is degree-preserving
and invertible order by order. Everything internal runs on exact Gaussian
rationals with the h-power implied by the weight grading
w = word length + h-order, which every rewrite preserves; h only
materialises at the API boundary. See docs/conventions.md for the grading
argument and the exp/BCH bookkeeping.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import IncompatibleError, StarWeylError, TruncationError
from .parse import RESERVED_NAMES
from .poly import Generators, Polynomial
from .scalars import (
    DEFAULT_TRUNCATION,
    FormalScalar,
    GR_I,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
)


def _gr(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants.

    brackets[(i, j)] is the coefficient vector of [xi_i, xi_j]; antisymmetry
    and the Jacobi identity are verified at construction. coords names the
    polynomial coordinates on the dual (default: lowercased basis names).
    """

    __slots__ = ("dim", "basis", "coords", "_c", "_cache_leftmul",
                 "_cache_sym", "_cache_monomul", "_cache_guttmono")

    def __init__(self, basis, brackets, coords=None):
        basis = tuple(basis)
        dim = len(basis)
        if dim == 0:
            raise ValueError("need at least one basis element")
        if len(set(basis)) != dim:
            raise ValueError("basis names must be distinct")
        # dense c[i][j] -> tuple of GaussianRational over k
        zero_vec = tuple(GR_ZERO for _ in range(dim))
        c = [[None] * dim for _ in range(dim)]
        for (i, j), vec in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i},{j}) out of range")
            vec = tuple(_gr(v) for v in vec)
            if len(vec) != dim:
                raise ValueError("bracket coefficient vector length mismatch")
            if c[i][j] is not None and c[i][j] != vec:
                raise ValueError(f"conflicting bracket for ({i},{j})")
            c[i][j] = vec
            neg = tuple(-v for v in vec)
            if c[j][i] is not None and c[j][i] != neg:
                raise ValueError(
                    f"brackets for ({i},{j}) and ({j},{i}) are not antisymmetric"
                )
            c[j][i] = neg
        for i in range(dim):
            for j in range(dim):
                if c[i][j] is None:
                    c[i][j] = zero_vec
        for i in range(dim):
            if any(c[i][i]):
                raise ValueError(f"[x_{i}, x_{i}] must vanish")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_c", tuple(tuple(row) for row in c))
        if coords is None:
            coords = tuple(nm.lower() for nm in basis)
        coords = tuple(coords)
        if len(set(coords)) != dim:
            raise ValueError("coordinate names must be distinct")
        for nm in coords:
            if nm in RESERVED_NAMES:
                # the expression grammar owns these identifiers; a coordinate
                # with either name could never be parsed or printed faithfully
                raise ValueError(
                    f"coordinate name {nm!r} is reserved by the expression "
                    "grammar; pass coords= explicitly"
                )
        object.__setattr__(self, "coords", Generators(coords))
        self._check_jacobi()
        object.__setattr__(self, "_cache_leftmul", {})
        object.__setattr__(self, "_cache_sym", {})
        object.__setattr__(self, "_cache_monomul", {})
        object.__setattr__(self, "_cache_guttmono", {})

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def _check_jacobi(self):
        d = self.dim
        c = self._c
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    for s in range(d):
                        acc = GR_ZERO
                        for r in range(d):
                            acc = acc + (
                                c[i][j][r] * c[r][k][s]
                                + c[j][k][r] * c[r][i][s]
                                + c[k][i][r] * c[r][j][s]
                            )
                        if acc:
                            raise ValueError(
                                "structure constants violate the Jacobi identity "
                                f"at triple ({i},{j},{k})"
                            )

    # -- linear algebra ------------------------------------------------------
    def bracket_vec(self, u, v):
        """[u, v] for coefficient vectors; returns a GaussianRational tuple."""
        d = self.dim
        u = [_gr(x) for x in u]
        v = [_gr(x) for x in v]
        out = [GR_ZERO] * d
        c = self._c
        for i in range(d):
            if not u[i]:
                continue
            for j in range(d):
                if not v[j]:
                    continue
                uv = u[i] * v[j]
                row = c[i][j]
                for k in range(d):
                    if row[k]:
                        out[k] = out[k] + uv * row[k]
        return tuple(out)

    def basis_vector(self, which):
        k = which if isinstance(which, int) else self.basis.index(which)
        return tuple(GR_ONE if i == k else GR_ZERO for i in range(self.dim))

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.coords == other.coords
            and self._c == other._c
        )

    __hash__ = None

    def __repr__(self):
        return f"<LieAlgebra dim={self.dim} basis={list(self.basis)}>"

    # -- JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vec = self._c[i][j]
                if any(vec):
                    brackets.append(
                        {"i": i, "j": j, "coeffs": [v.canonical() for v in vec]}
                    )
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "coords": list(self.coords.names),
            "brackets": brackets,
        }

    @classmethod
    def from_json(cls, d: dict) -> "LieAlgebra":
        from .parse import parse_expression, eval_constant

        dim = d["dim"]
        basis = d["basis"]
        if len(basis) != dim:
            raise ValueError("dim does not match basis length")
        brackets = {}
        for b in d.get("brackets", []):
            vec = []
            for s in b["coeffs"]:
                if isinstance(s, str):
                    fs = eval_constant(parse_expression(s), "formal", 0)
                    vec.append(fs.coefficient(0))
                else:
                    vec.append(_gr(s))
            key = (b["i"], b["j"])
            if key in brackets or (key[1], key[0]) in brackets:
                raise ValueError(f"duplicate bracket entry for {key}")
            brackets[key] = tuple(vec)
        return cls(basis, brackets, coords=d.get("coords"))

    # -- internal raw envelope arithmetic -----------------------------------------
    # Raw dicts map PBW monomials (sorted index tuples) to GaussianRational;
    # the h-order of a term is implied by the weight of the enclosing
    # computation minus the monomial length, and each implied i*h picked up a
    # factor i into the stored coefficient.

    def _leftmul_raw(self, j, mono):
        """xi_j * xi_mono as a raw dict (weight len(mono) + 1)."""
        key = (j, mono)
        hit = self._cache_leftmul.get(key)
        if hit is not None:
            return hit
        if not mono or j <= mono[0]:
            out = {(j,) + mono: GR_ONE}
        else:
            a = mono[0]
            rest = mono[1:]
            out = {}
            # xi_j xi_a = xi_a xi_j + i*h [xi_j, xi_a]
            for m1, g1 in self._leftmul_raw(j, rest).items():
                for m2, g2 in self._leftmul_raw(a, m1).items():
                    g = g1 * g2
                    prev = out.get(m2)
                    g = g if prev is None else prev + g
                    if g:
                        out[m2] = g
                    else:
                        out.pop(m2, None)
            row = self._c[j][a]
            for k in range(self.dim):
                ck = row[k]
                if not ck:
                    continue
                f = GR_I * ck
                for m1, g1 in self._leftmul_raw(k, rest).items():
                    g = f * g1
                    prev = out.get(m1)
                    g = g if prev is None else prev + g
                    if g:
                        out[m1] = g
                    else:
                        out.pop(m1, None)
        self._cache_leftmul[key] = out
        return out

    def _mono_mul_raw(self, m1, m2):
        """xi_m1 * xi_m2 as a raw dict (weight len(m1) + len(m2))."""
        key = (m1, m2)
        hit = self._cache_monomul.get(key)
        if hit is not None:
            return hit
        out = {m2: GR_ONE}
        for j in reversed(m1):
            new = {}
            for m, g in out.items():
                for mm, gg in self._leftmul_raw(j, m).items():
                    v = g * gg
                    prev = new.get(mm)
                    v = v if prev is None else prev + v
                    if v:
                        new[mm] = v
                    else:
                        new.pop(mm, None)
            out = new
        self._cache_monomul[key] = out
        return out

    def _sym_raw(self, alpha):
        """sigma(x^alpha) as a raw dict (weight |alpha|).

        Recursion sigma(x^a) = (1/k) sum_j a_j xi_j sigma(x^(a - e_j)).
        """
        hit = self._cache_sym.get(alpha)
        if hit is not None:
            return hit
        k = sum(alpha)
        if k == 0:
            out = {(): GR_ONE}
        else:
            out = {}
            inv_k = Fraction(1, k)
            for j in range(self.dim):
                aj = alpha[j]
                if not aj:
                    continue
                sub = alpha[:j] + (aj - 1,) + alpha[j + 1 :]
                f = GaussianRational(aj * inv_k)
                for m, g in self._sym_raw(sub).items():
                    for mm, gg in self._leftmul_raw(j, m).items():
                        v = f * g * gg
                        prev = out.get(mm)
                        v = v if prev is None else prev + v
                        if v:
                            out[mm] = v
                        else:
                            out.pop(mm, None)
        self._cache_sym[alpha] = out
        return out

    def _sym_inverse_raw(self, u_raw):
        """Invert sigma on a raw dict; returns dict[exponent tuple -> g].

        u_raw must be weight-homogeneous; sigma is unit upper triangular
        against word length, so greedy elimination from the longest monomial
        terminates.
        """
        d = self.dim
        work = dict(u_raw)
        out = {}
        while work:
            m = max(work, key=lambda w: (len(w), w))
            g = work.pop(m)
            alpha = [0] * d
            for idx in m:
                alpha[idx] += 1
            alpha = tuple(alpha)
            prev = out.get(alpha)
            s = g if prev is None else prev + g
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
            for mm, gg in self._sym_raw(alpha).items():
                if mm == m:
                    # unit-triangular: leading coefficient is exactly 1 and
                    # already left the worklist with the pop above
                    if gg != GR_ONE:
                        raise StarWeylError("PBW leading coefficient is not 1")
                    continue
                v = g * gg
                prev = work.get(mm)
                v = (-v) if prev is None else prev - v
                if v:
                    work[mm] = v
                else:
                    work.pop(mm, None)
        return out

    def _gutt_mono_raw(self, alpha, beta):
        """x^alpha *_G x^beta as dict[exponent -> g] (weight |alpha|+|beta|)."""
        key = (alpha, beta)
        hit = self._cache_guttmono.get(key)
        if hit is not None:
            return hit
        u = {}
        sa = self._sym_raw(alpha)
        sb = self._sym_raw(beta)
        for m1, g1 in sa.items():
            for m2, g2 in sb.items():
                f = g1 * g2
                for m, g in self._mono_mul_raw(m1, m2).items():
                    v = f * g
                    prev = u.get(m)
                    v = v if prev is None else prev + v
                    if v:
                        u[m] = v
                    else:
                        u.pop(m, None)
        out = self._sym_inverse_raw(u)
        self._cache_guttmono[key] = out
        return out


def heisenberg3() -> LieAlgebra:
    """Basis (X, Y, Z) with [X, Y] = Z, Z central."""
    return LieAlgebra(
        ("X", "Y", "Z"), {(0, 1): (0, 0, 1)}
    )


def sl2() -> LieAlgebra:
    """Basis (H, E, F) with [H,E] = 2E, [H,F] = -2F, [E,F] = H.

    Dual coordinates are (x, y, z) with x dual to H, y to E, z to F;
    the lowercase default would shadow the formal parameter h.
    """
    return LieAlgebra(
        ("H", "E", "F"),
        {
            (0, 1): (0, 2, 0),
            (0, 2): (0, 0, -2),
            (1, 2): (1, 0, 0),
        },
        coords=("x", "y", "z"),
    )


class UEElement:
    """Element of the rescaled universal envelope in PBW normal form.

    terms maps sorted index tuples to FormalScalar coefficients.
    """

    __slots__ = ("algebra", "trunc", "terms")

    def __init__(self, algebra, terms=None, trunc=DEFAULT_TRUNCATION, _clean=False):
        if terms is None:
            terms = {}
        if _clean:
            cl = terms
        else:
            cl = {}
            for m, c in terms.items():
                m = tuple(m)
                if any(not (0 <= idx < algebra.dim) for idx in m):
                    raise ValueError(f"monomial index out of range in {m!r}")
                if tuple(sorted(m)) != m:
                    raise ValueError(f"monomial {m!r} is not in PBW order")
                if not isinstance(c, FormalScalar):
                    c = FormalScalar.constant(c, trunc)
                elif c.trunc != trunc:
                    c = c.truncate(trunc)
                if c:
                    prev = cl.get(m)
                    s = c if prev is None else prev + c
                    if s:
                        cl[m] = s
                    else:
                        del cl[m]
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "terms", cl)

    def __setattr__(self, name, value):
        raise AttributeError("UEElement is immutable")

    @classmethod
    def zero(cls, algebra, trunc=DEFAULT_TRUNCATION):
        return cls(algebra, {}, trunc, _clean=True)

    @classmethod
    def generator(cls, algebra, which, trunc=DEFAULT_TRUNCATION):
        k = which if isinstance(which, int) else algebra.basis.index(which)
        return cls(algebra, {(k,): 1}, trunc)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.algebra != other.algebra:
            raise IncompatibleError("envelope elements over different algebras")

    def __add__(self, other):
        if not isinstance(other, UEElement):
            return NotImplemented
        self._check(other)
        n = min(self.trunc, other.trunc)
        out = {m: c.truncate(n) if c.trunc != n else c for m, c in self.terms.items()}
        out = {m: c for m, c in out.items() if c}
        for m, c in other.terms.items():
            c = c.truncate(n) if c.trunc != n else c
            prev = out.get(m)
            s = c if prev is None else prev + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return UEElement(self.algebra, out, n, _clean=True)

    def __neg__(self):
        return UEElement(
            self.algebra, {m: -c for m, c in self.terms.items()}, self.trunc,
            _clean=True
        )

    def __sub__(self, other):
        if not isinstance(other, UEElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, FormalScalar)):
            out = {}
            for m, c in self.terms.items():
                v = c * other
                if v:
                    out[m] = v
            return UEElement(self.algebra, out, self.trunc, _clean=True)
        if not isinstance(other, UEElement):
            return NotImplemented
        self._check(other)
        n = min(self.trunc, other.trunc)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                w = len(m1) + len(m2)
                for m, g in self.algebra._mono_mul_raw(m1, m2).items():
                    r = w - len(m)
                    if r > n:
                        continue
                    v = c * FormalScalar({r: g}, n)
                    if not v:
                        continue
                    prev = out.get(m)
                    v = v if prev is None else prev + v
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return UEElement(self.algebra, out, n, _clean=True)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, UEElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def _term_text(self, m, c):
        from .scalars import _coeff_factor

        counts = {}
        for idx in m:
            counts[idx] = counts.get(idx, 0) + 1
        mono = []
        for idx in sorted(counts):
            nm = self.algebra.basis[idx]
            k = counts[idx]
            mono.append(nm if k == 1 else f"{nm}^{k}")
        mono_txt = "*".join(mono)
        orders = sorted(c.coeffs)
        if len(orders) > 1:
            txt = f"({c.canonical()})"
            return False, f"{txt}*{mono_txt}" if mono_txt else txt
        r = orders[0]
        neg, mag = _coeff_factor(c.coeffs[r])
        factors = []
        if mag is not None:
            factors.append(mag)
        if r == 1:
            factors.append("h")
        elif r > 1:
            factors.append(f"h^{r}")
        if mono_txt:
            factors.append(mono_txt)
        if not factors:
            factors.append("1")
        return neg, "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]), reverse=True
        )
        chunks = []
        for idx, (m, c) in enumerate(items):
            neg, text = self._term_text(m, c)
            if idx == 0:
                chunks.append(f"-{text}" if neg else text)
            else:
                chunks.append(f" - {text}" if neg else f" + {text}")
        return "".join(chunks)

    def __repr__(self):
        return f"<UEElement {self}>"


def ue_normal_order(algebra: LieAlgebra, word, trunc=DEFAULT_TRUNCATION,
                    strategy="leftmost") -> UEElement:
    """Straighten an arbitrary word of generator indices into PBW form.

    strategy picks which descent to rewrite first ("leftmost" or
    "rightmost"); confluence makes the result identical.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    word = tuple(
        w if isinstance(w, int) else algebra.basis.index(w) for w in word
    )
    if any(not (0 <= idx < algebra.dim) for idx in word):
        raise ValueError("word index out of range")
    one = FormalScalar.constant(1, trunc)
    ih = FormalScalar({1: GR_I}, trunc)
    work = [(word, one)]
    out = {}
    while work:
        w, c = work.pop()
        if not c:
            continue
        pos = -1
        rng = range(len(w) - 1)
        if strategy == "rightmost":
            rng = reversed(rng)
        for t in rng:
            if w[t] > w[t + 1]:
                pos = t
                break
        if pos < 0:
            prev = out.get(w)
            s = c if prev is None else prev + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
            continue
        a, b = w[pos], w[pos + 1]
        swapped = w[:pos] + (b, a) + w[pos + 2 :]
        work.append((swapped, c))
        row = algebra._c[a][b]
        for k in range(algebra.dim):
            if row[k]:
                shorter = w[:pos] + (k,) + w[pos + 2 :]
                work.append((shorter, c * (ih * row[k])))
    return UEElement(algebra, out, trunc, _clean=True)


def _check_coords(algebra: LieAlgebra, f: Polynomial):
    if f.gens != algebra.coords:
        raise IncompatibleError(
            f"polynomial over {f.gens.names}, expected coordinates "
            f"{algebra.coords.names}"
        )
    if f.domain != "formal":
        raise IncompatibleError("envelope operations need the formal domain")


def pbw_symmetrize(algebra: LieAlgebra, f: Polynomial) -> UEElement:
    """sigma(f): symmetric algebra -> envelope, 1/k! symmetrization."""
    _check_coords(algebra, f)
    n = f.trunc
    out = {}
    for alpha, c in f.terms.items():
        w = sum(alpha)
        for m, g in algebra._sym_raw(alpha).items():
            r = w - len(m)
            if r > n:
                continue
            v = c * FormalScalar({r: g}, n)
            if not v:
                continue
            prev = out.get(m)
            v = v if prev is None else prev + v
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return UEElement(algebra, out, n, _clean=True)


def pbw_symmetrize_inverse(algebra: LieAlgebra, u: UEElement) -> Polynomial:
    """sigma^{-1}: envelope -> symmetric algebra, inverse of pbw_symmetrize."""
    if u.algebra != algebra:
        raise IncompatibleError("envelope element over a different algebra")
    n = u.trunc
    d = algebra.dim
    work = dict(u.terms)
    out = {}
    while work:
        m = max(work, key=lambda w: (len(w), w))
        c = work.pop(m)
        if not c:
            continue
        alpha = [0] * d
        for idx in m:
            alpha[idx] += 1
        alpha = tuple(alpha)
        prev = out.get(alpha)
        s = c if prev is None else prev + c
        if s:
            out[alpha] = s
        else:
            out.pop(alpha, None)
        w = sum(alpha)
        for mm, gg in algebra._sym_raw(alpha).items():
            if mm == m:
                continue
            r = w - len(mm)
            if r > n:
                continue
            v = c * FormalScalar({r: gg}, n)
            if not v:
                continue
            prev = work.get(mm)
            v = (-v) if prev is None else prev - v
            if v:
                work[mm] = v
            else:
                work.pop(mm, None)
    return Polynomial(algebra.coords, out, "formal", n, _clean=True)


def gutt_star(algebra: LieAlgebra, f: Polynomial, h: Polynomial) -> Polynomial:
    """Gutt product sigma^{-1}(sigma(f) sigma(h)) on polynomials over the dual."""
    _check_coords(algebra, f)
    _check_coords(algebra, h)
    n = min(f.trunc, h.trunc)
    out = {}
    for alpha, cf in f.terms.items():
        for beta, ch in h.terms.items():
            c = cf * ch
            if not c:
                continue
            w = sum(alpha) + sum(beta)
            for gamma, g in algebra._gutt_mono_raw(alpha, beta).items():
                r = w - sum(gamma)
                if r > n:
                    continue
                v = c * FormalScalar({r: g}, n)
                if not v:
                    continue
                prev = out.get(gamma)
                v = v if prev is None else prev + v
                if v:
                    out[gamma] = v
                else:
                    out.pop(gamma, None)
    return Polynomial(algebra.coords, out, "formal", n, _clean=True)


def kks_bracket(algebra: LieAlgebra, f: Polynomial, h: Polynomial) -> Polynomial:
    """Linear Poisson bracket {f,h}(x) = x_i c^i_{kl} df/dx_k dh/dx_l."""
    _check_coords(algebra, f)
    _check_coords(algebra, h)
    d = algebra.dim
    n = min(f.trunc, h.trunc)
    out = Polynomial.zero(algebra.coords, "formal", n)
    for k in range(d):
        dfk = f.partial_derivative(k)
        if not dfk:
            continue
        for ell in range(d):
            dhl = h.partial_derivative(ell)
            if not dhl:
                continue
            row = algebra._c[k][ell]
            for i in range(d):
                if row[i]:
                    xi = Polynomial.generator(algebra.coords, i, "formal", n)
                    out = out + xi * (dfk * dhl) * row[i]
    return out


class LieSeries:
    """Formal series sum_w h^w Z_w with Z_w in the algebra."""

    __slots__ = ("algebra", "order", "terms")

    def __init__(self, algebra, order, terms=None, _clean=False):
        if terms is None:
            terms = {}
        if _clean:
            cl = terms
        else:
            cl = {}
            for w, vec in terms.items():
                if not isinstance(w, int) or w < 0 or w > order:
                    raise ValueError(f"bad series order {w!r}")
                vec = tuple(_gr(v) for v in vec)
                if len(vec) != algebra.dim:
                    raise ValueError("vector length mismatch")
                if any(vec):
                    cl[w] = vec
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", cl)

    def __setattr__(self, name, value):
        raise AttributeError("LieSeries is immutable")

    def component(self, w: int):
        if w > self.order:
            raise TruncationError(f"order {w} beyond series order {self.order}")
        return self.terms.get(w, tuple(GR_ZERO for _ in range(self.algebra.dim)))

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.order == other.order
            and self.terms == other.terms
        )

    __hash__ = None

    def to_polynomial(self, trunc=None) -> Polynomial:
        """sum_w h^w (linear polynomial of Z_w) over the coordinates."""
        n = self.order if trunc is None else trunc
        gens = self.algebra.coords
        out = Polynomial.zero(gens, "formal", n)
        for w, vec in self.terms.items():
            if w > n:
                continue
            lin = Polynomial.linear(gens, vec, "formal", n)
            out = out + lin * FormalScalar({w: GR_ONE}, n)
        return out

    def __str__(self):
        from .scalars import _coeff_factor

        if not self.terms:
            return "0"
        chunks = []
        first = True
        for w in sorted(self.terms):
            vec = self.terms[w]
            for k, g in enumerate(vec):
                if not g:
                    continue
                neg, mag = _coeff_factor(g)
                factors = []
                if mag is not None:
                    factors.append(mag)
                if w == 1:
                    factors.append("h")
                elif w > 1:
                    factors.append(f"h^{w}")
                factors.append(self.algebra.basis[k])
                text = "*".join(factors)
                if first:
                    chunks.append(f"-{text}" if neg else text)
                    first = False
                else:
                    chunks.append(f" - {text}" if neg else f" + {text}")
        return "".join(chunks)

    def __repr__(self):
        return f"<LieSeries {self}>"


def _dynkin_blocks(weight):
    """Yield block sequences [(p1,q1),...] with all p+q >= 1 summing to weight."""
    if weight == 0:
        yield []
        return
    for b in range(1, weight + 1):
        for rest in _dynkin_blocks(weight - b):
            for p in range(b + 1):
                yield [(p, b - p)] + rest


def bch(algebra: LieAlgebra, x, y, order: int) -> LieSeries:
    """BCH(h*x, h*y) through h^order via the Dynkin expansion in the algebra.

    Orders above 8 are refused (the term count explodes combinatorially).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if order > 8:
        raise TruncationError("bch order capped at 8")
    xv = tuple(_gr(v) for v in x)
    yv = tuple(_gr(v) for v in y)
    if len(xv) != algebra.dim or len(yv) != algebra.dim:
        raise ValueError("vector length mismatch")
    zero = tuple(GR_ZERO for _ in range(algebra.dim))
    series = {}
    for w in range(1, order + 1):
        total = list(zero)
        for blocks in _dynkin_blocks(w):
            n = len(blocks)
            denom = n * w
            letters = []
            for p, q in blocks:
                denom *= math.factorial(p) * math.factorial(q)
                letters.extend([xv] * p)
                letters.extend([yv] * q)
            # right-nested bracket [l1,[l2,[...[l_{m-1}, l_m]...]]]
            v = letters[-1]
            for letter in letters[-2::-1]:
                if not any(v):
                    break
                v = algebra.bracket_vec(letter, v)
            if not any(v):
                continue
            coeff = GaussianRational(Fraction(-1 if n % 2 == 0 else 1, denom))
            for k in range(algebra.dim):
                if v[k]:
                    total[k] = total[k] + coeff * v[k]
        series[w] = tuple(total)
    return LieSeries(algebra, order, series)


def hbar_exponential(algebra: LieAlgebra, vec, cutoff: int,
                     trunc=None) -> Polynomial:
    """exp(h * v~) truncated at Sym-degree cutoff, v~ the linear coordinate
    function of vec."""
    n = cutoff if trunc is None else trunc
    gens = algebra.coords
    lin = Polynomial.linear(gens, [_gr(v) for v in vec], "formal", n)
    out = Polynomial.one(gens, "formal", n)
    power = Polynomial.one(gens, "formal", n)
    for k in range(1, cutoff + 1):
        power = power * lin
        coeff = FormalScalar({k: GaussianRational(Fraction(1, math.factorial(k)))}, n)
        term = power * coeff
        if not term:
            break
        out = out + term
    return out


def bch_exponential(z: LieSeries, trunc=None) -> Polynomial:
    """Symmetric-algebra exponential of a BCH series in the rescaled picture.

    The order-w component embeds at h-order 2w-1 with a factor i^(w-1): each
    envelope commutator carries i*h, so sigma(result) equals the genuine
    envelope product exp(h xi^) exp(h eta^) when z = bch(xi, eta, ...).
    """
    n = z.order if trunc is None else trunc
    if 0 in z.terms:
        raise StarWeylError("series exponential needs vanishing order-0 part")
    gens = z.algebra.coords
    zp = Polynomial.zero(gens, "formal", n)
    for w in sorted(z.terms):
        r = 2 * w - 1
        if r <= n:
            lin = Polynomial.linear(gens, z.terms[w], "formal", n)
            zp = zp + lin * FormalScalar({r: GR_I ** (w - 1)}, n)
    out = Polynomial.one(gens, "formal", n)
    power = Polynomial.one(gens, "formal", n)
    fact = 1
    for j in range(1, n + 1):
        power = power * zp
        if not power:
            break
        fact *= j
        out = out + power * GaussianRational(Fraction(1, fact))
    return out


class BchReport:
    """Outcome of check_bch_property."""

    __slots__ = ("order", "cutoff", "max_agreed_order", "ok")

    def __init__(self, order, cutoff, max_agreed_order):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "max_agreed_order", max_agreed_order)
        object.__setattr__(self, "ok", max_agreed_order >= order)

    def __setattr__(self, name, value):
        raise AttributeError("BchReport is immutable")

    def to_json(self):
        return {
            "check": "bch_property",
            "order": self.order,
            "cutoff": self.cutoff,
            "max_agreed_order": self.max_agreed_order,
            "status": "pass" if self.ok else "fail",
        }

    def __repr__(self):
        return f"<BchReport order={self.order} agreed={self.max_agreed_order}>"


def check_bch_property(algebra: LieAlgebra, xi, eta, order: int,
                       cutoff=None) -> BchReport:
    """Verify exp(h xi) *_G exp(h eta) = exp(BCH(h xi, h eta)) through h^order.

    Exponentials are truncated at Sym-degree cutoff (default: order). The
    weight grading makes every graded component of h-order <= order exact
    once cutoff >= order, so the report must come back with
    max_agreed_order >= order; anything less is a real defect.
    """
    k = order if cutoff is None else cutoff
    if k < order:
        raise TruncationError(
            f"truncation too small: exponential cutoff {k} must be >= order "
            f"{order}"
        )
    lhs = gutt_star(
        algebra,
        hbar_exponential(algebra, xi, k, trunc=order),
        hbar_exponential(algebra, eta, k, trunc=order),
    )
    z = bch(algebra, xi, eta, order)
    rhs = bch_exponential(z, trunc=order)
    agreed = -1
    for r in range(order + 1):
        if lhs.hbar_coefficient(r) == rhs.hbar_coefficient(r):
            agreed = r
        else:
            break
    return BchReport(order, k, agreed)
