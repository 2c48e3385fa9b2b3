"""Linear Poisson structures: enveloping algebra, PBW, Gutt product, BCH."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starweyl import (
    GaussianRational,
    LieAlgebra,
    Polynomial,
    TruncationError,
    UEElement,
    bch,
    bch_exponential,
    check_bch_property,
    gutt_star,
    hbar_coefficient,
    hbar_exponential,
    heisenberg3,
    kks_bracket,
    pbw_symmetrize,
    pbw_symmetrize_inverse,
    poly_from_text,
    scalar_from_text,
    sl2,
    ue_normal_order,
)

H3 = heisenberg3()
SL2 = sl2()

fractions = st.fractions(min_value=-3, max_value=3, max_denominator=3)
gaussians = st.builds(GaussianRational, fractions, fractions)


def coord_polys(algebra, max_deg=3, max_terms=3):
    n = algebra.dim
    exps = st.tuples(*([st.integers(min_value=0, max_value=max_deg)] * n))
    return st.lists(st.tuples(exps, gaussians), max_size=max_terms).map(
        lambda ts: sum(
            (Polynomial(algebra.coords, {e: c}, trunc=6) for e, c in ts),
            Polynomial.zero(algebra.coords, trunc=6),
        )
    )


# ------------------------------------------------------------ construction


def test_structure_validation():
    with pytest.raises(ValueError):
        # redundant key conflicting with antisymmetry
        LieAlgebra(("A", "B"), {(0, 1): (1, 0), (1, 0): (1, 0)})
    with pytest.raises(ValueError):
        # [A,B]=A, [A,C]=B breaks Jacobi on (A,B,C)
        LieAlgebra(("A", "B", "C"), {(0, 1): (1, 0, 0), (0, 2): (0, 1, 0)})
    with pytest.raises(ValueError):
        LieAlgebra(("A",), {(0, 0): (1,)})  # [A,A] must vanish


def test_builtin_algebras():
    assert H3.basis == ("X", "Y", "Z")
    assert H3.coords.names == ("x", "y", "z")
    # sl2 cannot lowercase its basis: "h" is the formal parameter
    assert SL2.basis == ("H", "E", "F")
    assert SL2.coords.names == ("x", "y", "z")
    z_vec = H3.bracket_vec((1, 0, 0), (0, 1, 0))
    assert z_vec == (GaussianRational(0),) * 2 + (GaussianRational(1),)
    assert SL2.bracket_vec((1, 0, 0), (0, 1, 0))[1] == GaussianRational(2)
    assert SL2.bracket_vec((0, 1, 0), (0, 0, 1))[0] == GaussianRational(1)


def test_reserved_coordinate_names_rejected():
    with pytest.raises(ValueError):
        LieAlgebra(("H", "K"), {})  # defaulted coords would contain "h"
    with pytest.raises(ValueError):
        LieAlgebra(("A", "B"), {}, coords=("a", "i"))


def test_bracket_vec_is_antisymmetric():
    u, v = (1, 2, 0), (0, 1, 1)
    forward = SL2.bracket_vec(u, v)
    backward = SL2.bracket_vec(v, u)
    assert all(a == -b for a, b in zip(forward, backward))


def test_algebra_json_roundtrip():
    for alg in (H3, SL2):
        again = LieAlgebra.from_json(alg.to_json())
        assert again.basis == alg.basis
        assert again.coords == alg.coords
        f = poly_from_text("x*y", alg.coords)
        g = poly_from_text("y + z", alg.coords)
        assert gutt_star(again, f, g) == gutt_star(alg, f, g)


# ------------------------------------------------------------ normal order


def test_normal_order_base_case():
    # one descent: Y.X = X.Y - i h [X,Y]
    u = ue_normal_order(H3, (1, 0), trunc=6)
    assert str(u) == "X*Y - i*h*Z"


def test_normal_order_strategy_independence():
    words = [(1, 0, 1, 0), (2, 1, 0), (1, 1, 0, 0), (2, 0, 1, 0, 2)]
    for w in words:
        left = ue_normal_order(SL2, w, trunc=6, strategy="leftmost")
        right = ue_normal_order(SL2, w, trunc=6, strategy="rightmost")
        assert left == right


def test_normal_order_weight_grading():
    # every monomial in the normal form has word length + h-order equal to
    # the weight of the input word
    u = ue_normal_order(SL2, (2, 1, 0, 1), trunc=8)
    weight = 4
    for mono, coeff in u.terms.items():
        for r, c in coeff.coeffs.items():
            if c:
                assert len(mono) + r == weight


# ------------------------------------------------------------ pbw


@given(coord_polys(H3))
@settings(max_examples=30, deadline=None)
def test_pbw_inverse_h3(f):
    assert pbw_symmetrize_inverse(H3, pbw_symmetrize(H3, f)) == f


@given(coord_polys(SL2))
@settings(max_examples=30, deadline=None)
def test_pbw_inverse_sl2(f):
    assert pbw_symmetrize_inverse(SL2, pbw_symmetrize(SL2, f)) == f


def test_pbw_symmetrize_linear_is_identity():
    v = poly_from_text("x - 2*z", H3.coords, trunc=6)
    u = pbw_symmetrize(H3, v)
    assert set(u.terms) == {(0,), (2,)}


# ------------------------------------------------------------ gutt product


@given(coord_polys(H3, max_deg=2), coord_polys(H3, max_deg=2), coord_polys(H3, max_deg=2))
@settings(max_examples=15, deadline=None)
def test_gutt_associativity_h3(f, g, h):
    assert gutt_star(H3, gutt_star(H3, f, g), h) == gutt_star(H3, f, gutt_star(H3, g, h))


@given(coord_polys(SL2, max_deg=2), coord_polys(SL2, max_deg=2), coord_polys(SL2, max_deg=2))
@settings(max_examples=10, deadline=None)
def test_gutt_associativity_sl2(f, g, h):
    assert gutt_star(SL2, gutt_star(SL2, f, g), h) == gutt_star(SL2, f, gutt_star(SL2, g, h))


def test_gutt_frozen_value():
    f = poly_from_text("x", H3.coords)
    g = poly_from_text("y", H3.coords)
    assert str(gutt_star(H3, f, g)) == "x*y + (1/2)*i*h*z"


@given(coord_polys(SL2, max_deg=3), coord_polys(SL2, max_deg=3))
@settings(max_examples=25, deadline=None)
def test_gutt_first_order_is_kks(f, g):
    s = gutt_star(SL2, f, g) - gutt_star(SL2, g, f)
    i = GaussianRational(0, 1)
    expected = kks_bracket(SL2, f, g).map_coefficients(lambda c: c * i)
    assert hbar_coefficient(s, 1) == expected


def test_kks_on_coordinates_returns_structure_constants():
    # x, y, z dual to H, E, F
    x, y, z = (poly_from_text(s, SL2.coords) for s in ("x", "y", "z"))
    assert str(kks_bracket(SL2, x, y)) == "2*y"
    assert str(kks_bracket(SL2, x, z)) == "-2*z"
    assert str(kks_bracket(SL2, y, z)) == "x"


def test_gutt_unit():
    one = Polynomial.one(H3.coords)
    f = poly_from_text("x^2*y*z", H3.coords)
    assert gutt_star(H3, one, f) == f
    assert gutt_star(H3, f, one) == f


# ------------------------------------------------------------ bch


def test_bch_h3_is_exact_at_order_two():
    z = bch(H3, (1, 0, 0), (0, 1, 0), 6)
    assert str(z) == "h*X + h*Y + (1/2)*h^2*Z"


def test_bch_sl2_low_orders():
    z = bch(SL2, (1, 0, 0), (0, 1, 0), 5)
    half = Fraction(1, 2)
    assert z.component(1) == (GaussianRational(1), GaussianRational(1), GaussianRational(0))
    # [H,E] = 2E so the order-2 term (1/2)[X,Y] is exactly E
    assert z.component(2) == (GaussianRational(0), GaussianRational(1), GaussianRational(0))
    assert z.component(3)[1] == GaussianRational(Fraction(1, 3))
    assert z.component(4) == (GaussianRational(0),) * 3
    assert z.component(5)[1] == GaussianRational(Fraction(-1, 45))


def test_bch_antisymmetry_under_swap():
    # Z(Y, X) at odd orders negates, even orders are preserved, when the
    # arguments are swapped and both negated: Z(-Y,-X) = -Z(X,Y)
    x, y = (1, 2, 0), (0, 1, 1)
    fwd = bch(SL2, x, y, 5)
    bwd = bch(SL2, tuple(-a for a in y), tuple(-a for a in x), 5)
    for w in range(1, 6):
        assert tuple(-a for a in fwd.component(w)) == bwd.component(w)


def test_bch_order_cap():
    with pytest.raises(TruncationError):
        bch(H3, (1, 0, 0), (0, 1, 0), 9)


def test_bch_property_reports():
    r = check_bch_property(H3, (1, 0, 0), (0, 1, 0), 6)
    assert r.ok and r.max_agreed_order == 6
    assert r.to_json()["status"] == "pass"
    r2 = check_bch_property(SL2, (0, 1, 0), (0, 0, 1), 5)
    assert r2.ok
    with pytest.raises(TruncationError):
        check_bch_property(H3, (1, 0, 0), (0, 1, 0), 4, cutoff=2)


def test_exponential_helpers_agree():
    # exp(h X)*exp(h Y) recomputed two ways: componentwise BCH embedding
    # versus the product of truncated exponentials under the Gutt product
    order = 4
    lhs = gutt_star(
        H3,
        hbar_exponential(H3, (1, 0, 0), cutoff=order, trunc=order),
        hbar_exponential(H3, (0, 1, 0), cutoff=order, trunc=order),
    )
    rhs = bch_exponential(bch(H3, (1, 0, 0), (0, 1, 0), order), trunc=order)
    for r in range(order + 1):
        assert hbar_coefficient(lhs, r) == hbar_coefficient(rhs, r)
