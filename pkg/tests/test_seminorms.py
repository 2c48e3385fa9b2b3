"""Seminorm family p_R, exponential growth regimes, exactness windows."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starweyl import (
    GaussianRational,
    Generators,
    Polynomial,
    SeminormSpec,
    StarWeylError,
    TruncationError,
    exponential_convergence_report,
    inner_automorphism_defect,
    minus_i_hbar,
    poly_from_text,
    seminorm_pR,
    standard_form,
    star_continuity_report,
    translation_automorphism_defect,
    truncated_exponential,
    weyl_form,
    weyl_relation_defect,
)

G = Generators(("q", "p"))
Z = minus_i_hbar()
SPEC = SeminormSpec((1.0, 1.0), 0.5)

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=4)
gaussians = st.builds(GaussianRational, fractions, fractions)


def pf(s):
    return poly_from_text(s, G)


def polys(max_deg=4, max_terms=4):
    exps = st.tuples(
        st.integers(min_value=0, max_value=max_deg),
        st.integers(min_value=0, max_value=max_deg),
    )
    return st.lists(st.tuples(exps, gaussians), max_size=max_terms).map(
        lambda ts: sum((Polynomial(G, {e: c}) for e, c in ts), Polynomial.zero(G))
    )


# ---------------------------------------------------------------- axioms


@given(polys(), polys())
@settings(max_examples=50)
def test_triangle_inequality(f, g):
    assert seminorm_pR(SPEC, f + g) <= seminorm_pR(SPEC, f) + seminorm_pR(SPEC, g) + 1e-12


@given(polys(), st.integers(min_value=-6, max_value=6))
@settings(max_examples=50)
def test_homogeneity_integer_scalars(f, k):
    scaled = f.map_coefficients(lambda c: c * k)
    assert seminorm_pR(SPEC, scaled) == pytest.approx(abs(k) * seminorm_pR(SPEC, f), abs=1e-12)


def test_zero_and_unit():
    assert seminorm_pR(SPEC, Polynomial.zero(G)) == 0.0
    assert seminorm_pR(SPEC, Polynomial.one(G)) == 1.0


def test_weights_scale_generators():
    spec = SeminormSpec((2.0, 3.0), 0.5)
    assert seminorm_pR(spec, pf("q")) == pytest.approx(2.0)
    assert seminorm_pR(spec, pf("p")) == pytest.approx(3.0)
    # the grade-k slice carries k!^R: here 2!^(1/2) * (2*3)
    assert seminorm_pR(spec, pf("q*p")) == pytest.approx(6.0 * math.sqrt(2.0))


def test_spec_validation():
    with pytest.raises(Exception):
        SeminormSpec((0.0, 1.0), 0.5)  # weights must be positive
    with pytest.raises(Exception):
        SeminormSpec((1.0, 1.0), 0.4)  # R below the continuity threshold
    s = SeminormSpec.from_json(SPEC.to_json())
    assert s.weights == SPEC.weights and s.R == SPEC.R


# ------------------------------------------------------- closed-form sums


@pytest.mark.parametrize("R", [0.5, 1.0, 1.7])
@pytest.mark.parametrize(
    "alpha,v", [(1, (1, 0)), (2, (1, -1)), (Fraction(1, 2), (0, 2))]
)
def test_truncated_exponential_closed_form(R, alpha, v):
    spec = SeminormSpec((1.0, 1.0), R)
    K = 8
    te = truncated_exponential(G, v, alpha, K)
    got = seminorm_pR(spec, te, R=R)
    pv = sum(abs(x) for x in v)
    want = sum(
        math.factorial(k) ** (R - 1) * (abs(alpha) * pv) ** k for k in range(K + 1)
    )
    assert got == pytest.approx(want, rel=1e-12)


def test_truncated_exponential_respects_cutoff():
    te = truncated_exponential(G, (1, 1), 1, 5)
    assert te.cutoff == 5
    assert te.base.degree() == 5


# ------------------------------------------------------- growth regimes


def test_convergence_below_one():
    rep = exponential_convergence_report(SPEC, (1.0, 0.0), 2.0)
    assert rep.verdict == "convergent"
    assert rep.tail < 1e-10
    # k!^(R-1) x^k summed via lgamma to dodge huge-int overflow
    want = sum(
        math.exp(k * math.log(2.0) - 0.5 * math.lgamma(k + 1)) for k in range(200)
    )
    assert rep.limit == pytest.approx(want, rel=1e-12)


def test_geometric_edge_r_equal_one():
    spec = SeminormSpec((1.0, 1.0), 1.0)
    ok = exponential_convergence_report(spec, (0.5, 0.0), 1.0)
    assert ok.verdict == "convergent"
    assert ok.limit == pytest.approx(2.0, abs=1e-10)  # geometric, ratio 1/2
    bad = exponential_convergence_report(spec, (1.0, 0.0), 1.0)
    assert bad.verdict == "divergent"
    worse = exponential_convergence_report(spec, (1.0, 0.0), 1.5)
    assert worse.verdict == "divergent"


def test_divergence_above_one():
    spec = SeminormSpec((1.0, 1.0), 1.7)
    rep = exponential_convergence_report(spec, (1.0, 0.0), 0.1)
    assert rep.verdict == "divergent"
    assert "grows" in rep.reason


def test_zero_argument_trivially_convergent():
    rep = exponential_convergence_report(SPEC, (0.0, 0.0), 5.0)
    assert rep.verdict == "convergent"
    assert rep.limit == pytest.approx(1.0)


def test_csv_lines_shape():
    rep = exponential_convergence_report(SPEC, (1.0, 0.0), 1.0, kmax=5)
    lines = rep.csv_lines()
    assert lines[0] == "K,partial_sum"
    assert len(lines) == 7
    k, s = lines[1].split(",")
    assert k == "0" and float(s) == 1.0


# ------------------------------------------------------- exactness windows


def test_weyl_relation_exact_on_window():
    for form, v, w in [
        (standard_form(G), (1, 2), (2, -1)),
        (weyl_form(G), (1, 1), (0, 2)),
    ]:
        rep = weyl_relation_defect(form, Z, v, w, degree=4, orders=3)
        assert rep.status == "pass"
        assert rep.exact and rep.defect_max == "0"
        assert rep.window == {"degree": 4, "orders": 3}


def test_weyl_relation_needs_enough_cutoff():
    with pytest.raises(TruncationError):
        weyl_relation_defect(standard_form(G), Z, (1, 0), (0, 1), degree=4, orders=3, cutoff=5)


def test_weyl_relation_formal_only():
    nform = standard_form(G, domain="numeric")
    with pytest.raises(StarWeylError):
        weyl_relation_defect(nform, complex(0, -1), (1, 0), (0, 1))


@given(polys(max_deg=3), polys(max_deg=3), st.tuples(fractions, fractions))
@settings(max_examples=30, deadline=None)
def test_every_translation_is_an_automorphism(f, g, a):
    # constant-coefficient bidifferential operators commute with translations
    rep = translation_automorphism_defect(standard_form(G), Z, f, g, a)
    assert rep.status == "pass" and rep.defect_max == "0"


def test_inner_automorphism_window():
    rep = inner_automorphism_defect(weyl_form(G), Z, (1, 0), pf("q*p^2"), orders=3)
    assert rep.status == "pass" and rep.exact


def test_inner_automorphism_needs_antisymmetry():
    with pytest.raises(StarWeylError):
        inner_automorphism_defect(standard_form(G), Z, (1, 0), pf("q"))


# ------------------------------------------------------- continuity


def test_continuity_partial_sums():
    spec = SeminormSpec((1.0, 1.0), 0.5)
    nform = standard_form(G, domain="numeric")
    rep = star_continuity_report(spec, nform, complex(0, -1), (1.0, 0.0), (0.0, 1.0), kmax=40)
    assert rep.monotone
    assert rep.converged
    assert rep.tail < 1e-10
    sums = rep.partial_sums
    assert all(b >= a - 1e-15 for a, b in zip(sums, sums[1:]))


def test_continuity_honest_failure_when_cut_short():
    spec = SeminormSpec((1.0, 1.0), 0.5)
    nform = standard_form(G, domain="numeric")
    rep = star_continuity_report(spec, nform, complex(0, -1), (1.0, 0.0), (0.0, 1.0), kmax=6)
    assert rep.monotone
    assert not rep.converged  # tail still far above tolerance at K = 6
