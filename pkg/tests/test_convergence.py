"""Tests for distance curves, limit membership, and density experiments."""

import math
import warnings

import numpy as np
import pytest
from scipy import integrate

import monospan.convergence as cv
from monospan.convergence import (
    ConvergenceReport,
    PiecewiseMonomial,
    SubspaceSequence,
    constant_family,
    distance_curve,
    interval_family,
    limit_membership_test,
    muntz_family,
    muntz_limit_experiment,
)
from monospan.core import Exponent, MonomialSet
from monospan.errors import ConvergenceWarning, DomainError


# ---------------------------------------------------------------------------
# PiecewiseMonomial construction and parsing
# ---------------------------------------------------------------------------


def test_piecewise_validation():
    with pytest.raises(DomainError):
        PiecewiseMonomial(terms=())
    with pytest.raises(DomainError):
        # cutoff outside [0, 1)
        PiecewiseMonomial(terms=((1.0, Exponent(0.0, 0.0, 0), 1.0),))
    with pytest.raises(DomainError):
        # log factors are not supported in piecewise targets
        PiecewiseMonomial(terms=((1.0, Exponent(0.0, 0.0, 1), 0.0),))


def test_from_spec_forms():
    c = PiecewiseMonomial.from_spec("const")
    assert c.is_single_monomial
    assert c.norm_sq == pytest.approx(1.0)

    chi = PiecewiseMonomial.from_spec("chi:0.5")
    assert not chi.is_single_monomial
    assert chi.norm_sq == pytest.approx(0.5)
    assert chi.evaluate(0.25) == pytest.approx(0.0)
    assert chi.evaluate(0.75) == pytest.approx(1.0)

    m = PiecewiseMonomial.from_spec("monomial:0.5")
    assert m.is_single_monomial
    assert m.norm_sq == pytest.approx(0.5)  # |x^(1/2)|^2 integrates to 1/2

    mc = PiecewiseMonomial.from_spec("monomial:0.5,2.0")
    assert mc.terms[0][1].im == pytest.approx(2.0)
    # |x^s|^2 = x^(2 Re s), so the imaginary part does not change the norm
    assert mc.norm_sq == pytest.approx(0.5)

    d = PiecewiseMonomial.from_spec(
        {"terms": [{"coeff": [1.0, 0.0], "t": [1.0, 0.0], "a": 0.3},
                   {"coeff": [2.0, 0.0], "t": [2.0, 0.0]}]}
    )
    assert len(d.terms) == 2
    assert d.terms[0][2] == pytest.approx(0.3)
    assert d.terms[1][2] == pytest.approx(0.0)

    # passing an existing object through is a no-op
    assert PiecewiseMonomial.from_spec(chi) is chi

    with pytest.raises(DomainError):
        PiecewiseMonomial.from_spec("chi")
    with pytest.raises(DomainError):
        PiecewiseMonomial.from_spec(42)
    with pytest.raises(DomainError):
        PiecewiseMonomial.from_spec({"coeffs": [1.0]})


def test_norm_and_pairing_against_quadrature():
    # f = chi_[0.3,1] x + 2 x^2, checked against direct numerical integration
    f = PiecewiseMonomial.from_spec(
        {"terms": [{"coeff": [1.0, 0.0], "t": [1.0, 0.0], "a": 0.3},
                   {"coeff": [2.0, 0.0], "t": [2.0, 0.0]}]}
    )

    def fx(x):
        out = 2.0 * x ** 2
        if x >= 0.3:
            out += x
        return out

    nsq, _ = integrate.quad(lambda x: fx(x) ** 2, 0.0, 1.0, points=[0.3])
    assert f.norm_sq == pytest.approx(nsq, abs=1e-10)

    pair = f.pairing_oracle()
    for s in [0.0 + 0.0j, 1.5 + 0.0j, 0.2 + 3.0j]:
        e = Exponent(s.real, s.imag, 0)
        sc = s.conjugate()
        re_val, _ = integrate.quad(
            lambda x: (fx(x) * x ** sc).real, 0.0, 1.0, points=[0.3]
        )
        im_val, _ = integrate.quad(
            lambda x: (fx(x) * x ** sc).imag, 0.0, 1.0, points=[0.3]
        )
        assert pair(e) == pytest.approx(re_val + 1j * im_val, abs=1e-8)


def test_evaluate_matches_terms():
    f = PiecewiseMonomial.from_spec("chi:0.5")
    xs = np.linspace(0.01, 0.99, 23)
    vals = f.evaluate(xs)
    expect = [1.0 if x >= 0.5 else 0.0 for x in xs]
    assert np.allclose(vals, expect)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def test_interval_family_density_parameter():
    fam = interval_family(0.25)
    # the n-th set starts at n+1 and, for rho = 1/4, has exactly n elements
    s1 = fam.set_at(1)
    assert [e.re for e in s1] == [2.0]
    s4 = fam.set_at(4)
    assert [e.re for e in s4] == [5.0, 6.0, 7.0, 8.0]

    with pytest.raises(DomainError):
        interval_family(0.0)
    with pytest.raises(DomainError):
        interval_family(1.0)
    with pytest.raises(DomainError):
        interval_family(-0.5)
    with pytest.raises(DomainError):
        fam.set_at(0)


def test_interval_family_distance_closed_form():
    # dist(1, span{x^(n+1), ..., x^(2n)}) = (n+1)/(2n+1) for rho = 1/4
    fam = interval_family(0.25)
    f = PiecewiseMonomial.constant()
    for n in (10, 100, 1000, 10000):
        d, _ = cv._distance_point(f, fam.set_at(n), "double")
        assert abs(d - (n + 1) / (2 * n + 1)) < 1e-12


def test_muntz_family_nesting_and_exhaustion():
    fam = muntz_family([0.0, 1.0, 2.0, 3.0])
    assert len(fam.set_at(0)) == 1
    assert len(fam.set_at(3)) == 4
    with pytest.raises(DomainError):
        fam.set_at(4)

    gen = muntz_family({"kind": "affine", "a": 2.0, "b": 1.0})
    s2 = gen.set_at(2)
    assert [e.re for e in s2] == [1.0, 3.0, 5.0]


def test_constant_family():
    S = MonomialSet((Exponent(1.0, 0.0, 0), Exponent(2.0, 0.0, 0)))
    fam = constant_family(S)
    assert fam.set_at(0) is S
    assert fam.set_at(17) is S


# ---------------------------------------------------------------------------
# Distance curves
# ---------------------------------------------------------------------------


def test_chi_curve_small_n_against_normal_equations():
    # independent route: solve the normal equations directly from the Gram
    # matrix and pairings, instead of going through the packaged solver
    f = PiecewiseMonomial.from_spec("chi:0.5")
    a = 0.5

    def direct_distance(exps):
        G = np.array(
            [[1.0 / (1.0 + si + np.conj(sj)) for sj in exps] for si in exps]
        )
        r = np.array(
            [(1.0 - a ** (1.0 + np.conj(s))) / (1.0 + np.conj(s)) for s in exps]
        )
        c = np.conj(np.linalg.solve(G, np.conj(r)))
        val = (1.0 - a) - float(np.dot(c, np.conj(r)).real)
        return math.sqrt(max(0.0, val))

    fam = interval_family(0.25)
    curve = distance_curve(f, fam, 3)
    for n in range(1, 4):
        exps = [complex(k) for k in range(n + 1, 2 * n + 1)]
        assert curve[n - 1] == pytest.approx(direct_distance(exps), abs=1e-12)

    # worked example by hand for S = {x^2}:
    # r = (1 - 0.5^3)/3 = 0.2916667, G = [[1/5]], c = 5 r,
    # dist^2 = 0.5 - 5 r^2 = 0.07465278
    assert curve[0] == pytest.approx(math.sqrt(0.5 - 5 * (0.875 / 3) ** 2), abs=1e-13)


def test_chi_curve_frozen_values():
    f = PiecewiseMonomial.from_spec("chi:0.5")
    curve = distance_curve(f, interval_family(0.25), 20)
    assert curve[0] == pytest.approx(0.2732, abs=5e-5)
    assert curve[1] == pytest.approx(0.2039, abs=5e-5)
    assert curve[4] == pytest.approx(0.1544, abs=5e-5)
    assert curve[-1] == pytest.approx(0.0752, abs=5e-5)
    assert curve[-1] < curve[0]


def test_nested_family_curve_is_nonincreasing():
    # growing a nested monomial set can only shrink distances
    f = PiecewiseMonomial.from_spec("chi:0.5")
    fam = muntz_family({"kind": "affine", "a": 1.0, "b": 1.0})
    curve = distance_curve(f, fam, 15)
    assert np.all(np.diff(curve) <= 1e-12)


def test_distance_pythagoras_residual():
    # the distance equals the L2 norm of f minus its projection; rebuild the
    # projection coefficients and integrate the residual directly
    f = PiecewiseMonomial.from_spec("chi:0.5")
    exps = [1.0 + 0.0j, 2.0 + 0.0j, 3.0 + 0.0j]
    S = MonomialSet(tuple(Exponent(s.real, s.imag, 0) for s in exps))
    d, _ = cv._distance_point(f, S, "double")

    G = np.array([[1.0 / (1.0 + si + np.conj(sj)) for sj in exps] for si in exps])
    r = np.array([(1.0 - 0.5 ** (1.0 + np.conj(s))) / (1.0 + np.conj(s)) for s in exps])
    c = np.conj(np.linalg.solve(G, np.conj(r)))

    def residual_sq(x):
        fx = 1.0 if x >= 0.5 else 0.0
        px = sum(ck * x ** sk for ck, sk in zip(c, exps))
        return abs(fx - px) ** 2

    val, _ = integrate.quad(residual_sq, 0.0, 1.0, points=[0.5])
    assert d ** 2 == pytest.approx(val, abs=1e-9)


def test_distance_curve_handles_singular_points():
    # an explicit family with a nearly duplicate exponent pair produces a
    # singular Gram matrix; the curve records a gap instead of aborting
    f = PiecewiseMonomial.from_spec("chi:0.5")
    fam = muntz_family([0.0, 1.0, 1e-200, 2.0])
    curve = distance_curve(f, fam, 3)
    assert curve[0] == pytest.approx(0.25, abs=1e-12)
    assert math.isnan(curve[1])
    assert math.isnan(curve[2])


def test_distance_curve_with_conditions():
    f = PiecewiseMonomial.constant()
    fam = interval_family(0.25)
    dists, conds = distance_curve(f, fam, 5, with_conditions=True)
    assert len(dists) == 5 and len(conds) == 5
    # single-monomial targets ride the closed-form product, condition 1
    assert all(c == pytest.approx(1.0) for c in conds)

    chi = PiecewiseMonomial.from_spec("chi:0.5")
    _, conds2 = distance_curve(chi, fam, 5, with_conditions=True)
    assert all(c >= 1.0 for c in conds2)

    with pytest.raises(DomainError):
        distance_curve(f, fam, 0)


# ---------------------------------------------------------------------------
# Limit membership verdicts
# ---------------------------------------------------------------------------


def test_verdict_in_limit():
    # chi_[1/2,1] is supported inside [1/4, 1], so it lies in the limit
    f = PiecewiseMonomial.from_spec("chi:0.5")
    rep = limit_membership_test(f, interval_family(0.25), 20)
    assert isinstance(rep, ConvergenceReport)
    assert rep.verdict == "in-limit"
    assert rep.fitted_limit < 0.05


def test_verdict_not_in_limit():
    # the constant function keeps mass on [0, 1/4); its distance settles at 1/2
    f = PiecewiseMonomial.constant()
    rep = limit_membership_test(f, interval_family(0.25), 60)
    assert rep.verdict == "not-in-limit"
    assert rep.fitted_limit == pytest.approx(0.5, abs=5e-3)


def test_verdict_undetermined_short_curve():
    f = PiecewiseMonomial.from_spec("chi:0.5")
    rep = limit_membership_test(f, interval_family(0.25), 5)
    assert rep.verdict == "undetermined"


def test_verdict_all_gaps():
    f = PiecewiseMonomial.from_spec("chi:0.5")
    fam = muntz_family([0.0, 1e-200, 2e-200, 1.0])
    rep = limit_membership_test(f, fam, 3)
    assert rep.verdict == "undetermined"
    assert math.isnan(rep.fitted_limit)


def test_limit_membership_rejects_bad_tol():
    f = PiecewiseMonomial.constant()
    with pytest.raises(DomainError):
        limit_membership_test(f, interval_family(0.25), 10, tol=0.0)


# ---------------------------------------------------------------------------
# Density experiments
# ---------------------------------------------------------------------------


def test_muntz_experiment_agreement_dense():
    f = PiecewiseMonomial.from_spec("monomial:0.5")
    with warnings.catch_warnings():
        warnings.simplefilter("error", ConvergenceWarning)
        report = muntz_limit_experiment({"kind": "affine", "a": 1.0, "b": 0.0}, f, 60)
    assert report.density_verdict == "dense"
    assert report.verdict == "in-limit"
    assert report.agreement is True


def test_muntz_experiment_agreement_not_dense():
    f = PiecewiseMonomial.from_spec("monomial:0.5")
    with warnings.catch_warnings():
        warnings.simplefilter("error", ConvergenceWarning)
        report = muntz_limit_experiment(
            {"kind": "geometric", "base": 1.0, "ratio": 2.0}, f, 35
        )
    assert report.density_verdict == "not-dense"
    assert report.verdict == "not-in-limit"
    assert report.agreement is True
    # the limiting distance is strictly positive and already pinned down
    assert report.fitted_limit > 0.02


def test_muntz_experiment_disagreement_warns():
    # exponents drifting up the vertical line Re s = 0.01 k: symbolically
    # dense, but the curve is still nearly flat at this horizon, so the
    # analytic and observed verdicts clash and the clash must be flagged
    f = PiecewiseMonomial.from_spec("monomial:0.5")
    with pytest.warns(ConvergenceWarning):
        report = muntz_limit_experiment(
            {"kind": "affine", "a": [0.01, 1.0], "b": 0.0}, f, 40
        )
    assert report.density_verdict == "dense"
    assert report.verdict == "not-in-limit"
    assert report.agreement is False


def test_muntz_experiment_explicit_list():
    f = PiecewiseMonomial.from_spec("monomial:0.5")
    report = muntz_limit_experiment([float(k) for k in range(50)], f, 40)
    assert report.density_verdict == "dense"
    assert report.distances[-1] < report.distances[0]


def test_subspace_sequence_description():
    fam = SubspaceSequence(
        generator=lambda n: MonomialSet((Exponent(float(n), 0.0, 0),)),
        description="singletons",
    )
    assert fam.description == "singletons"
    assert fam.set_at(3).entries[0].re == pytest.approx(3.0)
