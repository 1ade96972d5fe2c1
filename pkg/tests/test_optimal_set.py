"""Tests for the optimal set: profile, closed forms, and dual-route functionals."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfiso.geometry import WeightPair, isoperimetric_ratio, steiner_symmetrize
from halfiso.optimal_set import (
    Inclusion,
    compute_profile,
    inclusion_vs_halfdisk,
    mu_closed_form,
    optimal_functionals,
    profile_f,
    sample_optimal_polygon,
)

# frozen via math.lgamma: 0.25*exp(lgamma(3/4)+lgamma(1/2)-lgamma(5/4))
F0_ALPHA0_BETA1 = 0.5990701173677958


def test_mu_known_values():
    assert mu_closed_form(WeightPair(0.0, 0.0)) == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-14)
    assert mu_closed_form(WeightPair(1.0, 1.0)) == pytest.approx(18.0 ** (1.0 / 3.0), rel=1e-13)
    assert mu_closed_form(WeightPair(1.0, 2.0)) == pytest.approx(math.sqrt(3.0 * math.pi), rel=1e-13)


def test_mu_sharp_boundary_identity():
    for alpha in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0):
        rhs = math.sqrt(2.0 * math.pi * (2.0 * alpha + 1.0) / (alpha + 1.0))
        assert mu_closed_form(WeightPair(alpha, 2.0 * alpha)) == pytest.approx(rhs, rel=1e-13)


def test_mu_continuous_up_to_sharp_boundary():
    alpha = 1.3
    at_boundary = mu_closed_form(WeightPair(alpha, 2.0 * alpha))
    gaps = [
        abs(mu_closed_form(WeightPair(alpha, 2.0 * alpha - eps)) - at_boundary)
        for eps in (1e-2, 1e-4, 1e-6)
    ]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-5


def test_mu_requires_positive_gamma():
    with pytest.raises(ValueError, match="beta \\+ 1 - alpha > 0"):
        mu_closed_form(WeightPair(2.0, 1.0))
    with pytest.raises(ValueError, match="beta \\+ 1 - alpha > 0"):
        mu_closed_form(WeightPair(3.0, 1.0))


def test_profile_f_endpoints_and_known_value():
    assert profile_f(WeightPair(1.0, 1.0), 1.0) == 0.0
    assert profile_f(WeightPair(0.0, 1.0), 0.0) == pytest.approx(F0_ALPHA0_BETA1, rel=1e-11)
    with pytest.raises(ValueError, match="\\[0, 1\\]"):
        profile_f(WeightPair(1.0, 1.0), 1.5)


def test_profile_equals_halfcircle_when_weights_match():
    ys = np.linspace(0.0, 1.0, 41)
    for alpha in (0.0, 0.7, 1.0, 2.3):
        w = WeightPair(alpha, alpha)
        for y in ys:
            assert abs(profile_f(w, float(y)) - math.sqrt(1.0 - y * y)) <= 1e-10


def test_optimal_functionals_known_values():
    of = optimal_functionals(WeightPair(0.0, 0.0))
    assert of.perimeter_closed == pytest.approx(math.pi, rel=1e-13)
    assert of.area_closed == pytest.approx(math.pi / 2.0, rel=1e-13)
    of = optimal_functionals(WeightPair(1.0, 1.0))
    assert of.perimeter_closed == pytest.approx(2.0, rel=1e-13)
    assert of.area_closed == pytest.approx(2.0 / 3.0, rel=1e-13)
    assert of.ratio_closed == pytest.approx(mu_closed_form(WeightPair(1.0, 1.0)), rel=1e-13)


@given(
    st.floats(min_value=0.0, max_value=3.0),
    st.floats(min_value=0.0, max_value=1.0),
)
@settings(max_examples=30, deadline=None)
def test_dual_route_agreement(alpha, s):
    # beta sweeps [alpha, min(2 alpha, alpha + 0.99)]: the attained regime
    beta_hi = min(2.0 * alpha, alpha + 0.99)
    w = WeightPair(alpha, alpha + s * (beta_hi - alpha))
    of = optimal_functionals(w)
    assert of.perimeter_quad == pytest.approx(of.perimeter_closed, rel=1e-11)
    assert of.area_quad == pytest.approx(of.area_closed, rel=1e-11)
    assert of.ratio_quad == pytest.approx(mu_closed_form(w), rel=1e-11)


def test_dual_route_agreement_outside_attained_regime():
    # gamma > 0 but 2 alpha < beta: the profile still exists and both routes match
    of = optimal_functionals(WeightPair(0.0, 1.0))
    assert of.perimeter_quad == pytest.approx(of.perimeter_closed, rel=1e-11)
    assert of.area_quad == pytest.approx(of.area_closed, rel=1e-11)


def test_compute_profile_invariants():
    prof = compute_profile(WeightPair(0.5, 0.8), 256)
    assert prof.f[-1] == 0.0
    assert np.all(prof.f[:-1] > 0.0)
    assert np.all(np.diff(prof.f) < 0.0)
    assert prof.f0 == pytest.approx(profile_f(WeightPair(0.5, 0.8), 0.0), rel=1e-11)
    assert len(prof.samples) == 257


def test_profile_interpolation_accuracy():
    w = WeightPair(1.0, 2.0)
    prof = compute_profile(w, 1024)
    for y in (0.0, 0.1, 0.37, 0.62, 0.9, 0.99, 1.0):
        assert abs(prof.half_width(y) - profile_f(w, y)) <= 1e-6


def test_sample_optimal_polygon_ratio_decreases_to_mu():
    w = WeightPair(0.0, 0.0)
    mu = mu_closed_form(w)
    gaps = []
    for n in (128, 512, 2048):
        poly = sample_optimal_polygon(w, n)
        assert len(poly.vertices) == 2 * n + 1
        gaps.append(isoperimetric_ratio(poly, w) - mu)
    assert all(g > 0.0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[-1] <= 1e-5
    with pytest.raises(ValueError, match="n >= 8"):
        sample_optimal_polygon(w, 4)


def test_sample_optimal_polygon_steiner_fixed_point():
    for w in (WeightPair(1.0, 1.0), WeightPair(0.5, 0.9), WeightPair(2.0, 3.0)):
        poly = sample_optimal_polygon(w, 64)
        sym = steiner_symmetrize(poly)
        assert len(sym.vertices) == len(poly.vertices)
        np.testing.assert_allclose(sym.vertices, poly.vertices, atol=1e-12)


def test_inclusion_vs_halfdisk_tags():
    assert inclusion_vs_halfdisk(WeightPair(1.0, 1.0)) is Inclusion.EQUAL
    assert inclusion_vs_halfdisk(WeightPair(1.0, 2.0)) is Inclusion.SUBSET
    assert inclusion_vs_halfdisk(WeightPair(1.0, 0.5)) is Inclusion.SUPERSET
