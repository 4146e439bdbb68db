import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from hardylab.grid import Field, ParameterError, make_grid
from hardylab.rearrangement import (LorentzParams, RearrangementProfile, decreasing_rearrangement,
                                    distribution_function, indicator_lorentz_norm, lorentz_norm,
                                    lorentz_norm_of, radial_profile_rearrangement, transport_map,
                                    unit_ball_volume)
from oracles import distribution, lorentz_layer_cake, rearrangement_by_bisection

mags = arrays(np.float64, st.integers(1, 40), elements=st.floats(0, 100, allow_nan=False))
exponents = st.floats(0.3, 6.0)
mus = st.sampled_from([0.5, 0.125, 1.0, 3.0])


@settings(max_examples=60, deadline=None)
@given(mags, mus)
def test_rearrangement_matches_bisection(v, mu):
    prof = decreasing_rearrangement((v, mu))
    ts = np.concatenate([[0.0], prof.cumulative, prof.cumulative - mu / 2, [mu * v.size * 2]])
    for t in ts[ts >= 0]:
        assert prof(t) == rearrangement_by_bisection(v, mu, t)


@settings(max_examples=60, deadline=None)
@given(mags, mus)
def test_equimeasurable(v, mu):
    prof = decreasing_rearrangement((v, mu))
    for s in np.concatenate([[0.0], np.unique(v), np.unique(v) * 0.999]):
        assert prof.measure_above(s) == distribution(v, mu, s)
        assert distribution_function((v, mu), s) == distribution(v, mu, s)


@settings(max_examples=60, deadline=None)
@given(mags, mus, exponents, st.one_of(exponents, st.just(math.inf)))
def test_lorentz_matches_layer_cake(v, mu, p, q):
    got = lorentz_norm_of((v, mu), p, q)
    want = lorentz_layer_cake(v, mu, p, q)
    assert got == pytest.approx(want, rel=1e-10, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(mags, mus, exponents)
def test_lorentz_pp_is_lp(v, mu, p):
    assert lorentz_norm_of((v, mu), p, p) == pytest.approx((mu * np.sum(v ** p)) ** (1 / p), rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(mags, mus, exponents, exponents, st.floats(-50, 50).filter(lambda c: c != 0))
def test_lorentz_homogeneous(v, mu, p, q, c):
    assert lorentz_norm_of((c * v, mu), p, q) == pytest.approx(abs(c) * lorentz_norm_of((v, mu), p, q), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(mags, mus, exponents, exponents, exponents)
def test_monotone_in_q_after_normalization(v, mu, p, q1, dq):
    """||f||_{p,q2} / c(q2) <= ||f||_{p,q1} / c(q1) with c(q) = (p/q)^(1/q) the indicator constant."""
    q2 = q1 + dq
    c = lambda q: (p / q) ** (1 / q)
    n1 = lorentz_norm_of((v, mu), p, q1) / c(q1)
    n2 = lorentz_norm_of((v, mu), p, q2) / c(q2)
    assert n2 <= n1 * (1 + 1e-12) + 1e-300


@pytest.mark.parametrize("p,q", [(2, 2), (1, 3), (4, 1), (0.5, 0.25), (3, math.inf)])
def test_indicator_closed_form(p, q):
    g = make_grid(1, 8.0, 256)
    f = Field(g, (np.abs(g.axis()) < 1.5).astype(float))
    measure = g.cell_measure * np.count_nonzero(f.values)
    assert lorentz_norm_of(f, p, q) == pytest.approx(indicator_lorentz_norm(measure, LorentzParams(p, q)), rel=1e-12)


def test_profile_of_merged_steps_gives_same_norm():
    rng = np.random.default_rng(1)
    v = rng.integers(0, 5, size=50).astype(float)
    prof = decreasing_rearrangement((v, 0.5))
    merged = RearrangementProfile(prof.values, prof.cumulative)
    for p, q in [(2, 1), (1.5, math.inf), (3, 7)]:
        assert lorentz_norm(merged, LorentzParams(p, q)) == pytest.approx(lorentz_norm(prof, LorentzParams(p, q)), rel=1e-12)


def test_transport_map_is_measure_preserving():
    v = np.array([3.0, 1.0, 3.0, 2.0, 0.0])
    h = transport_map((v, 1.0))
    assert sorted(h.tolist()) == list(range(5))
    assert h.tolist() == [0, 3, 1, 2, 4]  # ties by index
    prof = decreasing_rearrangement((v, 1.0))
    np.testing.assert_array_equal(prof(h.astype(float)), v)


def test_radial_rearrangement_of_decreasing_profile():
    edges = np.array([0.0, 1.0, 2.0, 3.0])
    prof = radial_profile_rearrangement(edges, [3.0, 2.0, 1.0], dim=2)
    np.testing.assert_allclose(prof.cumulative, np.pi * np.array([1.0, 4.0, 9.0]))
    assert prof(np.pi * 2.0) == 2.0
    with pytest.raises(ParameterError):
        radial_profile_rearrangement([0.5, 1.0], [1.0], 1)


def test_validation():
    with pytest.raises(ParameterError):
        LorentzParams(0.0)
    with pytest.raises(ParameterError):
        LorentzParams(math.inf)
    with pytest.raises(ParameterError):
        LorentzParams(2.0, 0.0)
    with pytest.raises(ParameterError):
        distribution_function((np.ones(3), 1.0), -1.0)
    with pytest.raises(ParameterError):
        RearrangementProfile(np.array([1.0, 2.0]), np.array([1.0, 2.0]))
    assert unit_ball_volume(1) == pytest.approx(2.0)


def test_profile_csv(tmp_path):
    prof = decreasing_rearrangement((np.array([2.0, 1.0, 2.0]), 0.5))
    path = tmp_path / "profile.csv"
    prof.to_csv(path)
    assert path.read_text().splitlines() == ["value,cumulative_measure", "2.0,1.0", "1.0,1.5"]
