import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from hardylab.grid import (Field, ParameterError, SpectralField, convolve, field_from_function,
                           forward_transform, inverse_transform, make_grid, nudft, plane_wave)
from oracles import direct_dft, direct_periodic_convolution

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("args", [(3, 1.0, 16), (1, 0.0, 16), (1, -1.0, 16), (1, 1.0, 7), (1, 1.0, 6), (2, 1.0, 9)])
def test_make_grid_rejects_bad_specs(args):
    with pytest.raises(ParameterError):
        make_grid(*args)


def test_grid_geometry():
    g = make_grid(2, 3.0, 12)
    assert g.h == pytest.approx(0.5)
    assert g.cell_measure == pytest.approx(0.25)
    assert g.freq_spacing == pytest.approx(1 / 6)
    assert g.nyquist == pytest.approx(1.0)
    assert g.axis()[0] == -3.0 and g.axis()[-1] == pytest.approx(2.5)
    assert sorted(np.fft.fftshift(g.freq_axis()))[0] == pytest.approx(-1.0)
    assert g.refine().N == 24 and g.enlarge().L == 6.0


def test_field_validation(grid1):
    with pytest.raises(ParameterError):
        Field(grid1, np.ones(10))
    with pytest.raises(ParameterError):
        Field(grid1, np.full(64, np.nan))
    f = Field(grid1, np.ones(64))
    with pytest.raises(ValueError):
        f.values[0] = 2.0


@pytest.mark.parametrize("dim,N", [(1, 16), (1, 32), (2, 8)])
def test_forward_matches_direct_sum(dim, N):
    g = make_grid(dim, 1.5, N)
    rng = np.random.default_rng(dim * N)
    v = rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape)
    np.testing.assert_allclose(forward_transform(Field(g, v)).coeffs, direct_dft(v, g.L), atol=1e-12)


def test_gaussian_is_its_own_transform():
    g = make_grid(1, 8.0, 256)
    f = field_from_function(g, lambda x: np.exp(-np.pi * x ** 2))
    F = forward_transform(f).coeffs
    np.testing.assert_allclose(F, np.exp(-np.pi * g.freq_axis() ** 2), atol=1e-12)


@pytest.mark.parametrize("dim,k0", [(1, 5), (1, -7), (2, (3, -2))])
def test_plane_wave_is_a_single_cell(dim, k0):
    g = make_grid(dim, 2.0, 32)
    F = forward_transform(plane_wave(g, k0)).coeffs
    idx = tuple(np.atleast_1d(k0) % g.N)
    expected = np.zeros(g.shape, dtype=complex)
    expected[idx] = g.volume
    np.testing.assert_allclose(F, expected, atol=1e-12 * g.volume)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, 64, elements=finite), arrays(np.float64, 64, elements=finite))
def test_round_trip_and_plancherel(re, im):
    g = make_grid(1, 4.0, 64)
    f = Field(g, re + 1j * im)
    F = forward_transform(f)
    back = inverse_transform(F).values
    scale = max(np.max(np.abs(f.values)), 1e-300)
    assert np.max(np.abs(back - f.values)) <= 1e-12 * scale
    lhs = np.sum(np.abs(F.coeffs) ** 2) * F.cell_measure
    rhs = f.lp_norm(2) ** 2
    assert abs(lhs - rhs) <= 1e-12 * max(rhs, 1e-300)


@settings(max_examples=25, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.integers(0, 2 ** 32 - 1))
def test_linearity(a, b, seed):
    g = make_grid(2, 1.0, 8)
    rng = np.random.default_rng(seed)
    u, v = rng.normal(size=(2,) + g.shape)
    lhs = forward_transform(Field(g, a * u + b * v)).coeffs
    rhs = a * forward_transform(Field(g, u)).coeffs + b * forward_transform(Field(g, v)).coeffs
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * (abs(a) + abs(b) + 1) * np.abs(u).sum())


def test_translation_is_modulation(grid2):
    rng = np.random.default_rng(3)
    v = rng.normal(size=grid2.shape)
    shifted = np.roll(v, 1, axis=0)  # f(x - h e1)
    ratio_target = np.exp(-2j * np.pi * grid2.h * grid2.frequencies()[0])
    F = forward_transform(Field(grid2, v)).coeffs
    G = forward_transform(Field(grid2, shifted)).coeffs
    np.testing.assert_allclose(G, F * ratio_target, atol=1e-12 * np.abs(F).max())


def test_convolution_matches_loops(grid1):
    rng = np.random.default_rng(11)
    f = rng.normal(size=64) + 1j * rng.normal(size=64)
    h = rng.normal(size=64)
    got = convolve(Field(grid1, f), Field(grid1, h)).values
    np.testing.assert_allclose(got, direct_periodic_convolution(f, h, grid1.cell_measure), atol=1e-12)


def test_convolution_of_gaussians():
    g = make_grid(1, 8.0, 256)
    gauss = field_from_function(g, lambda x: np.exp(-np.pi * x ** 2))
    # e^{-pi x^2} * e^{-pi x^2} = 2^{-1/2} e^{-pi x^2 / 2}
    expected = np.exp(-np.pi * g.axis() ** 2 / 2) / np.sqrt(2)
    np.testing.assert_allclose(convolve(gauss, gauss).values, expected, atol=1e-12)


def test_nudft_agrees_on_grid_frequencies(grid2):
    rng = np.random.default_rng(5)
    f = Field(grid2, rng.normal(size=grid2.shape))
    pts = np.stack([c.ravel() for c in grid2.frequencies()], axis=1)
    np.testing.assert_allclose(nudft(f, pts).reshape(grid2.shape), forward_transform(f).coeffs, atol=1e-12)


def test_spectral_field_measure(grid1):
    S = SpectralField(grid1, np.ones(64))
    assert S.cell_measure == pytest.approx(1 / 8)
