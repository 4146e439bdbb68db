import numpy as np
import pytest

from hardylab.bumps import (ETA_HAT_RADIUS, ETA_TILDE_FLAT, ETA_TILDE_RADIUS, KINDS, chi, eta_spatial,
                            eta_tilde_hat, make_bump, phi_hat, psi_hat, smooth_step, theta_hat)
from hardylab.grid import Field, ParameterError, forward_transform, make_grid, plane_wave
from hardylab.littlewood_paley import (dyadic_piece, hormander_norm, lp_operator, partition_sum,
                                       profile_rows, square_function)
from hardylab.rearrangement import LorentzParams
from hardylab.symbol import constant_symbol, radial_symbol, symbol_from_function


def test_smooth_step_is_exact_outside_transition():
    u = np.linspace(-3, 5, 4001)
    s = smooth_step(u, 1.0, 2.0)
    assert np.all(s[u <= 1] == 1.0) and np.all(s[u >= 2] == 0.0)
    assert np.all((s >= 0) & (s <= 1))
    assert smooth_step(1.5, 1.0, 2.0) == pytest.approx(0.5)
    narrow = smooth_step(np.linspace(0, 1e-3, 101), 2.5e-4, 5e-4)
    assert np.all(np.isfinite(narrow)) and narrow[0] == 1 and narrow[-1] == 0
    assert np.all(np.diff(s) <= 0)


def test_psi_support_and_partition():
    r = np.geomspace(1e-3, 1e3, 20001)
    p = psi_hat(r)
    assert np.all(p[(r <= 0.5) | (r >= 2)] == 0)
    band = (r >= 1 / 16) & (r <= 16)
    assert np.max(np.abs(partition_sum(r[band], 6) - 1)) <= 1e-10


def test_theta_is_one_on_psi_support():
    r = np.linspace(0, 5, 50001)
    assert np.array_equal(theta_hat(r) * psi_hat(r), psi_hat(r))
    np.testing.assert_allclose(theta_hat(r), psi_hat(r / 2) + psi_hat(r) + psi_hat(2 * r), atol=1e-15)


def test_phi_integrates_to_one():
    g = make_grid(1, 16.0, 512)
    Phi = make_bump("phi").spatial_on(g)
    assert abs(Phi.integral() - 1) <= 1e-8
    assert np.all(phi_hat(np.array([0.0, 1.0, 2.0, 3.0])) == [1, 1, 0, 0])


@pytest.mark.parametrize("dim", [1, 2])
def test_lambda_unit_mass_and_support(dim):
    lam = make_bump("lambda", dim)
    r = np.linspace(0, 2, 101)
    assert np.all(lam.spectral(r[r >= 1]) == 0)
    g = make_grid(dim, 64.0, 512 if dim == 1 else 256)
    mass = lam.spectral(g.freq_radius()).sum() * g.freq_cell_measure
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_eta_profiles():
    assert np.all(eta_tilde_hat(np.array([0.0, ETA_TILDE_FLAT])) == 1)
    assert np.all(eta_tilde_hat(np.array([ETA_TILDE_RADIUS, 1.0])) == 0)
    x = np.linspace(0, 0.01, 11)
    for dim in (1, 2):
        e = eta_spatial(x, dim)
        assert np.all(e > 0)
    # nonnegative everywhere, and its transform lives in |xi| <= 1/1000
    g = make_grid(1, 32000.0, 2 ** 14)
    eta = make_bump("eta", 1).spatial_on(g)
    assert np.min(eta.values.real) >= 0
    F = np.abs(forward_transform(eta).coeffs)
    outside = g.freq_radius() > ETA_HAT_RADIUS
    assert F[outside].max() <= 1e-6 * F.max()


def test_make_bump_validation():
    assert len(KINDS) == 6
    with pytest.raises(ParameterError):
        make_bump("nope")
    with pytest.raises(ParameterError):
        make_bump("psi", 3)


def test_piece_of_constant_is_psi():
    g = make_grid(1, 64.0, 1024)
    pg = make_grid(1, 4.0, 256)
    piece = dyadic_piece(constant_symbol(g), 0, piece_grid=pg)
    np.testing.assert_array_equal(piece.values, psi_hat(pg.radius()))


def test_piece_of_band_indicator_is_psi():
    g = make_grid(1, 64.0, 1024)
    pg = make_grid(1, 4.0, 256)
    j = 1
    band = radial_symbol(g, lambda r: ((r > 2.0 ** (j - 1)) & (r < 2.0 ** (j + 1))).astype(float))
    np.testing.assert_array_equal(dyadic_piece(band, j, piece_grid=pg).values, psi_hat(pg.radius()))


def test_piece_rejects_unresolved_scales():
    g = make_grid(1, 8.0, 64)
    with pytest.raises(ParameterError):
        dyadic_piece(constant_symbol(g), 10)
    with pytest.raises(ParameterError):
        dyadic_piece(constant_symbol(g), 0, piece_grid=make_grid(1, 2.0, 64))


def test_hormander_of_homogeneous_symbols_is_flat():
    g = make_grid(1, 64.0, 1024)
    pg = make_grid(1, 4.0, 512)
    params = LorentzParams(2.0, 1.0)
    const = hormander_norm(constant_symbol(g), 0.5, params, j_range=(-3, 1), piece_grid=pg)
    vals = list(const.norms.values())
    assert max(vals) - min(vals) == 0
    # smoothed sign: a degree-0 homogeneous symbol
    sgn = symbol_from_function(g, lambda x: np.tanh(1e6 * x))
    res = hormander_norm(sgn, 0.5, params, j_range=(-3, 1), piece_grid=pg)
    vals = np.array(list(res.norms.values()))
    assert np.ptp(vals) <= 1e-8 * vals.max()
    assert res.windowed and res.to_dict()["argmax_j"] in range(-3, 2)


def test_lp_operator_on_plane_wave():
    g = make_grid(1, 8.0, 128)
    k0 = 16  # |xi| = 1
    f = plane_wave(g, k0)
    out = lp_operator(f, 0)
    np.testing.assert_allclose(out.values, psi_hat(1.0) * f.values, atol=1e-12)


def test_reproducing_sum_and_theta_identity():
    g = make_grid(1, 16.0, 512)
    rng = np.random.default_rng(0)
    xi = g.freq_radius()
    spec = (rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape)) * ((xi >= 0.25) & (xi <= 4))
    from hardylab.grid import SpectralField, inverse_transform
    f = inverse_transform(SpectralField(g, spec))
    total = sum(lp_operator(f, j).values for j in range(-4, 5))
    assert np.max(np.abs(total - f.values)) <= 1e-10 * np.max(np.abs(f.values))
    for j in (-1, 0, 2):
        Lj = lp_operator(f, j)
        np.testing.assert_allclose(lp_operator(Lj, j, "theta").values, Lj.values, atol=1e-12 * np.abs(f.values).max())


def test_almost_orthogonality_is_exact():
    g = make_grid(1, 16.0, 512)
    F = forward_transform(Field(g, np.random.default_rng(2).normal(size=512))).coeffs
    r = g.freq_radius()
    for j in range(-3, 3):
        for jj in range(j + 2, 4):
            assert np.all(psi_hat(r / 2.0 ** j) * psi_hat(r / 2.0 ** jj) * F == 0)


def test_square_function_identities():
    g = make_grid(1, 8.0, 256)
    zero = Field(g, np.zeros(256))
    assert np.all(square_function(zero, (-2, 2)).values == 0)
    f = plane_wave(g, 12)  # |xi| = 0.75
    S = square_function(f, (-3, 3)).values.real
    expected = np.sqrt(sum(psi_hat(0.75 / 2.0 ** j) ** 2 for j in range(-3, 2)))
    np.testing.assert_allclose(S, expected, rtol=1e-12)
    h = Field(g, np.random.default_rng(4).normal(size=256))
    lhs = square_function(h, (-3, 3)).lp_norm(2) ** 2
    rhs = sum(lp_operator(h, j).lp_norm(2) ** 2 for j in range(-3, 4))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_square_function_frame_bounds_stable():
    ratios = []
    for N in (256, 512):
        g = make_grid(1, 8.0, N)
        rng = np.random.default_rng(9)
        spec = np.zeros(N, dtype=complex)
        band = (g.freq_radius() >= 0.25) & (g.freq_radius() <= 4)
        idx = np.flatnonzero(band)
        # same function at both resolutions: coefficients keyed by frequency
        keyed = {round(float(g.freq_axis()[i]) * 16): None for i in idx}
        vals = rng.normal(size=len(keyed)) + 1j * rng.normal(size=len(keyed))
        table = dict(zip(sorted(keyed), vals))
        for i in idx:
            spec[i] = table[round(float(g.freq_axis()[i]) * 16)]
        from hardylab.grid import SpectralField, inverse_transform
        f = inverse_transform(SpectralField(g, spec))
        ratios.append(square_function(f, (-4, 4)).lp_norm(2) / f.lp_norm(2))
    assert 0.5 <= ratios[0] <= 1.0
    assert ratios[0] == pytest.approx(ratios[1], rel=1e-10)


def test_profile_rows():
    g = make_grid(1, 4.0, 64)
    rows = profile_rows(make_bump("psi"), g)
    assert len(rows) == 64 and all(len(r) == 2 for r in rows)
    assert dict(rows)[1.0] == pytest.approx(float(psi_hat(1.0)))
