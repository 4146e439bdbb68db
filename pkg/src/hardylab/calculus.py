"""Fractional Laplacian, Lorentz-Sobolev norms and Bessel potentials.

Also holds the log-modulated Bessel family

    H^(s,g)(x) = (1 + 4 pi^2 |x|^2)^(-s/2) (1 + ln(1 + 4 pi^2 |x|^2))^(-g/2)

together with two independent routes to its Fourier transform: a tapered grid
FFT and the subordination integral

    H^(s,g)^(xi) = Gamma(g/2)^-1 int_0^inf e^-t G_{2t+s}(xi) t^(g/2) dt/t

which only needs the closed-form Bessel kernel.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .bumps import BumpProfile, chi, make_bump
from .grid import (Field, GridSpec, ParameterError, SpectralField, forward_transform,
                   inverse_transform)
from .rearrangement import LorentzParams, decreasing_rearrangement, lorentz_norm
from .symbol import MultiplierSymbol, symbol_from_samples

log = logging.getLogger(__name__)

FOUR_PI2 = 4.0 * math.pi ** 2


@dataclass(frozen=True)
class SobolevParams:
    s: float
    lorentz: LorentzParams


def bessel_symbol(xi_mag, s: float):
    return (1.0 + FOUR_PI2 * np.asarray(xi_mag, dtype=float) ** 2) ** (-s / 2.0)


def fractional_laplacian(f: Field, s: float) -> Field:
    """(I - Delta)^(s/2) f by spectral multiplication."""
    if not math.isfinite(s):
        raise ParameterError("smoothness order must be finite")
    if s == 0:
        return f
    m = (1.0 + FOUR_PI2 * f.grid.freq_radius() ** 2) ** (s / 2.0)
    return inverse_transform(forward_transform(f) * m)


def lorentz_sobolev_norm(f: Field, params: SobolevParams) -> float:
    g = fractional_laplacian(f, params.s)
    return lorentz_norm(decreasing_rearrangement(g), params.lorentz)


# -- Bessel kernels ----------------------------------------------------------

def bessel_kernel(r, s: float, dim: int):
    """Closed-form G_s(r) = 2^(1-s/2) (2 pi)^(-n/2) / Gamma(s/2) r^nu K_nu(r), nu = (s-n)/2."""
    r = np.asarray(r, dtype=float)
    nu = (s - dim) / 2.0
    pref = 2.0 ** (1 - s / 2.0) * (2 * math.pi) ** (-dim / 2.0) / math.gamma(s / 2.0)
    out = np.empty_like(r)
    zero = r == 0
    rr = np.where(zero, 1.0, r)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        logk = np.log(special.kve(abs(nu), rr)) - rr
        val = np.exp(nu * np.log(rr) + logk)
    # overflow in K_nu for large order at tiny r: use the r -> 0 limit
    small = ~np.isfinite(val)
    if np.any(small) and nu > 0:
        val[small] = 2.0 ** (nu - 1) * math.gamma(nu)
    out[:] = pref * val
    if np.any(zero):
        out[zero] = (math.gamma(nu) * 2.0 ** (nu - 1) * pref) if nu > 0 else math.inf
    return out


def high_frequency_taper(grid: GridSpec) -> np.ndarray:
    """1 on |xi| <= nyquist/2, smoothly down to 0 at the Nyquist radius."""
    return chi(2.0 * grid.freq_radius() / grid.nyquist)


def spatial_taper(grid: GridSpec) -> np.ndarray:
    """1 on |x| <= L/2, smoothly down to 0 at |x| = L."""
    return chi(2.0 * grid.radius() / grid.L)


@lru_cache(maxsize=64)
def bessel_potential(s: float, grid: GridSpec, taper: bool = True) -> Field:
    """G_s on the spatial grid as the inverse transform of its sampled symbol.

    The symbol decays only like |xi|^-s, so by default it is rolled off to
    zero at the Nyquist radius; this replaces G_s by a mollification at scale
    about 1/nyquist instead of adding truncation ripple.
    """
    if not s > 0:
        raise ParameterError(f"Bessel order must be positive, got {s}")
    sym = bessel_symbol(grid.freq_radius(), s)
    if taper:
        sym = sym * high_frequency_taper(grid)
    G = Field(grid, inverse_transform(SpectralField(grid, sym)).values.real)
    vmin = float(G.values.real.min())
    if vmin < -1e-8:
        log.warning("Bessel potential G_%s has negative values down to %.3g (truncation artifact)", s, vmin)
    return G


def frak_S(r, s: float, dim: int):
    """Small-|xi| comparison function for G_s."""
    r = np.asarray(r, dtype=float)
    if s < dim:
        return r ** (-(dim - s))
    if s == dim:
        return np.log(2.0 / r)
    return np.ones_like(r)


def frak_T(s: float, gamma: float, xi_mag, dim: int = 1):
    """Small-|xi| comparison function for the transform of H^(s,gamma)."""
    r = np.asarray(xi_mag, dtype=float)
    if s < dim:
        return r ** (-(dim - s)) * (1.0 + 2.0 * np.log(1.0 / r)) ** (-gamma / 2.0)
    return np.ones_like(r)


@dataclass
class BesselReport:
    s: float
    dim: int
    C_exp: float
    ratio_low: float
    ratio_high: float
    decay_ok: bool
    min_value: float
    grid: dict
    gamma: float = None

    def to_dict(self) -> dict:
        return asdict(self)


def _radial_band(grid: GridSpec, r: np.ndarray, lo: float, hi: float):
    return (r >= lo) & (r <= hi)


def bessel_asymptotics_check(s: float, grid: GridSpec, small: tuple = (0.05, 1.0)) -> BesselReport:
    G = bessel_potential(s, grid)
    r = grid.radius()
    vals = G.values.real
    near = _radial_band(grid, r, *small)
    ratio = vals[near] / frak_S(r[near], s, grid.dim)
    far = _radial_band(grid, r, 1.0, grid.L / 2)
    c_exp = float(np.max(vals[far] / np.exp(-r[far] / 2))) if np.any(far) else math.nan
    return BesselReport(s, grid.dim, c_exp, float(ratio.min()), float(ratio.max()),
                        bool(math.isfinite(c_exp)), float(vals.min()), grid.to_dict())


# -- the log-modulated family and its transform -------------------------------

def h_function(r, s: float, gamma: float):
    """H^(s,gamma) as a function of the radius."""
    a = 1.0 + FOUR_PI2 * np.asarray(r, dtype=float) ** 2
    return a ** (-s / 2.0) * (1.0 + np.log(a)) ** (-gamma / 2.0)


def h_hat_grid(s: float, gamma: float, grid: GridSpec, taper: bool = True) -> SpectralField:
    """Grid transform of H^(s,gamma), tapered to zero at the box edge.

    H decays only polynomially; the taper turns the hard truncation into a
    mollification of the transform at scale about 1/L.
    """
    vals = h_function(grid.radius(), s, gamma)
    if taper:
        vals = vals * spatial_taper(grid)
    return forward_transform(Field(grid, vals))


def h_hat_subordination(s: float, gamma: float, xi_mag, dim: int = 1, nodes: int = 200,
                        t_cut: float = 1e-8) -> np.ndarray:
    """Transform of H^(s,gamma) at radii ``xi_mag`` from the subordination integral.

    Gauss-Legendre in u = ln t on [ln t_cut, ln t_max] (four panels), plus
    the analytic head int_0^t_cut e^-t G_{2t+s} t^(g/2-1) dt ~ G_s t_cut^(g/2)/(g/2).
    """
    r = np.atleast_1d(np.asarray(xi_mag, dtype=float))
    t_max = 45.0 + gamma
    panels = 4
    x, w = np.polynomial.legendre.leggauss(nodes // panels)
    edges = np.linspace(math.log(t_cut), math.log(t_max), panels + 1)
    total = np.zeros_like(r)
    for a, b in zip(edges[:-1], edges[1:]):
        u = 0.5 * (b - a) * x + 0.5 * (a + b)
        wu = 0.5 * (b - a) * w
        t = np.exp(u)
        weight = wu * np.exp(-t) * t ** (gamma / 2.0)
        for ti, wi in zip(t, weight):
            total += wi * bessel_kernel(r, 2 * ti + s, dim)
    head = bessel_kernel(r, s, dim) * t_cut ** (gamma / 2.0) / (gamma / 2.0)
    return (total + head) / math.gamma(gamma / 2.0)


@dataclass
class HHatReport:
    s: float
    gamma: float
    dim: int
    min_value: float
    positive: bool
    ratio_low: float
    ratio_high: float
    c_exp: float
    resolved_radius: float
    grid: dict

    def to_dict(self) -> dict:
        return asdict(self)


def resolved_frequency_radius(grid: GridSpec) -> float:
    """Largest |xi| treated as resolved: half the Nyquist radius, capped at 24."""
    return min(grid.nyquist / 2.0, 24.0)


def h_hat_check(s: float, gamma: float, grid: GridSpec, small: tuple = (0.05, 1.0)) -> HHatReport:
    if not (s > 0 and gamma > 0):
        raise ParameterError("s and gamma must be positive")
    F = h_hat_grid(s, gamma, grid).coeffs.real
    r = grid.freq_radius()
    rres = resolved_frequency_radius(grid)
    resolved = r <= rres
    vmin = float(F[resolved].min())
    near = _radial_band(grid, r, *small)
    ratio = F[near] / frak_T(s, gamma, r[near], grid.dim)
    far = _radial_band(grid, r, 1.0, min(grid.L / 2, rres))
    c_exp = float(np.max(F[far] / np.exp(-r[far] / 2))) if np.any(far) else math.nan
    return HHatReport(s, gamma, grid.dim, vmin, vmin > 0, float(ratio.min()), float(ratio.max()),
                      c_exp, rres, grid.to_dict())


# -- dyadic mollification of symbols -----------------------------------------

def resolvable_j_range(grid: GridSpec) -> tuple[int, int]:
    """Integer j with the annulus 2^j A_0 inside [freq spacing, nyquist]."""
    lo = math.ceil(math.log2(grid.freq_spacing) + 1 - 1e-12)
    hi = math.floor(math.log2(grid.nyquist) - 1 + 1e-12)
    return lo, hi


def _periodic_convolve(a: np.ndarray, kernel: np.ndarray, cell: float) -> np.ndarray:
    """sum_m a_m kernel_{k-m} * cell on FFT-ordered frequency arrays."""
    return np.fft.ifftn(np.fft.fftn(a) * np.fft.fftn(kernel)) * cell


def mollifier_samples(grid: GridSpec, lam: BumpProfile, width: float) -> np.ndarray:
    """Lambda^{j,eps} = width^-n Lambda(xi / width) on the frequency grid.

    Normalized to unit mass under the grid quadrature, so the discrete L^1
    norm is the same for every (j, eps) and not only up to Riemann-sum error.
    """
    samples = lam.spectral_on(grid, scale=width)
    return samples / (samples.sum().real * grid.freq_cell_measure)


MIN_MOLLIFIER_CELLS = 4


def mollify_symbol(sigma: MultiplierSymbol, eps: float, lam: BumpProfile = None,
                   psi: BumpProfile = None, j_range: tuple = None) -> MultiplierSymbol:
    """sum_j (sigma psi(./2^j)) * Lambda^{j,eps} on the symbol's grid.

    Pieces whose mollifier radius 2^j eps is under MIN_MOLLIFIER_CELLS
    frequency cells are left unmollified (the kernel is a delta at grid level).
    """
    if not (0 < eps < 0.01):
        raise ParameterError(f"eps must lie in (0, 1/100), got {eps}")
    g = sigma.grid
    lam = lam or make_bump("lambda", g.dim)
    psi = psi or make_bump("psi", g.dim)
    lo, hi = j_range or resolvable_j_range(g)
    total = np.zeros(g.shape, dtype=complex)
    cell = g.freq_cell_measure
    for j in range(lo, hi + 1):
        piece = sigma.samples * psi.spectral_on(g, scale=2.0 ** j)
        width = 2.0 ** j * eps
        if width < MIN_MOLLIFIER_CELLS * g.freq_spacing:
            total += piece
            continue
        total += _periodic_convolve(piece, mollifier_samples(g, lam, width), cell)
    return symbol_from_samples(g, total, label=f"{sigma.label}^eps({eps:g})")
