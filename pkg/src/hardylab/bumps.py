"""Smooth radial cutoffs: the dyadic partition and its companions.

Everything is built from the gluing function psi0(v) = exp(-1/v) (v > 0):

    smooth_step(u; a, b) = psi0(1 - v) / (psi0(1 - v) + psi0(v)),  v = (u - a) / (b - a)

equals 1 for u <= a and 0 for u >= b *exactly* in floating point, which is
what makes the partition-of-unity and support identities hold bit-for-bit on
the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import integrate, special

from .grid import Field, GridSpec, ParameterError, inverse_transform, SpectralField

KINDS = ("psi", "theta", "phi", "lambda", "eta", "eta_tilde")

# spectral radii used by the counterexample cutoffs
ETA_HAT_RADIUS = 1e-3
ETA_TILDE_FLAT = 1e-3
ETA_TILDE_RADIUS = 1e-2


def _psi0(v):
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    pos = v > 0
    out[pos] = np.exp(-1.0 / v[pos])
    return out


def smooth_step(u, a: float, b: float):
    """C-infinity step: 1 on u <= a, 0 on u >= b, decreasing in between.

    The gluing runs in the normalized variable v = (u - a) / (b - a) so that
    narrow transitions do not underflow both halves to 0/0.
    """
    v = (np.asarray(u, dtype=float) - a) / (b - a)
    left = _psi0(1.0 - v)
    right = _psi0(v)
    return left / (left + right)


def chi(u):
    """1 on [0, 1], 0 on [2, inf)."""
    return smooth_step(u, 1.0, 2.0)


def psi_hat(r):
    r = np.asarray(r, dtype=float)
    return chi(r) - chi(2.0 * r)


def theta_hat(r):
    # psi(r/2) + psi(r) + psi(2r) telescoped; exactly 1 on [1/2, 2]
    r = np.asarray(r, dtype=float)
    return chi(0.5 * r) - chi(4.0 * r)


def phi_hat(r):
    return chi(r)


def _lambda_raw(r):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    inside = r < 1
    out[inside] = np.exp(-1.0 / (1.0 - r[inside] ** 2))
    return out


@lru_cache(maxsize=None)
def _lambda_mass(dim: int) -> float:
    if dim == 1:
        return 2.0 * integrate.quad(lambda r: float(_lambda_raw(np.array(r))), 0, 1, epsabs=1e-15, epsrel=1e-13)[0]
    return 2.0 * math.pi * integrate.quad(lambda r: r * float(_lambda_raw(np.array(r))), 0, 1,
                                          epsabs=1e-15, epsrel=1e-13)[0]


def lambda_profile(r, dim: int):
    """Unit-mass mollifier supported in the closed unit ball."""
    return _lambda_raw(r) / _lambda_mass(dim)


def eta_tilde_hat(r):
    return smooth_step(r, ETA_TILDE_FLAT, ETA_TILDE_RADIUS)


def _beta_hat(r):
    # eta = |beta^v|^2 with supp beta^ in |xi| <= 1/2000, so supp eta^ in |xi| <= 1/1000
    return smooth_step(r, 0.5 * ETA_HAT_RADIUS / 2, 0.5 * ETA_HAT_RADIUS)


@lru_cache(maxsize=None)
def _gauss_nodes(n: int):
    return np.polynomial.legendre.leggauss(n)


def _beta_check(rx, dim: int, nodes: int = 400):
    """Inverse transform of the radial beta^ at spatial radii ``rx``."""
    b = 0.5 * ETA_HAT_RADIUS
    x, w = _gauss_nodes(nodes)
    rho = 0.5 * b * (x + 1.0)
    w = 0.5 * b * w * _beta_hat(rho)
    rx = np.asarray(rx, dtype=float)[..., None]
    if dim == 1:
        kern = 2.0 * np.cos(2 * np.pi * rx * rho)
    else:
        kern = 2.0 * np.pi * rho * special.j0(2 * np.pi * rx * rho)
    return (kern * w).sum(axis=-1)


def eta_spatial(rx, dim: int):
    """eta(x) = |beta^v(x)|^2, nonnegative with band limit 1/1000."""
    return _beta_check(rx, dim) ** 2


@dataclass(frozen=True)
class BumpProfile:
    """A radial cutoff with a closed-form spectral and/or spatial profile.

    ``spectral`` is a function of |xi|; for ``lambda`` the mollifier itself
    lives on the frequency side, so ``spectral`` is Lambda. ``eta`` only has a
    spatial closed form; its spectral samples come from a grid transform.
    """

    kind: str
    dim: int
    spectral: Optional[Callable] = None
    spatial: Optional[Callable] = None

    def spectral_on(self, grid: GridSpec, scale: float = 1.0) -> np.ndarray:
        """Profile at xi / scale on the frequency grid (FFT order)."""
        if self.spectral is None:
            from .grid import forward_transform
            return forward_transform(self.spatial_on(grid)).coeffs
        return self.spectral(grid.freq_radius() / scale)

    def spatial_on(self, grid: GridSpec) -> Field:
        if grid.dim != self.dim:
            raise ParameterError("bump dimension does not match grid")
        if self.spatial is not None:
            return Field(grid, self.spatial(grid.radius()))
        return inverse_transform(SpectralField(grid, self.spectral(grid.freq_radius())))


def make_bump(kind: str, dim: int = 1) -> BumpProfile:
    if kind not in KINDS:
        raise ParameterError(f"unknown bump kind {kind!r}; expected one of {KINDS}")
    if dim not in (1, 2):
        raise ParameterError(f"dim must be 1 or 2, got {dim}")
    if kind == "psi":
        return BumpProfile(kind, dim, spectral=psi_hat)
    if kind == "theta":
        return BumpProfile(kind, dim, spectral=theta_hat)
    if kind == "phi":
        return BumpProfile(kind, dim, spectral=phi_hat)
    if kind == "lambda":
        return BumpProfile(kind, dim, spectral=lambda r: lambda_profile(r, dim))
    if kind == "eta_tilde":
        return BumpProfile(kind, dim, spectral=eta_tilde_hat)
    return BumpProfile(kind, dim, spatial=lambda r: eta_spatial(r, dim))
