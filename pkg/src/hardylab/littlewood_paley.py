"""Dyadic pieces, Littlewood-Paley projections and the Hormander-type norm."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bumps import BumpProfile, KINDS, chi, make_bump, psi_hat, smooth_step, theta_hat  # noqa: F401
from .calculus import SobolevParams, lorentz_sobolev_norm, resolvable_j_range
from .grid import Field, GridSpec, ParameterError, forward_transform, inverse_transform, make_grid
from .rearrangement import LorentzParams
from .symbol import MultiplierSymbol

DEFAULT_PIECE_GRID = {1: make_grid(1, 4.0, 1024), 2: make_grid(2, 4.0, 256)}


def _profile(name_or_bump, dim: int) -> BumpProfile:
    if isinstance(name_or_bump, BumpProfile):
        return name_or_bump
    return make_bump(name_or_bump or "psi", dim)


def dyadic_piece(sigma: MultiplierSymbol, j: int, psi: BumpProfile = None,
                 piece_grid: GridSpec = None) -> Field:
    """xi -> sigma(2^j xi) psi^(xi) on ``piece_grid``, whose coordinates are frequencies."""
    dim = sigma.grid.dim
    piece_grid = piece_grid or DEFAULT_PIECE_GRID[dim]
    if piece_grid.dim != dim:
        raise ParameterError("piece grid dimension does not match the symbol")
    if piece_grid.L <= 2:
        raise ParameterError("piece grid must cover the annulus |xi| < 2")
    lo, hi = resolvable_j_range(sigma.grid)
    if not lo <= j <= hi:
        raise ParameterError(f"j={j} outside the resolvable range [{lo}, {hi}] of the symbol grid")
    psi = _profile(psi, dim)
    r = piece_grid.radius()
    window = psi.spectral(r)
    values = np.zeros(piece_grid.shape, dtype=complex)
    support = window != 0
    coords = np.stack([c[support] for c in piece_grid.coordinates()], axis=1)
    values[support] = sigma.evaluate(2.0 ** j * coords) * window[support]
    return Field(piece_grid, values)


@dataclass
class HormanderResult:
    value: float
    argmax_j: int
    norms: dict = field(default_factory=dict)
    windowed: bool = True

    def to_dict(self) -> dict:
        return {"value": self.value, "argmax_j": self.argmax_j,
                "norms": {str(k): v for k, v in self.norms.items()}, "windowed": self.windowed}


def hormander_norm(sigma: MultiplierSymbol, s: float, params: LorentzParams, j_range=None,
                   psi: BumpProfile = None, piece_grid: GridSpec = None) -> HormanderResult:
    """max over the j-window of ||sigma(2^j .) psi^||_{L^{r,q}_s}.

    The supremum over all of Z is not reachable on a grid; the result is the
    windowed maximum and says so.
    """
    lo, hi = j_range or resolvable_j_range(sigma.grid)
    sob = SobolevParams(s, params)
    norms = {}
    for j in range(lo, hi + 1):
        norms[j] = lorentz_sobolev_norm(dyadic_piece(sigma, j, psi, piece_grid), sob)
    arg = max(norms, key=norms.get)
    return HormanderResult(norms[arg], arg, norms)


def lp_operator(f: Field, j: int, which="psi") -> Field:
    """L_j f (``which='psi'``) or L_j^Theta f (``which='theta'``)."""
    prof = _profile(which, f.grid.dim)
    m = prof.spectral_on(f.grid, scale=2.0 ** j)
    return inverse_transform(forward_transform(f) * m)


def square_function(f: Field, j_range) -> Field:
    lo, hi = j_range
    F = forward_transform(f)
    acc = np.zeros(f.grid.shape)
    for j in range(lo, hi + 1):
        Lj = inverse_transform(F * psi_hat(f.grid.freq_radius() / 2.0 ** j))
        acc += np.abs(Lj.values) ** 2
    return Field(f.grid, np.sqrt(acc))


def partition_sum(r, J: int) -> np.ndarray:
    """sum_{j=-J}^{J} psi^(2^-j r)."""
    r = np.asarray(r, dtype=float)
    return sum(psi_hat(r / 2.0 ** j) for j in range(-J, J + 1))


def profile_rows(bump: BumpProfile, grid: GridSpec) -> list[tuple[float, float]]:
    """(|xi|, value) pairs along the first frequency axis, for CSV export."""
    xi = np.fft.fftshift(grid.freq_axis())
    vals = bump.spectral(np.abs(xi)) if bump.spectral is not None else np.fft.fftshift(
        np.real(bump.spectral_on(grid)).reshape(grid.shape)[(slice(None),) + (0,) * (grid.dim - 1)])
    return list(zip(xi.tolist(), np.real(vals).tolist()))
