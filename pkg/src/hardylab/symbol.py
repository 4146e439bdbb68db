"""Bounded Fourier multiplier symbols sampled on a frequency grid."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .grid import GridSpec, ParameterError


@dataclass(frozen=True)
class MultiplierSymbol:
    """sigma sampled at the grid frequencies, plus an off-grid evaluator.

    ``evaluator`` maps an (M, dim) array of frequencies to M complex values.
    It is the closed form when ``closed_form`` is true; otherwise it is an
    interpolant of the grid model (exact at grid frequencies). Symbols
    without an evaluator fall back to linear interpolation of ``samples``.
    """

    grid: GridSpec
    samples: np.ndarray = field(repr=False)
    evaluator: Optional[Callable] = field(default=None, repr=False)
    closed_form: bool = False
    label: str = "sigma"

    def __post_init__(self):
        s = np.array(np.broadcast_to(self.samples, self.grid.shape), dtype=complex)
        if not np.all(np.isfinite(s)):
            raise ParameterError("multiplier symbol must be finite on the grid")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def evaluate(self, xi) -> np.ndarray:
        """Evaluate at frequencies of shape (..., dim); 1D symbols also take (...,)."""
        xi = np.asarray(xi, dtype=float)
        if self.grid.dim == 1 and (xi.ndim == 0 or xi.shape[-1] != 1):
            xi = xi[..., None]
        pts = xi.reshape(-1, self.grid.dim)
        if self.evaluator is not None:
            vals = self.evaluator(pts)
        else:
            vals = self._interpolate(pts)
        return np.asarray(vals, dtype=complex).reshape(xi.shape[:-1])

    def _interpolate(self, pts):
        g = self.grid
        ax = np.fft.fftshift(g.freq_axis())
        data = np.fft.fftshift(self.samples)
        interp = RegularGridInterpolator([ax] * g.dim, data, bounds_error=False, fill_value=0.0)
        return interp(pts)


def _points(grid: GridSpec) -> np.ndarray:
    return np.stack([c.ravel() for c in grid.frequencies()], axis=1)


def symbol_from_function(grid: GridSpec, func: Callable, label: str = "sigma") -> MultiplierSymbol:
    """Closed-form symbol; ``func`` takes one coordinate array per axis."""
    def evaluator(pts):
        return func(*pts.T)
    samples = np.asarray(func(*grid.frequencies()), dtype=complex)
    return MultiplierSymbol(grid, samples, evaluator, True, label)


def radial_symbol(grid: GridSpec, profile: Callable, label: str = "sigma") -> MultiplierSymbol:
    """Closed-form symbol xi -> profile(|xi|)."""
    return symbol_from_function(grid, lambda *c: profile(np.sqrt(sum(x * x for x in c))), label)


def constant_symbol(grid: GridSpec, c: complex = 1.0) -> MultiplierSymbol:
    return symbol_from_function(grid, lambda *xs: np.full(np.shape(xs[0]), c, dtype=complex), f"const({c})")


def symbol_from_samples(grid: GridSpec, samples, evaluator=None, label: str = "sigma") -> MultiplierSymbol:
    return MultiplierSymbol(grid, samples, evaluator, False, label)


def grid_points(grid: GridSpec) -> np.ndarray:
    """All grid frequencies as an (N^dim, dim) array in FFT order."""
    return _points(grid)
