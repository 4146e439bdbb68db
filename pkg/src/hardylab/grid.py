"""Periodic grids on [-L, L)^n and the normalized discrete Fourier transform.

Spectral coefficients carry the continuum normalization

    F(xi_k) = mu * sum_x f(x) exp(-2 pi i <x, xi_k>),   xi_k = k / (2L),

so that a sampled Schwartz function maps to samples of its Fourier transform.
Arrays are stored in numpy FFT order along every axis; use
:meth:`GridSpec.frequencies` for the matching frequency values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft


class ParameterError(ValueError):
    """Raised when an operation is called outside its admissible parameters."""


@dataclass(frozen=True)
class GridSpec:
    dim: int
    L: float
    N: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ParameterError(f"dim must be 1 or 2, got {self.dim}")
        if int(self.N) != self.N or self.N % 2:
            raise ParameterError(f"N must be an even integer, got {self.N}")
        if self.N < 8:
            raise ParameterError(f"N must be at least 8, got {self.N}")
        if not self.L > 0:
            raise ParameterError(f"L must be positive, got {self.L}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def cell_measure(self) -> float:
        return self.h ** self.dim

    @property
    def freq_spacing(self) -> float:
        return 1.0 / (2.0 * self.L)

    @property
    def freq_cell_measure(self) -> float:
        return self.freq_spacing ** self.dim

    @property
    def nyquist(self) -> float:
        return self.N / (4.0 * self.L)

    @property
    def volume(self) -> float:
        return (2.0 * self.L) ** self.dim

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.dim

    def axis(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.N)

    def freq_axis(self) -> np.ndarray:
        return sfft.fftfreq(self.N, d=self.h)

    def coordinates(self) -> list:
        """Spatial coordinate arrays, one per axis, broadcast to ``shape``."""
        ax = self.axis()
        return list(np.meshgrid(*([ax] * self.dim), indexing="ij"))

    def frequencies(self) -> list:
        ax = self.freq_axis()
        return list(np.meshgrid(*([ax] * self.dim), indexing="ij"))

    def radius(self) -> np.ndarray:
        return np.sqrt(sum(c * c for c in self.coordinates()))

    def freq_radius(self) -> np.ndarray:
        return np.sqrt(sum(c * c for c in self.frequencies()))

    def refine(self, factor: int = 2) -> "GridSpec":
        """Same box, ``factor`` times more samples per axis."""
        return GridSpec(self.dim, self.L, self.N * factor)

    def enlarge(self, factor: int = 2) -> "GridSpec":
        """Box ``factor`` times wider at the same spacing."""
        return GridSpec(self.dim, self.L * factor, self.N * factor)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "L": self.L, "N": self.N}


def make_grid(dim: int, L: float, N: int) -> GridSpec:
    return GridSpec(int(dim), float(L), int(N))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Field:
    """Samples of a function on the spatial grid points."""

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = _readonly(self.values)
        if vals.shape != self.grid.shape:
            raise ParameterError(f"values of shape {vals.shape} do not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise ParameterError("field values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def cell_measure(self) -> float:
        return self.grid.cell_measure

    def __add__(self, other: "Field") -> "Field":
        _same_grid(self.grid, other.grid)
        return Field(self.grid, self.values + other.values)

    def __mul__(self, c) -> "Field":
        if isinstance(c, Field):
            _same_grid(self.grid, c.grid)
            return Field(self.grid, self.values * c.values)
        return Field(self.grid, self.values * c)

    __rmul__ = __mul__

    def abs(self) -> np.ndarray:
        return np.abs(self.values)

    def lp_norm(self, p: float) -> float:
        """Discrete (mu * sum |f|^p)^(1/p); ``p = inf`` gives the max."""
        a = np.abs(self.values)
        if np.isinf(p):
            return float(a.max())
        return float((self.cell_measure * np.sum(a ** p)) ** (1.0 / p))

    def integral(self) -> complex:
        return complex(self.cell_measure * self.values.sum())


@dataclass(frozen=True)
class SpectralField:
    """Coefficients approximating the Fourier transform at xi_k (FFT order)."""

    grid: GridSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _readonly(self.coeffs)
        if c.shape != self.grid.shape:
            raise ParameterError(f"coeffs of shape {c.shape} do not match grid {self.grid.shape}")
        if not np.all(np.isfinite(c)):
            raise ParameterError("spectral coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def cell_measure(self) -> float:
        return self.grid.freq_cell_measure

    def __mul__(self, other) -> "SpectralField":
        if isinstance(other, SpectralField):
            _same_grid(self.grid, other.grid)
            other = other.coeffs
        return SpectralField(self.grid, self.coeffs * other)

    __rmul__ = __mul__


def _same_grid(a: GridSpec, b: GridSpec) -> None:
    if a != b:
        raise ParameterError(f"grid mismatch: {a} vs {b}")


def _phase(grid: GridSpec) -> np.ndarray:
    # x_0 = -L gives exp(-2 pi i (-L) k / (2L)) = (-1)^k per axis
    k = np.rint(grid.freq_axis() * 2 * grid.L).astype(np.int64)
    s = np.where(k % 2 == 0, 1.0, -1.0)
    out = s
    for _ in range(grid.dim - 1):
        out = np.multiply.outer(out, s)
    return out


def forward_transform(f: Field) -> SpectralField:
    g = f.grid
    coeffs = g.cell_measure * _phase(g) * sfft.fftn(f.values)
    return SpectralField(g, coeffs)


def inverse_transform(F: SpectralField) -> Field:
    g = F.grid
    values = sfft.ifftn(_phase(g) * F.coeffs) / g.cell_measure
    return Field(g, values)


def field_from_function(grid: GridSpec, func) -> Field:
    """Sample ``func(*coords)`` on the spatial grid."""
    return Field(grid, np.broadcast_to(func(*grid.coordinates()), grid.shape))


def spectrum_from_function(grid: GridSpec, func) -> SpectralField:
    return SpectralField(grid, np.broadcast_to(func(*grid.frequencies()), grid.shape))


def plane_wave(grid: GridSpec, k0) -> Field:
    """exp(2 pi i <x, xi_{k0}>) for an integer frequency index (tuple for dim 2)."""
    k0 = np.atleast_1d(k0)
    if k0.size != grid.dim:
        raise ParameterError("k0 must have one entry per dimension")
    xi0 = k0 / (2.0 * grid.L)
    phase = sum(c * x for c, x in zip(xi0, grid.coordinates()))
    return Field(grid, np.exp(2j * np.pi * phase))


def spectral_multiply(f: Field, multiplier: np.ndarray) -> Field:
    """(m * f^)^v for a multiplier sampled on the frequency grid."""
    return inverse_transform(forward_transform(f) * multiplier)


def convolve(f: Field, g: Field) -> Field:
    """Periodic convolution integral_{[-L,L)^n} f(y) g(x - y) dy."""
    _same_grid(f.grid, g.grid)
    return inverse_transform(forward_transform(f) * forward_transform(g))


def nudft(f: Field, xi: np.ndarray, chunk: int = None) -> np.ndarray:
    """mu * sum_x f(x) exp(-2 pi i <x, xi>) at arbitrary frequencies.

    ``xi`` has shape (M, dim). Agrees with :func:`forward_transform` at grid
    frequencies and interpolates the grid model between them.
    """
    g = f.grid
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    if g.dim == 1 and xi.shape[0] == 1 and xi.shape[1] != 1:
        xi = xi.T
    coords = np.stack([c.ravel() for c in g.coordinates()], axis=1)
    vals = f.values.ravel()
    # keep each exp block near 2^22 complex entries
    chunk = chunk or max(1, 2 ** 22 // vals.size)
    out = np.empty(xi.shape[0], dtype=complex)
    for start in range(0, xi.shape[0], chunk):
        block = xi[start:start + chunk]
        out[start:start + chunk] = np.exp(-2j * np.pi * block @ coords.T) @ vals
    return g.cell_measure * out
