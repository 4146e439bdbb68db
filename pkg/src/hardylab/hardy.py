"""H^p quasi-norms through the smooth maximal function, L^inf-atoms, multipliers."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .bumps import phi_hat
from .grid import Field, GridSpec, ParameterError, forward_transform, inverse_transform
from .symbol import MultiplierSymbol, constant_symbol, radial_symbol, symbol_from_function  # noqa: F401


def default_k_range(grid: GridSpec) -> tuple[int, int]:
    return -3, int(math.floor(math.log2(grid.nyquist))) - 2


def _check_k_range(grid: GridSpec, k_range) -> tuple[int, int]:
    lo, hi = k_range
    if lo > hi:
        raise ParameterError(f"empty k range {k_range}")
    if 2.0 ** (hi + 1) > grid.nyquist * (1 + 1e-12):
        raise ParameterError(f"k={hi}: Phi_k spectrum reaches 2^{hi + 1} beyond the Nyquist radius {grid.nyquist:g}")
    if 2.0 ** (-lo) > 2 * grid.L:
        raise ParameterError(f"k={lo}: Phi_k is wider than the periodic box")
    return lo, hi


def maximal_function(f: Field, k_range=None) -> tuple[np.ndarray, np.ndarray]:
    """sup_k |Phi_k * f| pointwise and the k attaining it."""
    grid = f.grid
    lo, hi = _check_k_range(grid, k_range or default_k_range(grid))
    F = forward_transform(f)
    r = grid.freq_radius()
    acc = np.zeros(int(np.prod(grid.shape)))
    arg = np.full(acc.shape, lo)
    for k in range(lo, hi + 1):
        conv = inverse_transform(F * phi_hat(r / 2.0 ** k)).values.ravel()
        before = acc.copy()
        kernels.running_max_abs(acc, conv)
        arg[acc > before] = k
    return acc.reshape(grid.shape), arg.reshape(grid.shape)


def hardy_norm(f: Field, p: float, k_range=None) -> float:
    """||sup_k |Phi_k * f| ||_{L^p} over a finite k-window."""
    if not p > 0:
        raise ParameterError(f"Hardy exponent must be positive, got {p}")
    M, _ = maximal_function(f, k_range)
    return float((f.cell_measure * np.sum(M ** p)) ** (1.0 / p))


def hardy_report(f: Field, p: float, k_range=None) -> dict:
    M, arg = maximal_function(f, k_range)
    ks, counts = np.unique(arg, return_counts=True)
    value = float((f.cell_measure * np.sum(M ** p)) ** (1.0 / p))
    return {"hardy_norm": value, "p": p, "argmax_k_histogram": dict(zip(ks.tolist(), counts.tolist()))}


# -- atoms -------------------------------------------------------------------

def moment_order(p: float, dim: int) -> int:
    """[n/p - n], the highest vanishing moment order of an H^p atom."""
    return max(int(math.floor(dim / p - dim + 1e-12)), 0)


def _multi_indices(dim: int, order: int):
    return [a for a in itertools.product(range(order + 1), repeat=dim) if sum(a) <= order]


@dataclass(frozen=True)
class Atom:
    center: tuple
    side: float
    p: float
    values: Field = field(repr=False)
    seed: int = 0

    @property
    def measure(self) -> float:
        return self.side ** self.values.grid.dim

    @property
    def size_bound(self) -> float:
        return self.measure ** (-1.0 / self.p)

    def in_cube(self) -> np.ndarray:
        return _cube_mask(self.values.grid, self.center, self.side)

    def moments(self) -> dict:
        g = self.values.grid
        coords = g.coordinates()
        out = {}
        for a in _multi_indices(g.dim, moment_order(self.p, g.dim)):
            mono = np.prod([c ** k for c, k in zip(coords, a)], axis=0)
            out[a] = complex(g.cell_measure * np.sum(mono * self.values.values))
        return out

    def check(self, tol: float = 1e-10) -> dict:
        """Support, size and moment conditions with the relative moment tolerance."""
        v = self.values.values
        support = bool(np.all(v[~self.in_cube()] == 0))
        size = bool(np.max(np.abs(v)) <= self.size_bound * (1 + 1e-12))
        scale = self.measure ** (1 - 1.0 / self.p)
        worst = 0.0
        for a, m in self.moments().items():
            ref = scale * self.side ** sum(a)
            worst = max(worst, abs(m) / ref)
        return {"support": support, "size": size, "moment_residual": worst, "moments": worst <= tol}

    def to_dict(self) -> dict:
        return {"cube": {"center": list(self.center), "side": self.side}, "p": self.p, "seed": self.seed}


def _cube_mask(grid: GridSpec, center, side) -> np.ndarray:
    mask = np.ones(grid.shape, dtype=bool)
    for c, x in zip(center, grid.coordinates()):
        mask &= np.abs(x - c) < side / 2
    return mask


def _bump1d(u):
    out = np.zeros_like(u)
    inside = np.abs(u) < 1
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


MAX_ATOM_ATTEMPTS = 8


def make_atom(grid: GridSpec, center, side: float, p: float, seed: int = 0, modes: int = 4) -> Atom:
    """A smooth seeded L^inf-atom for H^p supported in the cube (center, side).

    A random trigonometric polynomial times a bump on Q has its low moments
    removed by subtracting bump * monomials (solving the moment system), then
    is scaled so that max |a| = |Q|^(-1/p).
    """
    center = tuple(float(c) for c in np.atleast_1d(center))
    if len(center) != grid.dim:
        raise ParameterError("cube center must have one coordinate per dimension")
    if not p > 0:
        raise ParameterError(f"Hardy exponent must be positive, got {p}")
    if side < 8 * grid.h:
        raise ParameterError(f"cube side {side} is below 8 grid cells ({8 * grid.h})")
    if any(abs(c) + side / 2 > grid.L for c in center):
        raise ParameterError("cube does not fit inside the grid box")
    coords = grid.coordinates()
    u = [(x - c) / (side / 2) for x, c in zip(coords, center)]
    bump = np.prod([_bump1d(ui) for ui in u], axis=0)
    order = moment_order(p, grid.dim)
    idx = _multi_indices(grid.dim, order)
    basis = [bump * np.prod([ui ** k for ui, k in zip(u, a)], axis=0) for a in idx]
    monos = [np.prod([ui ** k for ui, k in zip(u, a)], axis=0) for a in idx]
    gram = np.array([[np.sum(m * b) for b in basis] for m in monos])
    for attempt in range(MAX_ATOM_ATTEMPTS):
        rng = np.random.default_rng([seed, attempt])
        wave = np.ones(grid.shape)
        for ui in u:
            c = rng.normal(size=(2, modes))
            wave = wave * sum(c[0, m] * np.cos(np.pi * m * ui / 2) + c[1, m] * np.sin(np.pi * m * ui / 2)
                              for m in range(modes))
        a0 = bump * wave
        rhs = np.array([np.sum(m * a0) for m in monos])
        coef = np.linalg.solve(gram, rhs)
        a = a0 - sum(ci * b for ci, b in zip(coef, basis))
        # one refinement pass for the moment residual
        rhs = np.array([np.sum(m * a) for m in monos])
        a = a - sum(ci * b for ci, b in zip(np.linalg.solve(gram, rhs), basis))
        peak = np.max(np.abs(a))
        if peak > 1e-6 * np.max(np.abs(a0)) and peak > 0:
            a = a * (side ** grid.dim) ** (-1.0 / p) / peak
            a[~_cube_mask(grid, center, side)] = 0.0
            return Atom(center, float(side), float(p), Field(grid, a), seed)
    raise ParameterError(f"moment projection annihilated the atom after {MAX_ATOM_ATTEMPTS} attempts")


@dataclass(frozen=True)
class AtomicDecomposition:
    terms: tuple  # of (lambda, Atom)

    def coefficient_norm(self, p: float) -> float:
        return float(sum(abs(c) ** p for c, _ in self.terms) ** (1.0 / p))


def synthesize(decomp: AtomicDecomposition) -> Field:
    terms = list(decomp.terms)
    if not terms:
        raise ParameterError("empty decomposition")
    grid = terms[0][1].values.grid
    total = np.zeros(grid.shape, dtype=complex)
    for lam, atom in terms:
        if atom.values.grid != grid:
            raise ParameterError("atoms live on different grids")
        total += lam * atom.values.values
    return Field(grid, total)


# -- multipliers -------------------------------------------------------------

def apply_multiplier(sigma: MultiplierSymbol, f: Field) -> Field:
    """T_sigma f = (sigma f^)^v."""
    if sigma.grid != f.grid:
        raise ParameterError("symbol and field live on different grids")
    return inverse_transform(forward_transform(f) * sigma.samples)


def operator_ratio(sigma: MultiplierSymbol, f: Field, p: float, k_range=None) -> float:
    den = hardy_norm(f, p, k_range)
    if den <= 0:
        raise ParameterError("hardy norm of the input vanishes")
    return hardy_norm(apply_multiplier(sigma, f), p, k_range) / den


def atom_family(grid: GridSpec, p: float, count: int, seed: int = 0,
                sides: Sequence[float] = None, spread: float = None) -> list[Atom]:
    """``count`` seeded atoms with sides cycling through ``sides`` and random centers."""
    rng = np.random.default_rng(seed)
    sides = list(sides or [0.5, 1.0, 2.0])
    spread = spread if spread is not None else grid.L / 4
    atoms = []
    for i in range(count):
        side = sides[i % len(sides)]
        center = rng.uniform(-spread, spread, size=grid.dim)
        atoms.append(make_atom(grid, center, side, p, seed=int(rng.integers(2 ** 31))))
    return atoms
