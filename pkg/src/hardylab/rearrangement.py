"""Distribution functions, decreasing rearrangements and Lorentz quasi-norms.

A sampled field is a step function, so its rearrangement is a step function
with exactly known step measures and every Lorentz quasi-norm is a finite sum
of power integrals. Nothing here uses quadrature.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .grid import ParameterError


def unit_ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1)


def _magnitudes(f) -> tuple[np.ndarray, float]:
    """|values| and the cell measure of a Field, SpectralField or (array, mu) pair."""
    if isinstance(f, tuple):
        arr, mu = f
        return np.abs(np.asarray(arr)).ravel(), float(mu)
    arr = f.values if hasattr(f, "values") else f.coeffs
    return np.abs(arr).ravel(), float(f.cell_measure)


@dataclass(frozen=True)
class LorentzParams:
    p: float
    q: float = None

    def __post_init__(self):
        q = self.p if self.q is None else self.q
        if not (0 < self.p < math.inf):
            raise ParameterError(f"Lorentz p must lie in (0, inf), got {self.p}")
        if not (q > 0):
            raise ParameterError(f"Lorentz q must lie in (0, inf], got {q}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(q))


@dataclass(frozen=True)
class RearrangementProfile:
    """Right-continuous non-increasing step function f*.

    f*(t) = values[i] for cumulative[i-1] <= t < cumulative[i] and 0 beyond
    the last breakpoint.
    """

    values: np.ndarray
    cumulative: np.ndarray
    # per-cell sorted magnitudes when every cell has the same measure; lets the
    # norm use the compiled kernel without re-expanding the merged steps
    cell_measure: Optional[float] = None
    sorted_cells: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        t = np.asarray(self.cumulative, dtype=float)
        if v.shape != t.shape or v.ndim != 1:
            raise ParameterError("profile values and cumulative measures must be 1D of equal length")
        if v.size and (np.any(v < 0) or np.any(np.diff(v) >= 0) or np.any(np.diff(t) <= 0) or t[0] <= 0):
            raise ParameterError("profile must have strictly decreasing values and increasing measures")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "cumulative", t)

    @property
    def total_measure(self) -> float:
        return float(self.cumulative[-1]) if self.cumulative.size else 0.0

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.cumulative, t, side="right")
        padded = np.append(self.values, 0.0)
        return padded[idx]

    def measure_above(self, s: float) -> float:
        """|{t : f*(t) > s}|, the distribution function of the profile."""
        k = np.count_nonzero(self.values > s)
        return float(self.cumulative[k - 1]) if k else 0.0

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.cumulative.tolist()))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["value", "cumulative_measure"])
            w.writerows(self.rows())


def distribution_function(f, s: float) -> float:
    """mu * #{cells : |f| > s} (strict inequality)."""
    if s < 0:
        raise ParameterError(f"distribution function level must be nonnegative, got {s}")
    a, mu = _magnitudes(f)
    return mu * float(np.count_nonzero(a > s))


def decreasing_rearrangement(f) -> RearrangementProfile:
    a, mu = _magnitudes(f)
    desc = np.sort(a)[::-1]
    # merge runs of equal magnitude; the last index of each run carries the
    # cumulative measure of the merged step
    last = np.flatnonzero(np.append(desc[1:] != desc[:-1], True))
    return RearrangementProfile(desc[last], mu * (last + 1.0), cell_measure=mu, sorted_cells=desc)


def lorentz_norm(profile: RearrangementProfile, params: LorentzParams) -> float:
    p, q = params.p, params.q
    if profile.sorted_cells is not None:
        desc, mu = profile.sorted_cells, profile.cell_measure
        if math.isinf(q):
            return kernels.lorentz_step_sup(desc, mu, p)
        return kernels.lorentz_step_sum(desc, mu, p, q) ** (1.0 / q)
    v, t = profile.values, profile.cumulative
    if v.size == 0:
        return 0.0
    if math.isinf(q):
        return float(np.max(v * t ** (1.0 / p)))
    tp = t ** (q / p)
    inc = np.diff(np.concatenate([[0.0], tp]))
    return float(((p / q) * np.sum(v ** q * inc)) ** (1.0 / q))


def lorentz_norm_of(f, p: float, q: float = None) -> float:
    """Shorthand: Lorentz quasi-norm of a field's magnitudes."""
    return lorentz_norm(decreasing_rearrangement(f), LorentzParams(p, q))


def indicator_lorentz_norm(measure: float, params: LorentzParams) -> float:
    """Closed form of the L^{p,q} quasi-norm of an indicator of the given measure."""
    if math.isinf(params.q):
        return measure ** (1.0 / params.p)
    return measure ** (1.0 / params.p) * (params.p / params.q) ** (1.0 / params.q)


def transport_map(f) -> np.ndarray:
    """Rank of each (flattened) grid index in the descending order of |f|.

    ``h[x]`` is the 0-based rank, so |f(x)| = f*(h[x] * mu). Ties keep the
    lexicographic index order.
    """
    a, _ = _magnitudes(f)
    order = np.argsort(-a, kind="stable")
    h = np.empty_like(order)
    h[order] = np.arange(order.size)
    return h


def radial_profile_rearrangement(edges, values, dim: int) -> RearrangementProfile:
    """Rearrangement of x -> g(|x|) for g = values[i] on [edges[i], edges[i+1]).

    The 1D rearrangement of g on the half-line is pushed through
    t = Omega_n * tau^n.
    """
    edges = np.asarray(edges, dtype=float)
    g = np.abs(np.asarray(values, dtype=float))
    if edges.ndim != 1 or edges.size != g.size + 1 or np.any(np.diff(edges) <= 0) or edges[0] != 0:
        raise ParameterError("edges must be increasing, start at 0 and have len(values) + 1 entries")
    widths = np.diff(edges)
    order = np.argsort(-g, kind="stable")
    gs, ws = g[order], widths[order]
    tau = np.cumsum(ws)
    last = np.flatnonzero(np.append(gs[1:] != gs[:-1], True))
    return RearrangementProfile(gs[last], unit_ball_volume(dim) * tau[last] ** dim)
