"""Randomized checkers for the Lorentz-space inequalities used by the multiplier estimates.

Each checker draws seeded band-limited fields, evaluates both sides of an
inequality on the grid and reports the worst observed ratio LHS/RHS. Only the
inequalities whose constant is classically 1 carry a ceiling; the others
report a measured constant.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .bumps import BumpProfile, chi
from .calculus import SobolevParams, lorentz_sobolev_norm
from .grid import Field, GridSpec, ParameterError, SpectralField, convolve, forward_transform, \
    inverse_transform, make_grid
from .rearrangement import LorentzParams, lorentz_norm_of

UNIT_CEILING = 1.0 + 1e-6
DEFAULT_CHECK_GRID = make_grid(1, 8.0, 256)
DEFAULT_BAND = 2.0


@dataclass
class CheckReport:
    lemma_id: str
    params: dict
    trials: int
    worst_ratio: float
    ceiling: Optional[float] = None
    grid: dict = field(default_factory=dict)
    seed: int = 0
    ratios: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("a check needs at least one trial")
        if not self.worst_ratio >= 0:
            raise ParameterError(f"worst ratio must be nonnegative, got {self.worst_ratio}")

    @property
    def passed(self) -> bool:
        """Below the ceiling; checkers without a ceiling pass when the ratio is finite."""
        if self.ceiling is None:
            return math.isfinite(self.worst_ratio)
        return self.worst_ratio <= self.ceiling

    def to_dict(self, with_ratios: bool = False) -> dict:
        d = asdict(self)
        if not with_ratios:
            d.pop("ratios")
        d["pass"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def append_jsonl(report: CheckReport, path) -> None:
    with open(path, "a") as fh:
        fh.write(report.to_json() + "\n")


# -- random inputs -----------------------------------------------------------

def trial_seeds(seed: int, trials: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(trials)


def random_band_limited(grid: GridSpec, rng, band: float = DEFAULT_BAND, max_packets: int = 4) -> Field:
    """A random sum of wave packets with spectrum inside |xi| < band.

    Each packet has a smooth spectral window of random width around a random
    frequency, a random spatial center and a complex amplitude. Spectra live
    on the lattice |k| <= 2 L band and are drawn in a fixed order, so refining
    N (same L) samples the same function more finely.
    """
    if band >= grid.nyquist:
        raise ParameterError(f"band {band} must lie below the Nyquist radius {grid.nyquist:g}")
    K = int(math.floor(2 * grid.L * band))
    xs = np.arange(-K, K + 1) / (2 * grid.L)
    kk = np.meshgrid(*([xs] * grid.dim), indexing="ij")
    spec = np.zeros(kk[0].shape, dtype=complex)
    for _ in range(int(rng.integers(1, max_packets + 1))):
        width = rng.uniform(band / 16, band / 4)
        reach = band - 2 * width
        xi0 = rng.uniform(-reach, reach, size=grid.dim) / math.sqrt(grid.dim)
        x0 = rng.uniform(-grid.L / 4, grid.L / 4, size=grid.dim)
        amp = rng.normal() + 1j * rng.normal()
        r = np.sqrt(sum((k - c) ** 2 for k, c in zip(kk, xi0)))
        phase = np.exp(-2j * np.pi * sum(k * c for k, c in zip(kk, x0)))
        spec += amp * chi(r / width) * phase / width ** grid.dim
    coeffs = np.zeros(grid.shape, dtype=complex)
    ks = np.arange(-K, K + 1)
    coeffs[np.ix_(*([ks % grid.N] * grid.dim))] = spec
    return inverse_transform(SpectralField(grid, coeffs))


def _run(trial: Callable, seed: int, trials: int, workers: int) -> list[float]:
    seeds = trial_seeds(seed, trials)
    rngs = [np.random.default_rng(s) for s in seeds]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(trial, rngs))
    return [trial(g) for g in rngs]


def _report(lemma: str, params: dict, ratios: Sequence[float], ceiling, grid: GridSpec, seed: int) -> CheckReport:
    ratios = [float(x) for x in ratios]
    return CheckReport(lemma, params, len(ratios), max(ratios), ceiling, grid.to_dict(), seed, ratios)


def _check_trials(trials: int) -> None:
    if trials < 1:
        raise ParameterError("trials must be at least 1")


# -- Young ---------------------------------------------------------------------

def young_ratio(f: Field, g: Field, p: float, q_conv: float, r: float, t: float) -> float:
    lhs = lorentz_norm_of(convolve(f, g), r, t)
    return lhs / (lorentz_norm_of(f, p, t) * g.lp_norm(q_conv))


def check_young(p: float, q_conv: float, r: float, t: float, trials: int = 20, grid: GridSpec = None,
                seed: int = 0, scale: float = 1.0, workers: int = 1) -> CheckReport:
    """Young's inequality in Lorentz form: ||f * g||_{L^{r,t}} <= C ||f||_{L^{p,t}} ||g||_{L^q}."""
    if not (1 < p <= r < math.inf):
        raise ParameterError(f"need 1 < p <= r < inf, got p={p}, r={r}")
    if not (1 <= q_conv < r):
        raise ParameterError(f"need 1 <= q_conv < r, got q_conv={q_conv}, r={r}")
    if abs(1 / r + 1 - 1 / p - 1 / q_conv) > 1e-12:
        raise ParameterError("exponents violate 1/r + 1 = 1/p + 1/q_conv")
    if not t > 0:
        raise ParameterError(f"secondary index must be positive, got {t}")
    _check_trials(trials)
    grid = grid or DEFAULT_CHECK_GRID

    def trial(rng):
        f = random_band_limited(grid, rng) * scale
        g = random_band_limited(grid, rng)
        return young_ratio(f, g, p, q_conv, r, t)

    # p = r = t forces q_conv = 1: plain Young with constant 1 on the grid group
    ceiling = UNIT_CEILING if p == r == t else None
    params = {"p": p, "q_conv": q_conv, "r": r, "t": t}
    return _report("young", params, _run(trial, seed, trials, workers), ceiling, grid, seed)


# -- Hausdorff-Young -----------------------------------------------------------

def hausdorff_young_ratio(f: Field, p: float, r: float, classical: bool = False) -> float:
    """||f^||_{L^{p,r}} / ||f||_{L^{p',r}}; ``classical`` uses L^p over L^{p'} instead."""
    pp = p / (p - 1)
    F = forward_transform(f)
    if classical:
        return lorentz_norm_of(F, p, p) / lorentz_norm_of(f, pp, pp)
    return lorentz_norm_of(F, p, r) / lorentz_norm_of(f, pp, r)


def check_hausdorff_young(p: float, r: float = None, trials: int = 20, grid: GridSpec = None,
                          seed: int = 0, scale: float = 1.0, workers: int = 1,
                          classical: bool = False) -> CheckReport:
    """Hausdorff-Young in Lorentz form for 2 < p < inf.

    With ``classical`` the Lebesgue pairing L^{p'} -> L^p is checked against
    the ceiling 1 (Riesz-Thorin between the exact L^1 -> L^inf and Plancherel
    bounds of the grid transform). The Lorentz form with a common secondary
    index has no unit constant and is measured.
    """
    if not (2 < p < math.inf):
        raise ParameterError(f"need 2 < p < inf, got p={p}")
    r = p if r is None else r
    if not r > 0:
        raise ParameterError(f"secondary index must be positive, got {r}")
    _check_trials(trials)
    grid = grid or DEFAULT_CHECK_GRID

    def trial(rng):
        return hausdorff_young_ratio(random_band_limited(grid, rng) * scale, p, r, classical)

    ceiling = UNIT_CEILING if classical else None
    params = {"p": p, "r": r, "classical": classical}
    return _report("hausdorff_young", params, _run(trial, seed, trials, workers), ceiling, grid, seed)


# -- Kato-Ponce ----------------------------------------------------------------

def space_side_profile(bump: Optional[BumpProfile], grid: GridSpec, width: float = None) -> np.ndarray:
    """x -> profile(|x| / width) evaluated in space; ``None`` is the constant 1."""
    if bump is None:
        return np.ones(grid.shape)
    if bump.spectral is None:
        raise ParameterError(f"bump {bump.kind!r} has no closed radial profile")
    width = width if width is not None else grid.L / 4
    return np.real(bump.spectral(grid.radius() / width))


def kato_ponce_ratio(theta: np.ndarray, f: Field, p: float, r: float, s: float) -> float:
    sob = SobolevParams(s, LorentzParams(p, r))
    return lorentz_sobolev_norm(f * theta, sob) / lorentz_sobolev_norm(f, sob)


def check_kato_ponce(theta: Optional[BumpProfile], p: float, r: float, s: float, trials: int = 20,
                     grid: GridSpec = None, seed: int = 0, scale: float = 1.0, workers: int = 1,
                     width: float = None) -> CheckReport:
    """||theta f||_{L^{p,r}_s} / ||f||_{L^{p,r}_s}; the constant depends on theta and is reported."""
    if not (1 < p < math.inf):
        raise ParameterError(f"need 1 < p < inf, got p={p}")
    if not s >= 0:
        raise ParameterError(f"smoothness must be nonnegative, got s={s}")
    if not r > 0:
        raise ParameterError(f"secondary index must be positive, got {r}")
    _check_trials(trials)
    grid = grid or DEFAULT_CHECK_GRID
    th = space_side_profile(theta, grid, width)

    def trial(rng):
        return kato_ponce_ratio(th, random_band_limited(grid, rng) * scale, p, r, s)

    # at s = 0 the pointwise bound |theta f| <= ||theta||_inf |f| is exact
    ceiling = float(np.max(np.abs(th))) * UNIT_CEILING if s == 0 else None
    params = {"p": p, "r": r, "s": s, "theta": theta.kind if theta else "one",
              "width": None if theta is None else (width if width is not None else grid.L / 4)}
    return _report("kato_ponce", params, _run(trial, seed, trials, workers), ceiling, grid, seed)


# -- Minkowski -----------------------------------------------------------------

def minkowski_ratio(fields: Sequence[Field], q_inner: float, p: float, r: float) -> float:
    mags = np.stack([np.abs(f.values) for f in fields])
    grid = fields[0].grid
    lhs = lorentz_norm_of(Field(grid, np.sum(mags ** q_inner, axis=0) ** (1.0 / q_inner)), p, r)
    rhs = sum(lorentz_norm_of(f, p, r) ** q_inner for f in fields) ** (1.0 / q_inner)
    return lhs / rhs


def check_minkowski(q_inner: float, p: float, r: float, family_size: int = 8, trials: int = 20,
                    grid: GridSpec = None, seed: int = 0, scale: float = 1.0,
                    workers: int = 1) -> CheckReport:
    """||(sum |f_k|^q)^(1/q)||_{L^{p,r}} / (sum ||f_k||_{L^{p,r}}^q)^(1/q) for 1 <= q < p."""
    if not (1 <= q_inner < p):
        raise ParameterError(f"need 1 <= q_inner < p, got q_inner={q_inner}, p={p}")
    if not r > 0:
        raise ParameterError(f"secondary index must be positive, got {r}")
    if family_size < 1:
        raise ParameterError("family must have at least one member")
    _check_trials(trials)
    grid = grid or DEFAULT_CHECK_GRID

    def trial(rng):
        fam = [random_band_limited(grid, rng) * scale for _ in range(family_size)]
        return minkowski_ratio(fam, q_inner, p, r)

    params = {"q_inner": q_inner, "p": p, "r": r, "family_size": family_size}
    return _report("minkowski", params, _run(trial, seed, trials, workers), None, grid, seed)


# -- Hardy-Littlewood / Holder -------------------------------------------------

def _conjugate(x: float) -> float:
    if x == 1:
        return math.inf
    if math.isinf(x):
        return 1.0
    return x / (x - 1)


def holder_ratio(f: Field, g: Field, p: float, q: float) -> float:
    lhs = f.cell_measure * float(np.sum(np.abs(f.values) * np.abs(g.values)))
    return lhs / (lorentz_norm_of(f, p, q) * lorentz_norm_of(g, _conjugate(p), _conjugate(q)))


def check_holder(p: float, q: float, trials: int = 500, grid: GridSpec = None, seed: int = 0,
                 scale: float = 1.0, workers: int = 1) -> CheckReport:
    """int |f g| <= ||f||_{L^{p,q}} ||g||_{L^{p',q'}} with constant 1."""
    if not (1 < p < math.inf):
        raise ParameterError(f"need 1 < p < inf, got p={p}")
    if not (1 <= q <= math.inf):
        raise ParameterError(f"need 1 <= q <= inf, got q={q}")
    _check_trials(trials)
    grid = grid or DEFAULT_CHECK_GRID

    def trial(rng):
        return holder_ratio(random_band_limited(grid, rng) * scale, random_band_limited(grid, rng), p, q)

    params = {"p": p, "q": q}
    return _report("holder", params, _run(trial, seed, trials, workers), UNIT_CEILING, grid, seed)


# -- Sobolev-Lorentz embedding -------------------------------------------------

def embedding_branch(p0, r0, s0, p1, r1, s1, dim: int) -> Optional[str]:
    """'monotone', 'sobolev' or None for parameters outside both branches."""
    if p0 == p1 and s0 >= s1 and r0 <= r1:
        return "monotone"
    gap = dim / p0 - dim / p1
    if gap > 0 and abs((s0 - s1) - gap) < 1e-12:
        return "sobolev"
    return None


def embedding_ratio(f: Field, p0, r0, s0, p1, r1, s1) -> float:
    target = lorentz_sobolev_norm(f, SobolevParams(s1, LorentzParams(p1, r1)))
    return target / lorentz_sobolev_norm(f, SobolevParams(s0, LorentzParams(p0, r0)))


def check_embedding(p0: float, r0: float, s0: float, p1: float, r1: float, s1: float, trials: int = 20,
                    grid: GridSpec = None, seed: int = 0, scale: float = 1.0,
                    workers: int = 1) -> CheckReport:
    """||f||_{L^{p1,r1}_{s1}} / ||f||_{L^{p0,r0}_{s0}} over random fields."""
    grid = grid or DEFAULT_CHECK_GRID
    if not (1 < p0 < math.inf and 1 < p1 < math.inf):
        raise ParameterError("need 1 < p0, p1 < inf")
    if not (r0 > 0 and r1 > 0):
        raise ParameterError("secondary indices must be positive")
    branch = embedding_branch(p0, r0, s0, p1, r1, s1, grid.dim)
    if branch is None:
        raise ParameterError("parameters satisfy neither p0 = p1, s0 >= s1, r0 <= r1 "
                             "nor s0 - s1 = n/p0 - n/p1 > 0")
    _check_trials(trials)

    def trial(rng):
        return embedding_ratio(random_band_limited(grid, rng) * scale, p0, r0, s0, p1, r1, s1)

    # same p and r with s0 >= s1: the symbol ratio is <= 1 pointwise, but the
    # Lorentz norm is not monotone under Fourier multipliers, so no ceiling
    params = {"p0": p0, "r0": r0, "s0": s0, "p1": p1, "r1": r1, "s1": s1, "branch": branch}
    return _report("embedding", params, _run(trial, seed, trials, workers), None, grid, seed)


CHECKERS = {
    "young": check_young,
    "hausdorff_young": check_hausdorff_young,
    "kato_ponce": check_kato_ponce,
    "minkowski": check_minkowski,
    "holder": check_holder,
    "embedding": check_embedding,
}
