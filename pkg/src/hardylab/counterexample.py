"""The sharpness family: H^(t,g), the symbols sigma^(t,g) and their bounds.

Upper and lower bound integrals are one-dimensional and are evaluated by
radial quadrature in logarithmic variables, never on a grid; divergence is
reported as a truncation sequence with a fitted growth rate.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .bumps import ETA_TILDE_RADIUS, eta_tilde_hat
from .calculus import frak_T, h_function  # noqa: F401  (frak_T re-exported)
from .grid import Field, GridSpec, ParameterError, nudft
from .rearrangement import unit_ball_volume
from .symbol import MultiplierSymbol, grid_points

DEFAULT_RADII = (1e2, 10 ** 2.5, 1e3, 10 ** 3.5, 1e4)
VERDICT_OK = "multiplier-norm finite, operator lower bound divergent"
VERDICT_BAD = "prediction mismatch"


def tau(n: int, s: float, p: float) -> float:
    """Critical Lorentz index n / (s - (n/min(1,p) - n))."""
    den = s - (n / min(1.0, p) - n)
    if den <= 0:
        raise ParameterError(f"s={s} must exceed n/min(1,p) - n = {n / min(1.0, p) - n}")
    return n / den


def admissible(n: int, s: float, p: float) -> bool:
    return abs(n / p - n / 2) < s < n / min(1.0, p)


@dataclass(frozen=True)
class CounterParams:
    n: int
    p: float
    s: float
    r: float
    q: float
    t: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.n}")
        for name in ("p", "s", "r", "q", "t", "gamma"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        if not admissible(self.n, self.s, self.p):
            raise ParameterError(
                f"need |n/p - n/2| < s < n/min(1,p): {abs(self.n / self.p - self.n / 2):g} < {self.s:g} "
                f"< {self.n / self.m:g} fails")

    @property
    def m(self) -> float:
        return min(1.0, self.p)

    @property
    def tau(self) -> float:
        return tau(self.n, self.s, self.p)

    @property
    def exponent(self) -> float:
        """n - t + s - n/r, the power in the upper-bound integrand."""
        return self.n - self.t + self.s - self.n / self.r

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tau"] = self.tau
        return d


def h_field(t: float, gamma: float, grid: GridSpec) -> Field:
    if not (t > 0 and gamma > 0):
        raise ParameterError("t and gamma must be positive")
    return Field(grid, h_function(grid.radius(), t, gamma))


def script_T(a: float, gamma: float, u, n: int = 1):
    """Majorant of the transform of H^(a,gamma) as a function of u = |xi| (a = t - s)."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    lo = u <= 1
    out[lo] = u[lo] ** (-(n - a)) * (1.0 + 2.0 * np.log(1.0 / u[lo])) ** (-gamma / 2.0)
    out[~lo] = np.exp(-u[~lo] / 2.0 + 0.5)
    return out


# -- the symbol sigma^(t, gamma) ------------------------------------------------

def sigma_counter(t: float, gamma: float, grid: GridSpec,
                  construction_grid: Optional[GridSpec] = None) -> MultiplierSymbol:
    """Samples of (H^ eta_tilde^)(xi - e1), the transform of (H * eta_tilde) e^{2 pi i x_1}.

    H^ comes from the grid model of H on ``construction_grid`` (tapered at
    the box edge), evaluated off-grid by direct Fourier summation; outside
    |xi - e1| < 1/100 the symbol is exactly zero.
    """
    if grid.nyquist < 4:
        raise ParameterError(f"grid must resolve |xi| <= 4 (nyquist {grid.nyquist:g})")
    cgrid = construction_grid or grid
    from .calculus import spatial_taper
    H = Field(cgrid, h_function(cgrid.radius(), t, gamma) * spatial_taper(cgrid))
    e1 = np.zeros(grid.dim)
    e1[0] = 1.0

    def evaluator(pts):
        pts = np.asarray(pts, dtype=float)
        zeta = pts - e1
        rad = np.sqrt(np.sum(zeta ** 2, axis=1))
        out = np.zeros(len(pts), dtype=complex)
        inside = rad < ETA_TILDE_RADIUS
        if np.any(inside):
            # H is real and even, so its transform is real
            out[inside] = nudft(H, zeta[inside]).real * eta_tilde_hat(rad[inside])
        return out

    samples = evaluator(grid_points(grid)).reshape(grid.shape)
    return MultiplierSymbol(grid, samples, evaluator, False, f"sigma^({t:g},{gamma:g})")


def kernel_field(sigma: MultiplierSymbol) -> Field:
    """K = sigma^v on the symbol's grid."""
    from .grid import SpectralField, inverse_transform
    return inverse_transform(SpectralField(sigma.grid, sigma.samples))


# -- upper bound ----------------------------------------------------------------

@dataclass
class UpperBound:
    value: float
    finite: bool
    exponent: float
    condition: str
    integral: float = None

    def to_dict(self) -> dict:
        return asdict(self)


def classify_upper(e: float, gamma: float, q: float) -> tuple[bool, str]:
    if math.isinf(q):
        if e > 0:
            return False, "exponent > 0"
        return True, "exponent <= 0 (sup form)"
    if e > 0:
        return False, "exponent > 0"
    if e == 0:
        if gamma * q / 2 <= 1:
            return False, "exponent = 0 and gamma q / 2 <= 1"
        return True, "exponent = 0 and gamma q / 2 > 1"
    return True, "exponent < 0"


def upper_integral(e: float, gamma: float, q: float) -> float:
    """int_1^inf u^{e q} (1 + 2 ln u)^{-gamma q/2} du/u by adaptive quadrature (v = ln u)."""
    b = gamma * q / 2.0

    def f(v):
        return math.exp(e * q * v) * (1.0 + 2.0 * v) ** (-b)
    head = integrate.quad(f, 0.0, 1.0, epsabs=0, epsrel=1e-12, limit=200)[0]
    tail = integrate.quad(f, 1.0, math.inf, epsabs=0, epsrel=1e-12, limit=400)[0]
    return head + tail


def upper_bound_value(params: CounterParams) -> UpperBound:
    """1 + (upper integral)^(1/q), or 1 + sup_{u>1} u^e (1 + 2 ln u)^(-gamma/2) for q = inf."""
    if not params.t - params.n < params.s:
        raise ParameterError(f"need t - n < s (t={params.t}, n={params.n}, s={params.s})")
    e, q, g = params.exponent, params.q, params.gamma
    finite, cond = classify_upper(e, g, q)
    if not finite:
        return UpperBound(math.inf, False, e, cond)
    if math.isinf(q):
        v = np.concatenate([[0.0], np.logspace(-8, 3, 2000)])
        sup = float(np.max(np.exp(e * v) * (1 + 2 * v) ** (-g / 2)))
        return UpperBound(1.0 + sup, True, e, cond, sup)
    integral = upper_integral(e, g, q)
    return UpperBound(1.0 + integral ** (1.0 / q), True, e, cond, integral)


# -- lower bound ----------------------------------------------------------------

def lower_integral(t: float, gamma: float, p: float, n: int, R: float) -> float:
    """int_{|x| <= R} H^(t,gamma)(x)^min(1,p) dx by radial quadrature in u = ln r."""
    if not R > 0:
        raise ParameterError(f"radius must be positive, got {R}")
    m = min(1.0, p)
    surf = n * unit_ball_volume(n)

    def f(u):
        r = math.exp(u)
        return surf * r ** n * float(h_function(r, t, gamma)) ** m

    top = math.log(R)
    lo = min(-40.0, top - 1.0)
    pieces = [lo, min(0.0, top)] + ([top] if top > 0 else [])
    total = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        if b > a:
            total += integrate.quad(f, a, b, epsabs=0, epsrel=1e-12, limit=400)[0]
    return total


def lower_bound_value(t: float, gamma: float, p: float, n: int, R: float) -> float:
    """||H^(t,gamma)||_{L^min(1,p)(B_R)}."""
    return lower_integral(t, gamma, p, n, R) ** (1.0 / min(1.0, p))


def log_coordinate(R) -> np.ndarray:
    """w(R) = 1 + ln(1 + 4 pi^2 R^2), the variable in which the borderline integral is a power."""
    R = np.asarray(R, dtype=float)
    return 1.0 + np.log1p(4 * math.pi ** 2 * R ** 2)


def fit_growth(x: Sequence[float], y: Sequence[float], bounds=(-1.0, 3.0)) -> tuple[float, float, float]:
    """Least-squares fit y ~ C + A x^rho; returns (rho, A, C).

    For fixed rho the fit is linear in (C, A); rho minimises the residual.
    rho = 0 is read as logarithmic growth, y ~ C + A ln x.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    def design(rho):
        col = np.log(x) if abs(rho) < 1e-9 else x ** rho
        return np.stack([np.ones_like(x), col], axis=1)

    def resid(rho):
        A = design(rho)
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        return float(np.sum((A @ coef - y) ** 2)) / float(np.sum(y ** 2))

    grid = np.linspace(bounds[0], bounds[1], 801)
    best = grid[np.argmin([resid(r) for r in grid])]
    step = grid[1] - grid[0]
    res = optimize.minimize_scalar(resid, bounds=(best - step, best + step), method="bounded",
                                   options={"xatol": 1e-10})
    rho = float(res.x)
    coef, *_ = np.linalg.lstsq(design(rho), y, rcond=None)
    return rho, float(coef[1]), float(coef[0])


# -- case drivers -----------------------------------------------------------------

@dataclass
class CaseReport:
    case: int
    params: dict
    chosen_t: float
    chosen_gamma: float
    upper_value_or_inf: float
    upper_condition: str
    lower_sequence: list
    fitted_rate: float
    expected_rate: float
    rate_model: str
    verdict: str
    notes: list = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return self.verdict == VERDICT_OK

    def to_dict(self) -> dict:
        d = asdict(self)
        if math.isinf(d["upper_value_or_inf"]):
            d["upper_value_or_inf"] = "inf"
        return d


def _lower_sequence(t, gamma, p, n, radii):
    return [(float(R), lower_bound_value(t, gamma, p, n, R)) for R in radii]


def _increasing(seq) -> bool:
    vals = [v for _, v in seq]
    return all(b > a for a, b in zip(vals, vals[1:]))


def _notes(p: float) -> list:
    return ["by-duality, not directly probed"] if p > 2 else []


def sharpness_case1(r: float, q: float, s: float, p: float, n: int,
                    radii: Sequence[float] = DEFAULT_RADII) -> CaseReport:
    """r < tau: t at the midpoint of the admissible interval, gamma = 1."""
    if not admissible(n, s, p):
        raise ParameterError(f"need |n/p - n/2| < s < n/min(1,p) for (n, p, s) = ({n}, {p}, {s})")
    m = min(1.0, p)
    tau_sp = tau(n, s, p)
    if not r < tau_sp:
        raise ParameterError(f"case 1 needs r < tau = {tau_sp:g}, got r = {r:g}")
    # r < n/(s - (t - n)) < tau  <=>  s + n - n/r < t < n/m
    t_lo = max(s + n - n / r, 0.0)
    t_hi = n / m
    t = 0.5 * (t_lo + t_hi)
    gamma = 1.0
    cp = CounterParams(n, p, s, r, q, t, gamma)
    upper = upper_bound_value(cp)
    seq = _lower_sequence(t, gamma, p, n, radii)
    integrals = [v ** m for _, v in seq]
    rate, _, _ = fit_growth([R for R, _ in seq], integrals)
    expected = n - t * m
    ok = upper.finite and _increasing(seq) and rate > 0
    return CaseReport(1, cp.to_dict(), t, gamma, upper.value, upper.condition, seq, rate, expected,
                      "C + A R^rate", VERDICT_OK if ok else VERDICT_BAD, _notes(p))


def sharpness_case2(q: float, s: float, p: float, n: int,
                    radii: Sequence[float] = DEFAULT_RADII) -> CaseReport:
    """r = tau, q > min(1,p): t = n/min(1,p), gamma at the midpoint of (2/q, 2/min(1,p)]."""
    if not admissible(n, s, p):
        raise ParameterError(f"need |n/p - n/2| < s < n/min(1,p) for (n, p, s) = ({n}, {p}, {s})")
    m = min(1.0, p)
    if not q > m:
        raise ParameterError(f"case 2 needs q > min(1,p) = {m:g}, got q = {q:g}")
    t = n / m
    gamma = 0.5 * ((0.0 if math.isinf(q) else 2.0 / q) + 2.0 / m)
    cp = CounterParams(n, p, s, tau(n, s, p), q, t, gamma)
    # e = 0 up to rounding in n/tau; classify on the exact value
    upper = _upper_at_zero_exponent(cp)
    seq = _lower_sequence(t, gamma, p, n, radii)
    integrals = [v ** m for _, v in seq]
    rate, _, _ = fit_growth(log_coordinate([R for R, _ in seq]), integrals)
    expected = 1.0 - gamma * m / 2.0
    diverging = rate > 0 if expected > 0 else abs(rate) < 0.1
    ok = upper.finite and _increasing(seq) and diverging
    return CaseReport(2, cp.to_dict(), t, gamma, upper.value, upper.condition, seq, rate, expected,
                      "C + A w(R)^rate, w = 1 + ln(1 + 4 pi^2 R^2)",
                      VERDICT_OK if ok else VERDICT_BAD, _notes(p))


def _upper_at_zero_exponent(cp: CounterParams) -> UpperBound:
    finite, cond = classify_upper(0.0, cp.gamma, cp.q)
    if not finite:
        return UpperBound(math.inf, False, 0.0, cond)
    if math.isinf(cp.q):
        return UpperBound(2.0, True, 0.0, cond, 1.0)
    integral = upper_integral(0.0, cp.gamma, cp.q)
    return UpperBound(1.0 + integral ** (1.0 / cp.q), True, 0.0, cond, integral)
