"""Maximization, root finding, the optimal curves, duality, and uniform bounds.

All searches are deterministic: a fixed feasibility-mapped grid feeds a
Nelder-Mead refinement (reflection 1, expansion 2, contraction 0.5, shrink
0.5, clipped to the feasible closure), one-dimensional scans feed
golden-section refinement, and every root is found by bisection on an
analytically sign-certified bracket.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, minimize

from . import families, functionals
from .families import FSpecParams
from .functionals import LOG_2, LOG_32, W, W_star

__all__ = [
    "Method",
    "OptimumRecord",
    "DualityRecord",
    "UniformBoundConstants",
    "UniformBoundRecord",
    "AuxSupremumRecord",
    "PushCheckRecord",
    "THETA",
    "UNIFORM_BOUND_CONSTANTS",
    "maximize_W",
    "d_opt",
    "d_star_opt",
    "duality_map",
    "maximize_on_curve",
    "x_infinity",
    "curve_supremum",
    "u0",
    "bound_poly",
    "bound_134",
    "push_check",
    "aux_suprema",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# 2 e^{-1/2} - 1: the limiting coefficient 2 b^{-m/2} - 1 at b = e^{1/m}.
THETA = 2.0 * math.exp(-0.5) - 1.0


class Method(enum.Enum):
    GRID_THEN_NELDER_MEAD = "grid_then_nelder_mead"
    CURVE_SCAN = "curve_scan"


@dataclass(frozen=True)
class OptimumRecord:
    m: int
    b: float
    d: float
    value: float
    evaluations: int
    method: Method


@dataclass(frozen=True)
class DualityRecord:
    """Image of b under the duality map with the residuals of its three claims."""

    b: float
    m: int
    b_star: float
    t0_star_residual: float
    d_star_opt_residual: float
    w_residual: float


def _golden_max(fn, lo: float, hi: float, tol: float = 1e-12,
                max_iter: int = 200) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi]; handles endpoint maxima."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fn(x1)
    candidates = [(fn(lo), lo), (fn(hi), hi), (f1, x1), (f2, x2)]
    best_value, best_x = max(candidates, key=lambda item: item[0])
    return best_x, best_value


def maximize_W(
    m: int, grid_resolution: int = 64, refine_tol: float = 1e-10
) -> OptimumRecord:
    """Grid over the feasible region mapped to the unit square, then Nelder-Mead.

    Ties on the grid break toward smaller b, then smaller d.  The refinement
    objective clips (u, v) to the unit square, so the search never leaves the
    closure of the feasible region.  Deterministic for fixed inputs.
    """
    if grid_resolution < 2:
        raise ValueError(f"grid_resolution must be at least 2, got {grid_resolution}")
    lo_b, hi_b = families.b_min(m), families.b_max(m)
    evaluations = 0

    def bd_of(u: float, v: float) -> tuple[float, float]:
        u = min(max(u, 0.0), 1.0)
        v = min(max(v, 0.0), 1.0)
        b = lo_b + u * (hi_b - lo_b) * (1.0 - 1e-9)
        d_lo, d_hi = families.d_min(b, m), families.d_max(b, m)
        return b, d_lo + v * (d_hi - d_lo)

    def value(u: float, v: float) -> float:
        nonlocal evaluations
        evaluations += 1
        b, d = bd_of(u, v)
        try:
            return W(b, d, m)
        except functionals.DenominatorError:
            return -math.inf

    ticks = np.linspace(0.0, 1.0, grid_resolution)
    best = (-math.inf, 0.0, 0.0)
    for u in ticks:
        for v in ticks:
            candidate = value(u, v)
            if candidate > best[0]:
                best = (candidate, u, v)

    result = minimize(
        lambda uv: -value(uv[0], uv[1]),
        x0=np.array([best[1], best[2]]),
        method="Nelder-Mead",
        options={"xatol": refine_tol, "fatol": refine_tol, "maxiter": 2000},
    )
    u_best, v_best = result.x
    b, d = bd_of(u_best, v_best)
    final = W(b, d, m)
    if final < best[0]:
        b, d = bd_of(best[1], best[2])
        final = W(b, d, m)
    return OptimumRecord(m, b, d, final, evaluations, Method.GRID_THEN_NELDER_MEAD)


def d_opt(b: float, m: int) -> float:
    """The d-coordinate of the forward optimal curve at b in [b_min, b_max).

    Explicit solution of the stationarity equation of the restricted ratio in
    b at fixed d; always lies in [d_min(b), d_max(b)].
    """
    lo, hi = families.b_min(m), families.b_max(m)
    if not (lo * (1.0 - 1e-12) <= b < hi):
        raise ValueError(f"b must lie in [b_min, b_max) = [{lo}, {hi}), got {b}")
    coeff = 2.0 * b ** (-m / 2.0) - 1.0
    rhs = -m * coeff * b ** (1.0 + m / 2.0) + 2.0 * (2.0 + m) * families.t_0(b, m)
    return (rhs / (2.0 * (1.0 + m) * coeff)) ** (2.0 / (2.0 + m))


def d_star_opt(b_star: float, m: int) -> float:
    """The d*-coordinate of the adjoint optimal curve at b* in (b*_min, b*_max].

    For m = 1 and b* below the adjoint split point the value drops below
    d*_min(b*); the defining equation is unchanged.
    """
    lo, hi = families.b_star_min(m), families.b_star_max(m)
    if not (lo < b_star <= hi * (1.0 + 1e-12)):
        raise ValueError(
            f"b* must lie in (b*_min, b*_max] = ({lo}, {hi}], got {b_star}"
        )
    coeff = 2.0 * b_star ** (1.0 + m / 2.0) - 1.0
    rhs = -(2.0 + m) * coeff * b_star ** (-m / 2.0) + 2.0 * m * families.t_0_star(
        b_star, m
    )
    return (rhs / (2.0 * (1.0 + m) * coeff)) ** (-2.0 / m)


def duality_map(b: float, m: int) -> DualityRecord:
    """b* = t_0(b)/d_opt(b) and the residuals of the three duality identities.

    The identities: t_0*(b*) = b/d_opt(b), d*_opt(b*) = 1/d_opt(b), and the
    adjoint ratio on its optimal curve at b* equals the forward ratio on its
    optimal curve at b.
    """
    d_at = d_opt(b, m)
    b_star = families.t_0(b, m) / d_at
    t0_star_residual = abs(families.t_0_star(b_star, m) - b / d_at)
    d_star_at = d_star_opt(b_star, m)
    d_star_opt_residual = abs(d_star_at - 1.0 / d_at)
    w_residual = abs(W_star(b_star, d_star_at, m) - W(b, d_at, m))
    return DualityRecord(
        b, m, b_star, t0_star_residual, d_star_opt_residual, w_residual
    )


def maximize_on_curve(
    m: int, samples: int = 400, refine_tol: float = 1e-12
) -> OptimumRecord:
    """Scan b -> W(b, d_opt(b)) on [b_min, b_tilde_max], then golden-section."""
    lo = families.b_min(m)
    hi = families.b_tilde_max(m)
    if m >= 2:
        hi = hi * (1.0 - 1e-9)  # the curve leaves the closure at b_max itself
    evaluations = 0

    def value(b: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return W(b, d_opt(b, m), m)

    grid = np.linspace(lo, hi, samples)
    values = [value(b) for b in grid]
    index = int(np.argmax(values))
    bracket_lo = grid[max(0, index - 1)]
    bracket_hi = grid[min(samples - 1, index + 1)]
    b_best, best = _golden_max(value, bracket_lo, bracket_hi, refine_tol)
    return OptimumRecord(m, b_best, d_opt(b_best, m), best, evaluations, Method.CURVE_SCAN)


def _asymptotic_on_curve(x: float) -> float:
    """The restricted asymptotic ratio along the curve e^x = 2(2 - e^x) e^y."""
    log_term = math.log(2.0 * (2.0 - math.exp(x)))
    return (2.0 * x - log_term) / (math.exp(x) - 2.0 * x - log_term)


def x_infinity(tol: float) -> float:
    """Root of e^x (1 - 2x) - (2 - e^x) ln(2(2 - e^x)) on [ln(3/2), ln 2).

    Bisection on an analytically sign-certified bracket; the integrand is
    verified strictly decreasing on the bracket by sampled differences.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")

    def h(x: float) -> float:
        ex = math.exp(x)
        return ex * (1.0 - 2.0 * x) - (2.0 - ex) * math.log(2.0 * (2.0 - ex))

    lo, hi = LOG_32, LOG_2 - 1e-12
    samples = [h(x) for x in np.linspace(lo, hi, 64)]
    if any(b >= a for a, b in zip(samples, samples[1:])):
        raise RuntimeError("monotonicity check failed on the bracket")
    if not (samples[0] > 0.0 > samples[-1]):
        raise RuntimeError("bracket does not change sign")
    # bisect to at least 1e-13 bracket width even when asked for less
    return bisect(h, lo, hi, xtol=max(min(tol, 1e-13), 1e-15))


def curve_supremum(tol: float = 1e-12) -> float:
    """The asymptotic curve supremum 1 / (e^{x_inf} - 1)."""
    return 1.0 / (math.exp(x_infinity(tol)) - 1.0)


# --- uniform lower bound machinery ---------------------------------------------

def u0(m: float) -> float:
    """Scaled log of the restricted sign change at b = e^{1/m}: m ln t_0(e^{1/m}, m)."""
    return 2.0 * math.log((2.0 + m) / (2.0 * (1.0 + m) * THETA))


def bound_poly(m: float, quad_bound: float) -> float:
    """Quartic upper polynomial for the scaled denominator at (e^{1/m}, e^{3/m}).

    ``quad_bound`` bounds u0(m)^2 (1 + e^delta delta / 3) from above.
    """
    k = 4.0 * THETA * math.exp(1.5)
    el = -4.0 * math.log(2.0 * THETA)
    return (
        (2.0 * k + 2.0 * el - 10.0) * m ** 4
        + (10.0 * k + 6.0 * el + 2.0 * quad_bound - 45.0) * m ** 3
        + (23.0 * k + 4.0 * el + 6.0 * quad_bound - 87.0) * m ** 2
        + (24.0 * k + 4.0 * quad_bound - 96.0) * m
        + (9.0 * k - 36.0)
    )


def rational_lower_bound(m: float, quad_bound: float = 3.3) -> float:
    """6 m (m+1) (m+3/2) (m+2) / bound_poly(m, quad_bound)."""
    return 6.0 * m * (m + 1.0) * (m + 1.5) * (m + 2.0) / bound_poly(m, quad_bound)


@dataclass(frozen=True)
class UniformBoundConstants:
    """The constants behind the uniform lower bound 1.34."""

    theta: float
    growth: float  # 4 theta e^{3/2}
    log_shift: float  # -4 ln(2 theta)


UNIFORM_BOUND_CONSTANTS = UniformBoundConstants(
    theta=THETA,
    growth=4.0 * THETA * math.exp(1.5),
    log_shift=-4.0 * math.log(2.0 * THETA),
)


@dataclass(frozen=True)
class UniformBoundRecord:
    m: int
    pair_feasible: bool
    w_value: float
    u0: float
    rational_bound: float | None
    meets_134: bool


def bound_134(m_values) -> list[UniformBoundRecord]:
    """Per-m report of the uniform lower bound at (b, d) = (e^{1/m}, e^{3/m}).

    For m <= 3 the exponential pair can violate the feasibility constraints,
    so the curve optimum stands in for the direct evaluation.  From m = 25 on
    the rational lower bound with quad_bound 3.3 is also reported.
    """
    out = []
    for m in m_values:
        feasible = True
        try:
            FSpecParams(m, math.exp(1.0 / m), math.exp(3.0 / m))
        except families.ConstraintViolation:
            feasible = False
        if m <= 3:
            w_value = maximize_on_curve(m).value
        else:
            w_value = W(math.exp(1.0 / m), math.exp(3.0 / m), m)
        rational = rational_lower_bound(m) if m >= 25 else None
        out.append(
            UniformBoundRecord(
                m, feasible, w_value, u0(m), rational, w_value >= 1.34
            )
        )
    return out


# --- push property of the asymptotic program -------------------------------------

@dataclass(frozen=True)
class PushCheckRecord:
    """Grid search for asymptotic ratios beating the curve supremum.

    The grid is capped at x <= x_cap, y <= y_cap; beyond the caps the ratio is
    checked to decrease along a sparse set of rays (ray_check_ok).
    """

    resolution: int
    curve_supremum: float
    max_violation: float
    worst_point: tuple[float, float, float]
    ray_check_ok: bool
    x_cap: float
    y_cap: float


def _ratio_grid_over_z(x: float, y: float, z: np.ndarray) -> np.ndarray:
    """Vectorized general asymptotic ratio at fixed (x, y) over a z-array."""
    ex = math.exp(x)
    ey = math.exp(y)
    base = math.log(2.0 * ex - 2.0)
    with np.errstate(divide="ignore"):
        shifted = base - np.log(2.0 - z)
    x_hat = x + np.minimum(np.maximum(0.0, base), shifted)
    magnitude = np.abs(-2.0 + z * ey)
    y_hat = y + np.where(magnitude > 1.0, np.log(np.maximum(magnitude, 1e-300)), 0.0)
    integral = np.where(
        z >= 1.0,
        -y + z * (ey - 1.0),
        np.where(
            z <= math.exp(-y),
            y - z * (ey - 1.0),
            -2.0 * np.log(np.maximum(z, 1e-300)) - y + z * (ey + 1.0) - 2.0,
        ),
    )
    return (x_hat + y_hat) / (2.0 * ex - x - 2.0 + integral)


def push_check(grid_resolution: int, x_cap: float = 3.0, y_cap: float = 5.0) -> PushCheckRecord:
    """Max over the capped grid of (general asymptotic ratio - curve supremum).

    A nonpositive result (up to grid tolerance) means no admissible (x, y, z)
    beats the curve supremum.
    """
    if grid_resolution < 16:
        raise ValueError(f"resolution must be at least 16, got {grid_resolution}")
    supremum = curve_supremum()
    worst = -math.inf
    worst_point = (0.0, 0.0, 0.0)
    xs = np.linspace(1e-6, x_cap, grid_resolution)
    ys = np.linspace(1e-6, y_cap, grid_resolution)
    for x in xs:
        z_lo = 2.0 * (2.0 - math.exp(x))
        zs = np.linspace(z_lo, 2.0 - 1e-9, grid_resolution)
        for y in ys:
            ratios = _ratio_grid_over_z(x, y, zs)
            index = int(np.argmax(ratios))
            if ratios[index] > worst:
                worst = float(ratios[index])
                worst_point = (float(x), float(y), float(zs[index]))
    ray_ok = True
    for scale_a, scale_b in ((1.0, 1.5), (1.5, 2.0), (2.0, 3.0)):
        for z in (0.5, 1.0, 1.9):
            a = _ratio_grid_over_z(x_cap * scale_a, y_cap * scale_a, np.array([z]))[0]
            b = _ratio_grid_over_z(x_cap * scale_b, y_cap * scale_b, np.array([z]))[0]
            if b > a:
                ray_ok = False
    return PushCheckRecord(
        grid_resolution, supremum, worst - supremum, worst_point, ray_ok,
        x_cap, y_cap,
    )


# --- auxiliary one-dimensional suprema -------------------------------------------

@dataclass(frozen=True)
class AuxSupremumRecord:
    name: str
    lo: float
    hi: float
    argmax: float
    supremum: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.supremum <= self.bound


def _aux_y_branch(y: float) -> float:
    return (y + math.log(2.0 * math.exp(y) - 2.0)) / (-y + 2.0 * (math.exp(y) - 1.0))


def _aux_diagonal(x: float) -> float:
    return x / (4.0 * math.exp(x) - math.exp(2.0 * x) - x - 3.0)


def _aux_curve_branch(x: float) -> float:
    ex = math.exp(x)
    return (2.0 * x - math.log(2.0 - ex) + math.log(2.0 * ex - 2.0)) / (
        2.0 * ex - 2.0 * x - 2.0 * LOG_2 - math.log(2.0 - ex)
    )


def _aux_z_edge(z: float) -> float:
    return (2.0 * LOG_32 + math.log(2.0 / z)) / (
        4.0 - 2.0 * LOG_32 - math.log(2.0 / z) - z
    )


def _aux_low_x_branch(x: float) -> float:
    """Second branch paired with the y-branch bound; shares its 1.1 ceiling."""
    ex = math.exp(x)
    return (2.0 * x + LOG_2 + math.log(4.0 * (2.0 - ex) * ex - 2.0)) / (
        2.0 * ex - 2.0 * x - 2.0 - LOG_2 + 2.0 * (2.0 - ex) * (2.0 * ex - 1.0)
    )


_AUX_SPECS = (
    ("y-branch", _aux_y_branch, LOG_32, LOG_2, 1.1),
    ("diagonal", _aux_diagonal, 1e-9, LOG_32, 1.18),
    ("curve-branch", _aux_curve_branch, LOG_32, LOG_2 - 1e-9, 1.3),
    ("z-edge", _aux_z_edge, 1.0, 2.0, 1.1),
)


def aux_suprema(scan_samples: int = 2000) -> list[AuxSupremumRecord]:
    """Maximize the four auxiliary one-variable ratios over their intervals.

    Each is scanned on a dense grid and refined by golden section; the
    reported suprema respect the declared bounds 1.1, 1.18, 1.3, 1.1, with
    the diagonal supremum equal to ln(3/2) / (3/4 - ln(3/2)) attained at the
    right endpoint.
    """
    out = []
    for name, fn, lo, hi, bound in _AUX_SPECS:
        grid = np.linspace(lo, hi, scan_samples)
        values = [fn(x) for x in grid]
        index = int(np.argmax(values))
        argmax, supremum = _golden_max(
            fn, grid[max(0, index - 1)], grid[min(scan_samples - 1, index + 1)]
        )
        out.append(AuxSupremumRecord(name, lo, hi, argmax, supremum, bound))
    return out


def aux_low_x_supremum(scan_samples: int = 2000) -> AuxSupremumRecord:
    """The companion low-x branch, also bounded by 1.1."""
    grid = np.linspace(1e-9, LOG_32, scan_samples)
    values = [_aux_low_x_branch(x) for x in grid]
    index = int(np.argmax(values))
    argmax, supremum = _golden_max(
        _aux_low_x_branch,
        grid[max(0, index - 1)],
        grid[min(scan_samples - 1, index + 1)],
    )
    return AuxSupremumRecord("low-x-branch", 1e-9, LOG_32, argmax, supremum, 1.1)
