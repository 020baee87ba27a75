"""The radial averaging-minus-identity operators and their independent oracle.

The forward operator with parameter m acts on f as

    (1+m) / t**(1+m/2) * integral_0^t f(s) s**(m/2) ds  -  f(t)

and its adjoint as

    (1+m) * t**(m/2) * integral_t^inf f(s) / s**(1+m/2) ds  -  f(t).

Closed-form application uses the exact piecewise moment integrals.  The
independent oracle recomputes the same values by adaptive Simpson quadrature
with piece boundaries as mandatory panel breaks.  Superlevel sets are located
structurally: on every maximal region (piece, gap, or tail) the transformed
function is a two-term power expression whose threshold crossings solve in
closed form, and every genuine crossing is certified by bisection against the
quadrature oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .piecewise import (
    PiecewisePowerFunction,
    PowerPiece,
    evaluate,
    moment_integral,
    power_integral,
)

__all__ = [
    "Kind",
    "OperatorKind",
    "QuadratureError",
    "SuperlevelResult",
    "lambda_op",
    "lambda_star_op",
    "apply_closed_form",
    "apply_quadrature_oracle",
    "superlevel_measure",
    "eigen_check",
    "eigenvalue",
]

# Values within this relative slack of the threshold count as attaining it;
# the extremal families sit exactly on the threshold up to rounding.
THRESHOLD_SLACK = 1e-9

# Closed-form crossings must agree with oracle bisection to this tolerance.
CERTIFY_TOL = 1e-8

_MAX_SIMPSON_DEPTH = 48


class Kind(enum.Enum):
    LAMBDA = "lambda"
    LAMBDA_STAR = "lambda_star"


@dataclass(frozen=True)
class OperatorKind:
    """Which operator (forward or adjoint) and its integer parameter m >= 1."""

    kind: Kind
    m: int

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError(f"m must be an integer >= 1, got {self.m}")


def lambda_op(m: int) -> OperatorKind:
    return OperatorKind(Kind.LAMBDA, m)


def lambda_star_op(m: int) -> OperatorKind:
    return OperatorKind(Kind.LAMBDA_STAR, m)


class QuadratureError(RuntimeError):
    """Adaptive refinement exceeded its depth bound."""


@dataclass(frozen=True)
class SuperlevelResult:
    """Lebesgue measure and interval decomposition of {t : |Tf(t)| >= thr}."""

    measure: float
    intervals: tuple[tuple[float, float], ...]


def eigenvalue(op: OperatorKind, alpha: float) -> float:
    """Eigenvalue of ``t**alpha`` under the operator.

    Forward: (m/2 - alpha) / (1 + alpha + m/2) for alpha > -1 - m/2.
    Adjoint: (1 + alpha + m/2) / (m/2 - alpha) for alpha < m/2.
    """
    half = op.m / 2.0
    if op.kind is Kind.LAMBDA:
        if alpha <= -1.0 - half:
            raise ValueError(f"alpha must exceed {-1 - half}, got {alpha}")
        return (half - alpha) / (1.0 + alpha + half)
    if alpha >= half:
        raise ValueError(f"alpha must be below {half}, got {alpha}")
    return (1.0 + alpha + half) / (half - alpha)


def apply_closed_form(op: OperatorKind, f: PiecewisePowerFunction, t: float) -> float:
    """Exact operator value at ``t > 0`` via closed-form moment integrals."""
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    m = op.m
    if op.kind is Kind.LAMBDA:
        integral = moment_integral(f, m / 2.0, 0.0, t) if f.pieces else 0.0
        return (1.0 + m) * t ** (-1.0 - m / 2.0) * integral - evaluate(f, t)
    sup_hi = f.support()[1]
    integral = moment_integral(f, -1.0 - m / 2.0, t, sup_hi) if t < sup_hi else 0.0
    return (1.0 + m) * t ** (m / 2.0) * integral - evaluate(f, t)


def _adaptive_simpson(
    g: Callable[[float], float], a: float, b: float, tol: float
) -> float:
    """Adaptive Simpson on [a, b]; raises QuadratureError past the depth bound."""

    def simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(
        lo: float, hi: float, flo: float, fmid: float, fhi: float,
        whole: float, eps: float, depth: int,
    ) -> float:
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm = g(lmid)
        frm = g(rmid)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        if abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        if depth >= _MAX_SIMPSON_DEPTH:
            raise QuadratureError(
                f"adaptive Simpson did not converge on [{lo}, {hi}]"
            )
        # keep the tolerance per subpanel: halving it cannot keep up with
        # endpoint derivative singularities, and the Richardson correction
        # absorbs the accumulated slack
        return recurse(lo, mid, flo, flm, fmid, left, eps, depth + 1) + recurse(
            mid, hi, fmid, frm, fhi, right, eps, depth + 1
        )

    if a >= b:
        return 0.0
    fa, fm, fb = g(a), g(0.5 * (a + b)), g(b)
    whole = simpson(fa, fm, fb, b - a)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def apply_quadrature_oracle(
    op: OperatorKind, f: PiecewisePowerFunction, t: float, tol: float = 1e-10
) -> float:
    """Operator value recomputed by adaptive Simpson quadrature.

    Piece boundaries inside the integration range are mandatory panel breaks,
    so the integrand is smooth on every panel.
    """
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    m = op.m
    if op.kind is Kind.LAMBDA:
        lo, hi = 0.0, t
        weight = m / 2.0
        prefactor = (1.0 + m) * t ** (-1.0 - m / 2.0)
    else:
        lo, hi = t, f.support()[1]
        weight = -1.0 - m / 2.0
        prefactor = (1.0 + m) * t ** (m / 2.0)
    if lo >= hi:
        return -evaluate(f, t)

    def integrand(s: float) -> float:
        if s <= 0.0:
            return 0.0
        return evaluate(f, s) * s ** weight

    breaks = sorted(
        {lo, hi}
        | {b for pc in f.pieces for b in (pc.t_lo, pc.t_hi) if lo < b < hi}
    )
    panel_tol = tol / max(1, len(breaks) - 1)
    integral = 0.0
    for a, b in zip(breaks, breaks[1:]):
        # a panel's left endpoint belongs to the piece on its left; nudge
        # inward so the panel sees its own one-sided limit
        def panel_integrand(s: float, a: float = a, b: float = b) -> float:
            if s <= a:
                s = a + 1e-12 * (b - a)
            return integrand(s)

        integral += _adaptive_simpson(panel_integrand, a, b, panel_tol)
    return prefactor * integral - evaluate(f, t)


# --- structural superlevel sets -------------------------------------------
#
# A region is a maximal interval on which Tf is a single closed-form
# expression A * t**q + C:
#   * forward gaps and the tail carry the accumulated mass: A * t**(-1-m/2);
#   * adjoint gaps and the head below the support carry A * t**(m/2);
#   * inside a piece c0 + c1*t**p, extending the piece expression to a global
#     power function leaves A * t**q plus the eigen-image of the expression.
# Pieces whose eigen-image keeps a second non-constant power term (possible
# only when p differs from the operator's kernel exponent and from 0) do not
# reduce to two terms and are rejected.


@dataclass(frozen=True)
class _Region:
    lo: float
    hi: float  # math.inf for the forward tail
    coeff: float  # A
    q: float
    const: float  # C


def _negligible(coeff: float, q: float, lo: float, hi: float, scale: float) -> bool:
    if coeff == 0.0:
        return True
    hi_eff = hi if math.isfinite(hi) else 2.0 * max(lo, 1.0)
    mag = max(abs(coeff) * lo ** q if lo > 0.0 else 0.0, abs(coeff) * hi_eff ** q)
    return mag <= 1e-11 * scale


def _regions_lambda(op: OperatorKind, f: PiecewisePowerFunction) -> list[_Region]:
    m = op.m
    q = -1.0 - m / 2.0
    lam0 = m / (2.0 + m)
    regions: list[_Region] = []
    accumulated = 0.0  # integral of f(s) s**(m/2) over (0, current position]
    position = 0.0
    for pc in f.pieces:
        if pc.t_lo > position:
            regions.append(
                _Region(position, pc.t_lo, (1.0 + m) * accumulated, q, 0.0)
            )
        if pc.p <= q + 1e-12:
            raise ValueError(
                f"piece exponent {pc.p} is not integrable against the weight"
            )
        ext_lo = _piece_extension_moment(pc, m / 2.0, pc.t_lo)
        coeff = (1.0 + m) * (accumulated - ext_lo)
        const = pc.c0 * lam0
        lam_p = (m / 2.0 - pc.p) / (1.0 + pc.p + m / 2.0)
        pow_coeff = pc.c1 * lam_p
        if pc.p == 0.0:
            const += pow_coeff
            pow_coeff = 0.0
        scale = max(1.0, abs(const))
        if _negligible(pow_coeff, pc.p, pc.t_lo, pc.t_hi, scale):
            regions.append(_Region(pc.t_lo, pc.t_hi, coeff, q, const))
        elif _negligible(coeff, q, pc.t_lo, pc.t_hi, scale):
            regions.append(_Region(pc.t_lo, pc.t_hi, pow_coeff, pc.p, const))
        else:
            raise ValueError(
                "piece does not reduce to a two-term power expression under "
                f"the forward operator (p={pc.p}, m={m})"
            )
        accumulated += _piece_moment_over(pc, m / 2.0)
        position = pc.t_hi
    regions.append(_Region(position, math.inf, (1.0 + m) * accumulated, q, 0.0))
    return regions


def _regions_lambda_star(op: OperatorKind, f: PiecewisePowerFunction) -> list[_Region]:
    m = op.m
    q = m / 2.0
    lam0 = (2.0 + m) / m
    regions: list[_Region] = []
    tail = 0.0  # integral of f(s) s**(-1-m/2) over (current position, inf)
    position = f.support()[1]
    for pc in reversed(f.pieces):
        if pc.t_hi < position:
            regions.append(_Region(pc.t_hi, position, (1.0 + m) * tail, q, 0.0))
        if pc.p >= q - 1e-12:
            raise ValueError(
                f"piece exponent {pc.p} is not tail-integrable against the weight"
            )
        ext_hi = _piece_extension_tail(pc, m, pc.t_hi)
        coeff = (1.0 + m) * (tail - ext_hi)
        const = pc.c0 * lam0
        lam_p = (1.0 + pc.p + m / 2.0) / (m / 2.0 - pc.p)
        pow_coeff = pc.c1 * lam_p
        if pc.p == 0.0:
            const += pow_coeff
            pow_coeff = 0.0
        scale = max(1.0, abs(const))
        if _negligible(pow_coeff, pc.p, pc.t_lo, pc.t_hi, scale):
            regions.append(_Region(pc.t_lo, pc.t_hi, coeff, q, const))
        elif _negligible(coeff, q, pc.t_lo, pc.t_hi, scale):
            regions.append(_Region(pc.t_lo, pc.t_hi, pow_coeff, pc.p, const))
        else:
            raise ValueError(
                "piece does not reduce to a two-term power expression under "
                f"the adjoint operator (p={pc.p}, m={m})"
            )
        tail += _piece_moment_over(pc, -1.0 - m / 2.0)
        position = pc.t_lo
    if position > 0.0:
        regions.append(_Region(0.0, position, (1.0 + m) * tail, q, 0.0))
    return sorted(regions, key=lambda r: r.lo)


def _piece_moment_over(pc, weight: float) -> float:
    total = 0.0
    if pc.c0 != 0.0:
        total += pc.c0 * power_integral(weight, pc.t_lo, pc.t_hi)
    if pc.c1 != 0.0:
        total += pc.c1 * power_integral(pc.p + weight, pc.t_lo, pc.t_hi)
    return total


def _piece_extension_moment(pc, weight: float, upto: float) -> float:
    """Integral of the piece expression times t**weight over (0, upto]."""
    total = 0.0
    if pc.c0 != 0.0:
        total += pc.c0 * upto ** (weight + 1.0) / (weight + 1.0)
    if pc.c1 != 0.0:
        e1 = pc.p + weight + 1.0
        total += pc.c1 * upto ** e1 / e1
    return total


def _piece_extension_tail(pc, m: int, from_t: float) -> float:
    """Integral of the piece expression times t**(-1-m/2) over [from_t, inf)."""
    half = m / 2.0
    total = 0.0
    if pc.c0 != 0.0:
        total += pc.c0 * from_t ** (-half) / half
    if pc.c1 != 0.0:
        total += pc.c1 * from_t ** (pc.p - half) / (half - pc.p)
    return total


def _region_value(region: _Region, t: float) -> float:
    return region.coeff * t ** region.q + region.const


def _region_intervals(
    region: _Region, thr: float
) -> list[tuple[float, float, bool, bool]]:
    """Intervals of {|A t**q + C| >= thr} in (lo, hi).

    Returns (u, v, u_is_crossing, v_is_crossing); endpoints that are region
    boundaries are not crossings.
    """
    lo, hi = region.lo, region.hi
    slack = THRESHOLD_SLACK * thr
    crossings: list[float] = []
    if region.coeff != 0.0 and region.q != 0.0:
        for target in (thr, -thr):
            # A crossing of target needs the power term to bridge the gap
            # between the constant and the target; a sub-slack gap is a
            # plateau sitting on the threshold, not a crossing.
            if abs(target - region.const) <= slack:
                continue
            ratio = (target - region.const) / region.coeff
            if ratio > 0.0 and math.isfinite(ratio):
                try:
                    t_cross = ratio ** (1.0 / region.q)
                except OverflowError:
                    continue
                near_lo = lo > 0.0 and abs(t_cross - lo) <= 1e-12 * lo
                near_hi = math.isfinite(hi) and abs(t_cross - hi) <= 1e-12 * hi
                if lo < t_cross < hi and not near_lo and not near_hi:
                    crossings.append(t_cross)
    crossings.sort()
    points = [lo] + crossings + [hi]
    out: list[tuple[float, float, bool, bool]] = []
    for i, (u, v) in enumerate(zip(points, points[1:])):
        if math.isfinite(v):
            mid = math.sqrt(u * v) if u > 0.0 else 0.5 * v
        else:
            mid = 2.0 * u if u > 0.0 else 1.0
        if abs(_region_value(region, mid)) >= thr - slack:
            if not math.isfinite(v):
                raise ValueError("superlevel set is unbounded")
            out.append((u, v, 0 < i, i < len(points) - 2))
    return out


def _certify_crossing(
    op: OperatorKind, f: PiecewisePowerFunction, t_cross: float, thr: float
) -> None:
    """Bisect |Tf| - thr (via the quadrature oracle) around a crossing."""

    def residual(t: float) -> float:
        return abs(apply_quadrature_oracle(op, f, t, tol=1e-12)) - thr

    delta = 1e-3 * t_cross
    lo, hi = t_cross - delta, t_cross + delta
    r_lo, r_hi = residual(lo), residual(hi)
    if r_lo == 0.0 or r_hi == 0.0:
        return
    if math.copysign(1.0, r_lo) == math.copysign(1.0, r_hi):
        raise RuntimeError(
            f"oracle does not bracket the crossing at t={t_cross}"
        )
    while hi - lo > 1e-10 * t_cross:
        mid = 0.5 * (lo + hi)
        r_mid = residual(mid)
        if r_mid == 0.0:
            lo = hi = mid
            break
        if math.copysign(1.0, r_mid) == math.copysign(1.0, r_lo):
            lo, r_lo = mid, r_mid
        else:
            hi = mid
    certified = 0.5 * (lo + hi)
    if abs(certified - t_cross) > CERTIFY_TOL * max(1.0, t_cross):
        raise RuntimeError(
            f"closed-form crossing {t_cross} disagrees with oracle "
            f"bisection {certified}"
        )


def superlevel_measure(
    op: OperatorKind,
    f: PiecewisePowerFunction,
    threshold: float = 1.0,
    certify: bool = True,
) -> SuperlevelResult:
    """Measure of {t : |Tf(t)| >= threshold} with its interval decomposition.

    Crossing endpoints are certified against the quadrature oracle unless
    ``certify`` is False.  Adjacent intervals meeting at region boundaries
    are merged.
    """
    if threshold <= 0.0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    if not f.pieces:
        return SuperlevelResult(0.0, ())
    if op.kind is Kind.LAMBDA:
        regions = _regions_lambda(op, f)
    else:
        regions = _regions_lambda_star(op, f)
    raw: list[tuple[float, float, bool, bool]] = []
    for region in regions:
        raw.extend(_region_intervals(region, threshold))
    raw.sort(key=lambda item: item[0])
    if certify:
        for u, v, u_cross, v_cross in raw:
            if u_cross:
                _certify_crossing(op, f, u, threshold)
            if v_cross:
                _certify_crossing(op, f, v, threshold)
    merged: list[list[float]] = []
    for u, v, _, _ in raw:
        if merged and u - merged[-1][1] <= 1e-12 * max(1.0, u):
            merged[-1][1] = v
        else:
            merged.append([u, v])
    intervals = tuple((u, v) for u, v in merged)
    measure = sum(v - u for u, v in intervals)
    return SuperlevelResult(measure, intervals)


def eigen_check(
    op: OperatorKind, alpha: float, t_samples: list[float]
) -> float:
    """Max deviation |T(t**alpha)(t) - lam * t**alpha| over the samples.

    The power function is truncated to a finite support; adjoint samples must
    stay a factor 1e3 below the truncation point so the tail error is
    negligible.
    """
    if not t_samples:
        raise ValueError("need at least one sample point")
    if min(t_samples) <= 0.0:
        raise ValueError("sample points must be positive")
    lam = eigenvalue(op, alpha)
    if op.kind is Kind.LAMBDA:
        t_hi = 2.0 * max(t_samples)
    else:
        t_hi = 1e6
        if max(t_samples) > 1e-3 * t_hi:
            raise ValueError(
                f"adjoint samples must not exceed {1e-3 * t_hi}"
            )
    f = PiecewisePowerFunction((PowerPiece(0.0, t_hi, 0.0, 1.0, alpha),))
    worst = 0.0
    for t in t_samples:
        deviation = abs(apply_closed_form(op, f, t) - lam * t ** alpha)
        worst = max(worst, deviation)
    return worst
