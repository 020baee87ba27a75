"""Named verification suites bundling the invariants of all modules.

Each suite runs deterministically under a caller-supplied seed and returns a
CheckReport; a report passes iff worst_residual <= tolerance.  Suites with a
single natural tolerance (eigen, plateau, plateau_adjoint, scaling, duality)
report raw residuals against it.  Composite suites mix magnitude checks
(contributing raw/required) with one-sided bound checks (contributing 0 when
satisfied, 1 + deficit when not) and declare a tolerance of 1.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from . import families, functionals, operators, optimize
from .families import FSpecParams, FStarSpecParams, GeneralFamilyParams
from .functionals import W, W_star, gill_bound
from .operators import lambda_op, lambda_star_op

__all__ = [
    "Status",
    "CheckReport",
    "SUITE_NAMES",
    "run_suite",
    "reports_to_json",
]


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: Status
    worst_residual: float
    tolerance: float
    seed: int
    details: tuple[tuple[str, float], ...]


class _Collector:
    """Accumulates normalized subresiduals and keeps the worst few."""

    def __init__(self) -> None:
        self.entries: list[tuple[str, float]] = []

    def metric(self, name: str, raw: float, required: float) -> None:
        self.entries.append((name, abs(raw) / required))

    def bound(self, name: str, ok: bool, deficit: float = 0.0) -> None:
        self.entries.append((name, 0.0 if ok else 1.0 + abs(deficit)))

    def report(self, name: str, seed: int, tolerance: float = 1.0) -> CheckReport:
        worst = max((value for _, value in self.entries), default=0.0)
        ranked = sorted(self.entries, key=lambda item: -item[1])[:5]
        status = Status.PASS if worst <= tolerance else Status.FAIL
        return CheckReport(name, status, worst, tolerance, seed, tuple(ranked))


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _random_spec(rng: np.random.Generator, m_hi: int = 8) -> FSpecParams:
    m = int(rng.integers(1, m_hi + 1))
    u = rng.uniform(0.02, 0.98)
    v = rng.uniform(0.02, 0.98)
    b = families.b_min(m) + u * (families.b_max(m) - families.b_min(m))
    d = families.d_min(b, m) + v * (families.d_max(b, m) - families.d_min(b, m))
    return FSpecParams(m, b, d)


def _random_star_spec(rng: np.random.Generator, m_hi: int = 8) -> FStarSpecParams:
    m = int(rng.integers(1, m_hi + 1))
    u = rng.uniform(0.02, 0.98)
    v = rng.uniform(0.02, 0.98)
    bs = families.b_star_min(m) + u * (
        families.b_star_max(m) - families.b_star_min(m)
    )
    ds = families.d_star_min(bs, m) + v * (
        families.d_star_max(bs, m) - families.d_star_min(bs, m)
    )
    return FStarSpecParams(m, bs, ds)


def _random_general(rng: np.random.Generator, m_hi: int = 8) -> GeneralFamilyParams:
    m = int(rng.integers(1, m_hi + 1))
    a = rng.uniform(0.3, 3.0)
    b = a * rng.uniform(1.05, 2.0)
    c = b if rng.uniform() < 0.3 else b * rng.uniform(1.0, 2.0)
    d = c * rng.uniform(1.05, 2.5)
    return GeneralFamilyParams(m, a, b, c, d)


# --- suites ---------------------------------------------------------------------

def _suite_eigen(seed: int) -> CheckReport:
    collector = _Collector()
    for m in range(1, 9):
        op = lambda_op(m)
        alphas = np.arange(-1.0 - m / 2.0 + 0.5, 3.0 + 1e-9, 0.5)
        for alpha in alphas:
            dev = operators.eigen_check(op, float(alpha), [0.5, 1.0, 2.0])
            collector.metric(f"forward m={m} alpha={alpha}", dev, 1.0)
        op = lambda_star_op(m)
        alphas = np.arange(-3.0, m / 2.0 - 2.0 + 1e-9, 0.5)
        for alpha in alphas:
            dev = operators.eigen_check(op, float(alpha), [0.5, 1.0, 2.0])
            collector.metric(f"adjoint m={m} alpha={alpha}", dev, 1.0)
    return collector.report("eigen", seed, tolerance=1e-10)


def _suite_plateau(seed: int) -> CheckReport:
    collector = _Collector()
    rng = _rng(seed, 1)
    for _ in range(40):
        params = _random_general(rng)
        f = families.build_general(params)
        op = lambda_op(params.m)
        worst = 0.0
        for frac in np.linspace(0.02, 0.98, 20):
            t = params.a + frac * (params.b - params.a)
            worst = max(worst, abs(operators.apply_closed_form(op, f, t) - 1.0))
            t = params.c + frac * (params.d - params.c)
            worst = max(worst, abs(operators.apply_closed_form(op, f, t) + 1.0))
        collector.metric(
            f"m={params.m} a={params.a:.3f} b={params.b:.3f} "
            f"c={params.c:.3f} d={params.d:.3f}",
            worst,
            1.0,
        )
    return collector.report("plateau", seed, tolerance=1e-9)


def _build_star_general(m: int, a_s: float, b_s: float, c_s: float, d_s: float):
    from .piecewise import PiecewisePowerFunction, PowerPiece

    neg = -1.0 - m / 2.0
    coeff_b = -2.0 * (1.0 + m) * a_s ** (1.0 + m / 2.0) / (2.0 + m)
    lead = 2.0 * (1.0 + m) * c_s ** (1.0 + m / 2.0) / (2.0 + m)
    coeff_d = lead * (1.0 + (c_s / b_s) ** (m / 2.0)) + coeff_b * (c_s / b_s) ** (
        1.0 + m
    )
    return PiecewisePowerFunction(
        (
            PowerPiece(d_s, c_s, -m / (2.0 + m), coeff_d, neg),
            PowerPiece(b_s, a_s, m / (2.0 + m), coeff_b, neg),
        )
    )


def _suite_plateau_adjoint(seed: int) -> CheckReport:
    collector = _Collector()
    rng = _rng(seed, 2)
    for _ in range(40):
        m = int(rng.integers(1, 9))
        a_s = rng.uniform(0.5, 3.0)
        b_s = a_s * rng.uniform(0.4, 0.95)
        c_s = b_s if rng.uniform() < 0.3 else b_s * rng.uniform(0.4, 0.99)
        d_s = c_s * rng.uniform(0.3, 0.9)
        f = _build_star_general(m, a_s, b_s, c_s, d_s)
        op = lambda_star_op(m)
        worst = 0.0
        for frac in np.linspace(0.02, 0.98, 20):
            t = d_s + frac * (c_s - d_s)
            worst = max(worst, abs(operators.apply_closed_form(op, f, t) + 1.0))
            t = b_s + frac * (a_s - b_s)
            worst = max(worst, abs(operators.apply_closed_form(op, f, t) - 1.0))
        collector.metric(
            f"m={m} a*={a_s:.3f} b*={b_s:.3f} c*={c_s:.3f} d*={d_s:.3f}",
            worst,
            1.0,
        )
    return collector.report("plateau_adjoint", seed, tolerance=1e-9)


def _suite_oracle(seed: int) -> CheckReport:
    collector = _Collector()
    rng = _rng(seed, 3)
    # closed form vs adaptive Simpson at sample points
    for _ in range(200):
        params = _random_spec(rng)
        f = families.build_spec(params)
        op = lambda_op(params.m)
        worst = 0.0
        for t in rng.uniform(0.3, 1.5 * params.d, size=50):
            closed = operators.apply_closed_form(op, f, float(t))
            quad = operators.apply_quadrature_oracle(op, f, float(t), tol=1e-10)
            worst = max(worst, abs(closed - quad))
        collector.metric(
            f"quadrature m={params.m} b={params.b:.3f} d={params.d:.3f}",
            worst,
            1e-8,
        )
    # closed-form ratio vs structural superlevel / exact L1
    for _ in range(300):
        params = _random_spec(rng)
        f = families.build_spec(params)
        report = functionals.oracle_ratio(lambda_op(params.m), f)
        residual = abs(W(params.b, params.d, params.m) - report.ratio)
        collector.metric(
            f"ratio m={params.m} b={params.b:.3f} d={params.d:.3f}",
            residual,
            1e-7,
        )
        measured = operators.superlevel_measure(lambda_op(params.m), f)
        single = (
            len(measured.intervals) == 1
            and abs(measured.intervals[0][0] - 1.0) <= 1e-9
            and abs(measured.intervals[0][1] - params.d) <= 1e-9 * params.d
        )
        collector.bound(
            f"single interval m={params.m} b={params.b:.3f} d={params.d:.3f}",
            single,
        )
    for _ in range(300):
        params = _random_star_spec(rng)
        f = families.build_star_spec(params)
        report = functionals.oracle_ratio(lambda_star_op(params.m), f)
        residual = abs(
            W_star(params.b_star, params.d_star, params.m) - report.ratio
        )
        collector.metric(
            f"adjoint ratio m={params.m} b*={params.b_star:.3f} "
            f"d*={params.d_star:.3f}",
            residual,
            1e-7,
        )
        measured = operators.superlevel_measure(lambda_star_op(params.m), f)
        single = (
            len(measured.intervals) == 1
            and abs(measured.intervals[0][0] - params.d_star) <= 1e-9
            and abs(measured.intervals[0][1] - 1.0) <= 1e-9
        )
        collector.bound(
            f"adjoint single interval m={params.m} b*={params.b_star:.3f} "
            f"d*={params.d_star:.3f}",
            single,
        )
    return collector.report("oracle", seed)


def _suite_scaling(seed: int) -> CheckReport:
    from .piecewise import dilate, l1_norm

    collector = _Collector()
    rng = _rng(seed, 4)
    for _ in range(30):
        params = _random_spec(rng)
        lam = float(rng.uniform(0.3, 3.0))
        threshold = float(rng.choice([0.7, 1.0]))
        f = families.build_spec(params)
        op = lambda_op(params.m)
        scaled = dilate(f, lam)
        base_measure = operators.superlevel_measure(op, f, threshold).measure
        scaled_measure = operators.superlevel_measure(op, scaled, threshold).measure
        collector.metric(
            f"superlevel m={params.m} lam={lam:.3f} thr={threshold}",
            (scaled_measure - lam * base_measure) / (lam * base_measure),
            1.0,
        )
        collector.metric(
            f"l1 m={params.m} lam={lam:.3f}",
            (l1_norm(scaled) - lam * l1_norm(f)) / (lam * l1_norm(f)),
            1.0,
        )
    return collector.report("scaling", seed, tolerance=1e-9)


def _suite_boundaries(seed: int) -> CheckReport:
    from .piecewise import evaluate

    collector = _Collector()
    rng = _rng(seed, 5)
    for m in range(1, 21):
        lo, hi = families.b_min(m), families.b_max(m)
        bs = np.sort(lo + rng.uniform(0.01, 0.99, size=50) * (hi - lo))
        d_mins = [families.d_min(float(b), m) for b in bs]
        d_maxs = [families.d_max(float(b), m) for b in bs]
        t0s = [families.t_0(float(b), m) for b in bs]
        collector.metric(
            f"t_0 == d_min m={m}",
            max(abs(x - y) for x, y in zip(d_mins, t0s)),
            1e-15,
        )
        collector.bound(
            f"d_min < d_max m={m}",
            all(x < y for x, y in zip(d_mins, d_maxs)),
        )
        collector.bound(
            f"d_min, d_max increasing m={m}",
            all(x < y for x, y in zip(d_mins, d_mins[1:]))
            and all(x < y for x, y in zip(d_maxs, d_maxs[1:])),
        )
        collector.metric(
            f"d_min(b_min) == b_min m={m}",
            families.d_min(lo, m) - lo,
            1e-9,
        )
        s_lo, s_hi = families.b_star_min(m), families.b_star_max(m)
        bss = np.sort(s_lo + rng.uniform(0.01, 0.99, size=50) * (s_hi - s_lo))
        ds_mins = [families.d_star_min(float(b), m) for b in bss]
        ds_maxs = [families.d_star_max(float(b), m) for b in bss]
        t0ss = [families.t_0_star(float(b), m) for b in bss]
        collector.metric(
            f"t_0* == d*_max m={m}",
            max(abs(x - y) for x, y in zip(ds_maxs, t0ss)),
            1e-15,
        )
        collector.bound(
            f"d*_min, d*_max increasing m={m}",
            all(x < y for x, y in zip(ds_mins, ds_mins[1:]))
            and all(x < y for x, y in zip(ds_maxs, ds_maxs[1:])),
        )
    collector.metric("b_min(1) == 1.5625", families.b_min(1) - 1.5625, 1e-12)
    collector.metric("b_max(1) == 4", families.b_max(1) - 4.0, 1e-12)
    collector.metric(
        "b*_min(1) == 2^(-2/3)", families.b_star_min(1) - 2.0 ** (-2.0 / 3.0), 1e-12
    )
    collector.metric(
        "b*_max(1) == (4/7)^(2/3)",
        families.b_star_max(1) - (4.0 / 7.0) ** (2.0 / 3.0),
        1e-12,
    )
    collector.metric(
        "b*_sp value", families.B_STAR_SP - 0.63004, 1e-4
    )
    # sandwich and curve monotonicity
    for m in range(1, 11):
        lo, hi = families.b_min(m), families.b_max(m)
        bs = np.concatenate(
            ([lo], np.sort(lo + rng.uniform(0.0, 0.995, size=50) * (hi - lo)))
        )
        sandwich_ok = True
        for b in bs:
            d_at = optimize.d_opt(float(b), m)
            if not (
                families.d_min(float(b), m) - 1e-12 <= d_at
                <= families.d_max(float(b), m) + 1e-12
            ):
                sandwich_ok = False
        collector.bound(f"d_min <= d_opt <= d_max m={m}", sandwich_ok)
        collector.bound(
            f"strict sandwich at b_min m={m}",
            families.d_min(lo, m) < optimize.d_opt(lo, m) < families.d_max(lo, m),
        )
        scan_hi = families.b_tilde_max(m) if m == 1 else hi * (1.0 - 1e-9)
        grid = np.linspace(lo, scan_hi, 40)
        d_opts = [optimize.d_opt(float(b), m) for b in grid]
        ratios = [families.t_0(float(b), m) / d for b, d in zip(grid, d_opts)]
        collector.bound(
            f"d_opt increasing m={m}",
            all(x < y for x, y in zip(d_opts, d_opts[1:])),
        )
        collector.bound(
            f"t_0/d_opt decreasing m={m}",
            all(x > y for x, y in zip(ratios, ratios[1:])),
        )
        s_lo, s_hi = families.b_star_min(m), families.b_star_max(m)
        star_lo = families.B_STAR_SP if m == 1 else s_lo + (s_hi - s_lo) * 1e-6
        star_ok = True
        for b_star in np.linspace(star_lo, s_hi, 40):
            ds_at = optimize.d_star_opt(float(b_star), m)
            if not (
                families.d_star_min(float(b_star), m) - 1e-12 <= ds_at
                <= families.d_star_max(float(b_star), m) + 1e-12
            ):
                star_ok = False
        collector.bound(f"adjoint sandwich m={m}", star_ok)
    # adjoint limit at b*_min: the numerics side with 2^(2/m)
    for m in (1, 2, 3):
        b_star = families.b_star_min(m) * (1.0 + 1e-9)
        ratio = families.t_0_star(b_star, m) / optimize.d_star_opt(b_star, m)
        collector.metric(
            f"t_0*/d*_opt limit at b*_min m={m}",
            (ratio - 2.0 ** (2.0 / m)) / 2.0 ** (2.0 / m),
            1e-2,
        )
    # restricted family equals the general family at a=1, c=b
    for _ in range(10):
        params = _random_spec(rng)
        f_spec = families.build_spec(params)
        f_gen = families.build_general(
            GeneralFamilyParams(params.m, 1.0, params.b, params.b, params.d)
        )
        ts = rng.uniform(1.0 + 1e-9, params.d, size=100)
        worst = max(
            abs(evaluate(f_spec, float(t)) - evaluate(f_gen, float(t))) for t in ts
        )
        collector.metric(
            f"spec == general(a=1, c=b) m={params.m} b={params.b:.3f}",
            worst,
            1e-10,
        )
        # sign pattern: negative on (1, b); negative then positive around t_0
        t0 = families.t_0(params.b, params.m)
        pattern_ok = (
            all(
                evaluate(f_spec, float(t)) < 0.0
                for t in np.linspace(1.0 + 1e-6, params.b, 20)
            )
            and all(
                evaluate(f_spec, float(t)) < 0.0
                for t in np.linspace(params.b + 1e-9, t0 * (1 - 1e-9), 20)
            )
            and all(
                evaluate(f_spec, float(t)) > 0.0
                for t in np.linspace(t0 * (1 + 1e-9), params.d, 20)
            )
        )
        collector.bound(f"sign pattern m={params.m} b={params.b:.3f}", pattern_ok)
    # curve bound auxiliary inequality
    aux_ok = True
    for m in range(1, 1001):
        left = (2.0 + m) / m * ((4.0 + 3.0 * m) / (2.0 + 2.0 * m)) ** (
            m / (2.0 + m)
        ) - (2.0 + m) / m
        right = m / (2.0 + m) * ((2.0 + 3.0 * m) / (2.0 + 2.0 * m)) ** (
            (2.0 + m) / m
        ) - m / (2.0 + m)
        if not (left >= 0.5 >= right):
            aux_ok = False
    collector.bound("curve interval inequality m=1..1000", aux_ok)
    return collector.report("boundaries", seed)


def _suite_duality(seed: int) -> CheckReport:
    collector = _Collector()
    rng = _rng(seed, 6)
    for m in range(1, 11):
        lo = families.b_min(m)
        hi = families.B_SP if m == 1 else families.b_max(m) * (1.0 - 1e-6)
        samples = np.concatenate(([lo, hi], lo + rng.uniform(0, 1, 48) * (hi - lo)))
        for b in samples:
            record = optimize.duality_map(float(b), m)
            worst = max(
                record.t0_star_residual,
                record.d_star_opt_residual,
                record.w_residual,
            )
            collector.metric(f"m={m} b={b:.4f}", worst, 1.0)
    return collector.report("duality", seed, tolerance=1e-8)


_TABLE1 = {
    1: (2.157, 6.623, 1.383),
    2: (1.566, 3.284, 1.375),
    3: (1.374, 2.400, 1.373),
    4: (1.279, 2.003, 1.371),
}
_GILL = {1: 1.282, 2: 1.207, 3: 1.163, 4: 1.134}


def _suite_table1(seed: int) -> CheckReport:
    collector = _Collector()
    for m, (b_ref, d_ref, w_ref) in _TABLE1.items():
        record = optimize.maximize_W(m)
        collector.metric(f"W optimum m={m}", record.value - w_ref, 0.002)
        collector.metric(f"b optimum m={m}", record.b - b_ref, 0.05)
        collector.metric(f"d optimum m={m}", record.d - d_ref, 0.05)
        # the reference column is truncated to 3 decimals, not rounded
        truncated = math.floor(gill_bound(m) * 1000.0) / 1000.0
        collector.bound(
            f"gill m={m}", truncated == _GILL[m], truncated - _GILL[m]
        )
    return collector.report("table1", seed)


def _suite_asymptotic(seed: int) -> CheckReport:
    collector = _Collector()
    x_inf = optimize.x_infinity(1e-10)
    collector.metric("x_infinity", x_inf - 0.54807758, 1e-7)
    sample = functionals.asymptotic_restricted(0.548, 1.164)
    collector.bound("sample value >= 1.37", sample >= 1.37, 1.37 - sample)
    supremum = 1.0 / (math.exp(x_inf) - 1.0)
    collector.bound("curve supremum >= 1.3699", supremum >= 1.3699)
    x, y = 0.548, 1.164
    m = 10 ** 4
    forward = W(math.exp(2.0 * x / m), math.exp(2.0 * (x + y) / m), m)
    collector.metric("finite-m consistency", forward - sample, 2e-3)
    adjoint = W_star(
        math.exp(-2.0 * x / (2.0 + m)), math.exp(-2.0 * (x + y) / (2.0 + m)), m
    )
    collector.metric("adjoint finite-m consistency", adjoint - sample, 2e-3)
    return collector.report("asymptotic", seed)


def _suite_bound134(seed: int, m_range: tuple[int, int] = (1, 200)) -> CheckReport:
    collector = _Collector()
    records = optimize.bound_134(range(m_range[0], m_range[1] + 1))
    for record in records:
        if record.m >= 4:
            collector.bound(f"pair feasible m={record.m}", record.pair_feasible)
        if record.m >= 5:
            collector.bound(
                f"W >= 1.34 m={record.m}",
                record.w_value >= 1.34,
                1.34 - record.w_value,
            )
        if record.rational_bound is not None:
            collector.bound(
                f"rational bound m={record.m}",
                record.rational_bound >= 1.34,
                1.34 - record.rational_bound,
            )
    ms = np.arange(25, 10001, dtype=float)
    rational = np.array([optimize.rational_lower_bound(m) for m in ms])
    collector.bound(
        "rational bound >= 1.34 for 25..10^4", bool((rational >= 1.34).all())
    )
    collector.bound("u0(25) <= 1.79", optimize.u0(25) <= 1.79)
    collector.bound("u0(25)/25 <= 0.072", optimize.u0(25) / 25.0 <= 0.072)
    ms_all = np.arange(1, 10001, dtype=float)
    for quad_bound in (0.0, 3.3, 10.0):
        values = np.array([optimize.bound_poly(m, quad_bound) for m in ms_all])
        collector.bound(
            f"bound polynomial positive at {quad_bound}", bool((values > 0.0).all())
        )
    constants = optimize.UNIFORM_BOUND_CONSTANTS
    collector.metric("theta", constants.theta - 0.213, 5e-4)
    collector.metric("growth constant", constants.growth - 3.819, 5e-4)
    collector.metric("log shift constant", constants.log_shift - 3.412, 5e-4)
    u_values = [optimize.u0(m) for m in range(4, 200)]
    collector.bound(
        "u0 in [1, 3] and decreasing",
        all(1.0 <= u <= 3.0 for u in u_values)
        and all(x > y for x, y in zip(u_values, u_values[1:])),
    )
    return collector.report("bound134", seed)


def _suite_aux_suprema(seed: int) -> CheckReport:
    collector = _Collector()
    records = optimize.aux_suprema()
    for record in records:
        collector.bound(
            f"{record.name} <= {record.bound}",
            record.within_bound,
            record.supremum - record.bound,
        )
    diagonal = records[1]
    exact = functionals.LOG_32 / (0.75 - functionals.LOG_32)
    collector.metric("diagonal exact value", diagonal.supremum - exact, 1e-9)
    collector.metric(
        "diagonal attained at right endpoint",
        diagonal.argmax - functionals.LOG_32,
        1e-6,
    )
    low_x = optimize.aux_low_x_supremum()
    collector.bound(
        f"{low_x.name} <= {low_x.bound}",
        low_x.within_bound,
        low_x.supremum - low_x.bound,
    )
    return collector.report("aux_suprema", seed)


def _suite_push(seed: int) -> CheckReport:
    collector = _Collector()
    record = optimize.push_check(128)
    collector.bound(
        "no grid point beats the curve supremum",
        record.max_violation <= 1e-6,
        record.max_violation,
    )
    collector.bound("ray decrease beyond the caps", record.ray_check_ok)
    return collector.report("push", seed)


_SUITES = {
    "eigen": _suite_eigen,
    "plateau": _suite_plateau,
    "plateau_adjoint": _suite_plateau_adjoint,
    "oracle": _suite_oracle,
    "scaling": _suite_scaling,
    "boundaries": _suite_boundaries,
    "duality": _suite_duality,
    "table1": _suite_table1,
    "asymptotic": _suite_asymptotic,
    "bound134": _suite_bound134,
    "aux_suprema": _suite_aux_suprema,
    "push": _suite_push,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(
    names: list[str], seed: int, m_range: tuple[int, int] = (1, 200)
) -> list[CheckReport]:
    """Run the named suites deterministically under the seed, in given order."""
    unknown = [name for name in names if name not in _SUITES]
    if unknown:
        raise ValueError(f"unknown suite names: {unknown}; choose from {SUITE_NAMES}")
    reports = []
    for name in names:
        if name == "bound134":
            reports.append(_suite_bound134(seed, m_range))
        else:
            reports.append(_SUITES[name](seed))
    return reports


def reports_to_json(reports: list[CheckReport], precision: int = 9) -> str:
    """Serialize reports with shortest round-trip numbers at the precision."""

    def shorten(value: float) -> float:
        return float(f"{value:.{precision}g}")

    payload = [
        {
            "name": report.name,
            "status": report.status.value,
            "worst_residual": shorten(report.worst_residual),
            "tolerance": shorten(report.tolerance),
            "seed": report.seed,
            "details": [
                {"input": name, "residual": shorten(res)}
                for name, res in report.details
            ],
        }
        for report in reports
    ]
    return json.dumps(payload, indent=2)
