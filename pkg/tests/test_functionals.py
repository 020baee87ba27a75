import math

import numpy as np
import pytest

from weaktype import optimize
from weaktype.families import (
    ConstraintViolation,
    FSpecParams,
    FStarSpecParams,
    GeneralFamilyParams,
    b_min,
    build_spec,
    build_star_spec,
    d_max,
    d_min,
    general_D,
    t_0,
)
from weaktype.functionals import (
    LOG_2,
    LOG_32,
    AsymptoticPoint,
    DenominatorError,
    RatioSource,
    W,
    W_star,
    asymptotic_general,
    asymptotic_restricted,
    general_ratio,
    general_ratio_star,
    gill_bound,
    oracle_ratio,
)
from weaktype.operators import lambda_op, lambda_star_op


def truncated(value: float, digits: int = 3) -> float:
    scale = 10 ** digits
    return math.floor(value * scale) / scale


class TestW:
    @pytest.mark.parametrize(
        "m,b,d,ref",
        [(1, 2.157, 6.623, 1.383), (2, 1.566, 3.284, 1.375),
         (3, 1.374, 2.400, 1.373), (4, 1.279, 2.003, 1.371)],
    )
    def test_reference_values(self, m, b, d, ref):
        assert truncated(W(b, d, m)) == ref

    def test_on_boundary_curve_point(self):
        b = b_min(2)
        value = W(b, optimize.d_opt(b, 2), 2)
        assert math.isfinite(value) and value > 0.0

    def test_nonpositive_denominator_rejected(self):
        with pytest.raises(DenominatorError):
            W(3.0, 1.5, 2)


class TestWStar:
    def test_near_optimal_adjoint_value(self):
        assert W_star(0.649, 0.150, 1) >= 1.383

    def test_on_adjoint_boundary_curve_point(self):
        from weaktype.families import b_star_max

        bs = b_star_max(3)
        value = W_star(bs, optimize.d_star_opt(bs, 3), 3)
        assert math.isfinite(value) and value > 0.0

    def test_duality_instance(self):
        m, b = 2, 1.4
        d_at = optimize.d_opt(b, m)
        forward = W(b, d_at, m)
        adjoint = W_star(t_0(b, m) / d_at, 1.0 / d_at, m)
        assert adjoint == pytest.approx(forward, abs=1e-12)


class TestGillBound:
    def test_reference_column(self):
        assert [truncated(gill_bound(m)) for m in (1, 2, 3, 4)] == [
            1.282, 1.207, 1.163, 1.134,
        ]

    def test_m1_closed_form(self):
        exact = 2.0 ** (2.0 / 3.0) / (3.0 * (2.0 - 2.0 ** (2.0 / 3.0)))
        assert gill_bound(1) == pytest.approx(exact, rel=1e-14)
        assert gill_bound(1) == pytest.approx(1.28, abs=5e-3)

    def test_small_m_limit(self):
        assert gill_bound(1e-6) == pytest.approx(1.4427, abs=1e-3)


class TestGeneralRatio:
    def test_collapses_to_W_on_restricted_points(self):
        params = FSpecParams(2, 1.566, 3.284)
        report = general_ratio(
            GeneralFamilyParams(2, 1.0, params.b, params.b, params.d)
        )
        assert report.ratio == pytest.approx(W(params.b, params.d, 2), abs=1e-12)
        assert report.source is RatioSource.CLOSED_FORM

    def test_matches_oracle_with_gap(self):
        params = GeneralFamilyParams(1, 1.0, 1.1, 3.0, 3.5)
        report = general_ratio(params)
        from weaktype.families import build_general

        oracle = oracle_ratio(lambda_op(1), build_general(params))
        assert report.ratio == pytest.approx(oracle.ratio, abs=1e-8)
        assert oracle.source is RatioSource.ORACLE

    def test_no_overshoot_at_unit_excess(self):
        # d placed exactly where the mass term hits -1: d_hat collapses to d
        m, b, c = 1, 1.1, 3.0
        dd = general_D(1.0, b, c, m)
        d = ((1.0 + (2.0 + m) / m) / dd) ** (2.0 / m)
        assert d > c
        report = general_ratio(GeneralFamilyParams(m, 1.0, b, c, d))
        b_hat_part = report.numerator - (d - c)
        assert b_hat_part == pytest.approx(b - 1.0, abs=1e-9)

    def test_requires_unit_scale(self):
        with pytest.raises(ValueError):
            general_ratio(GeneralFamilyParams(1, 2.0, 3.0, 4.0, 5.0))


class TestGeneralRatioStar:
    def test_collapses_to_W_star_on_restricted_points(self):
        params = FStarSpecParams(2, 0.75, 0.45)
        report = general_ratio_star(2, params.b_star, params.b_star, params.d_star)
        assert report.ratio == pytest.approx(
            W_star(params.b_star, params.d_star, 2), abs=1e-12
        )

    def test_matches_oracle_with_gap(self):
        report = general_ratio_star(2, 0.8, 0.6, 0.3)
        from weaktype.verify import _build_star_general

        f = _build_star_general(2, 1.0, 0.8, 0.6, 0.3)
        oracle = oracle_ratio(lambda_star_op(2), f)
        assert report.ratio == pytest.approx(oracle.ratio, abs=1e-8)

    def test_no_overshoot_at_unit_excess(self):
        # d* placed exactly where the mass term hits -1: d*_hat collapses to d*
        m, b_star, c_star = 1, 0.8, 0.6
        neg = -1.0 - m / 2.0
        lead = 2.0 * (1.0 + m) * c_star ** (1.0 + m / 2.0) / (2.0 + m)
        dd = lead * (1.0 + (c_star / b_star) ** (m / 2.0) * (1.0 - b_star ** neg))
        d_star = ((1.0 + m / (2.0 + m) + 1.0) / dd) ** (-1.0 / (1.0 + m / 2.0))
        assert d_star < c_star
        report = general_ratio_star(m, b_star, c_star, d_star)
        d_hat_part = report.numerator - (1.0 - b_star)
        assert d_hat_part == pytest.approx(c_star - d_star, abs=1e-9)

    def test_bad_ordering_rejected(self):
        with pytest.raises(ConstraintViolation):
            general_ratio_star(2, 0.6, 0.8, 0.3)


class TestOracleRatio:
    def test_restricted_family_agreement(self):
        params = FSpecParams(3, 1.4, 2.2)
        report = oracle_ratio(lambda_op(3), build_spec(params))
        assert report.ratio == pytest.approx(W(1.4, 2.2, 3), abs=1e-10)

    def test_adjoint_family_agreement(self):
        params = FStarSpecParams(1, 0.649, 0.150)
        report = oracle_ratio(lambda_star_op(1), build_star_spec(params))
        assert report.ratio == pytest.approx(W_star(0.649, 0.150, 1), abs=1e-10)


class TestAsymptoticRestricted:
    def test_sample_point(self):
        assert asymptotic_restricted(0.548, 1.164) >= 1.37

    def test_on_curve_reduction(self):
        x = 0.55
        z = 2.0 * (2.0 - math.exp(x))
        y = x - math.log(z)
        reduced = (2.0 * x - math.log(z)) / (math.exp(x) - 2.0 * x - math.log(z))
        assert asymptotic_restricted(x, y) == pytest.approx(reduced, rel=1e-13)

    def test_value_at_root(self):
        x_inf = optimize.x_infinity(1e-12)
        z = 2.0 * (2.0 - math.exp(x_inf))
        y = x_inf - math.log(z)
        assert asymptotic_restricted(x_inf, y) == pytest.approx(
            1.0 / (math.exp(x_inf) - 1.0), rel=1e-9
        )

    def test_constraint_violations(self):
        with pytest.raises(ConstraintViolation):
            asymptotic_restricted(0.2, 1.0)
        with pytest.raises(ConstraintViolation):
            asymptotic_restricted(0.548, 5.0)


class TestAsymptoticGeneral:
    def test_matches_restricted_on_constrained_slice(self):
        for x in (0.45, 0.548, 0.6):
            z = 2.0 * (2.0 - math.exp(x))
            for y_scale in (1.01, 2.0, 2.9):
                y = -math.log(z) + math.log(y_scale)
                if y <= 0:
                    continue
                point = AsymptoticPoint(x, y, z)
                assert asymptotic_general(point) == pytest.approx(
                    asymptotic_restricted(x, y), rel=1e-12
                )

    def test_small_z_branch(self):
        x, y = 0.65, 0.4
        z = 0.5 * math.exp(-y)
        point = AsymptoticPoint(x, y, z)
        expected_num = (
            x + math.log(2.0 * math.exp(x) - 2.0) - math.log(2.0 - z)
            + y + math.log(2.0 - z * math.exp(y))
        )
        expected_den = 2.0 * math.exp(x) - x - 2.0 + y - z * (math.exp(y) - 1.0)
        assert asymptotic_general(point) == pytest.approx(
            expected_num / expected_den, rel=1e-13
        )

    def test_low_x_keeps_x_unchanged(self):
        x, y = 0.3, 1.0
        z = 2.0 * (2.0 - math.exp(x))  # >= 1 here
        point = AsymptoticPoint(x, y, z + 0.01)
        value = asymptotic_general(point)
        num = x + y + math.log((z + 0.01) * math.exp(y) - 2.0)
        den = 2.0 * math.exp(x) - x - 2.0 - y + (z + 0.01) * (math.exp(y) - 1.0)
        assert value == pytest.approx(num / den, rel=1e-13)

    def test_standing_assumption_enforced(self):
        with pytest.raises(ConstraintViolation):
            AsymptoticPoint(0.5, 1.0, 2.1)
        with pytest.raises(ConstraintViolation):
            AsymptoticPoint(0.3, 1.0, 0.0)
        with pytest.raises(ConstraintViolation):
            AsymptoticPoint(-0.1, 1.0, 1.0)


class TestCaseSeams:
    """The piecewise formulas agree where their cases meet."""

    def test_x_hat_seams(self):
        from weaktype.functionals import _x_hat

        # at x = ln(3/2) only z >= 1 is admissible and both cases give x
        for z in (1.0, 1.5, 2.0):
            assert _x_hat(LOG_32, z) == pytest.approx(LOG_32, abs=1e-12)
        # z = 1 for x >= ln(3/2): the shifted branch loses its shift
        x = 0.6
        base = math.log(2.0 * math.exp(x) - 2.0)
        assert _x_hat(x, 1.0) == pytest.approx(x + base, abs=1e-12)

    def test_y_hat_seams(self):
        from weaktype.functionals import _y_hat

        y = 0.9
        assert _y_hat(y, math.exp(-y)) == pytest.approx(y, abs=1e-12)
        assert _y_hat(y, 3.0 * math.exp(-y)) == pytest.approx(y, abs=1e-12)

    def test_integral_seams(self):
        from weaktype.functionals import _abs_exp_integral

        y = 0.8
        # z = 1: both the monotone and the split branch agree
        assert _abs_exp_integral(y, 1.0) == pytest.approx(
            -y + (math.exp(y) - 1.0), abs=1e-12
        )
        z = math.exp(-y)
        split = -2.0 * math.log(z) - y + z * (math.exp(y) + 1.0) - 2.0
        assert _abs_exp_integral(y, z) == pytest.approx(split, abs=1e-12)
        assert _abs_exp_integral(y, z) == pytest.approx(
            y - z * (math.exp(y) - 1.0), abs=1e-12
        )


class TestOracleEquivalenceSweep:
    @pytest.mark.parametrize("m", [1, 4, 8])
    def test_forward(self, m):
        rng = np.random.default_rng(m)
        from weaktype.families import b_max

        for _ in range(25):
            u, v = rng.uniform(0.03, 0.97, 2)
            b = b_min(m) + u * (b_max(m) - b_min(m))
            d = d_min(b, m) + v * (d_max(b, m) - d_min(b, m))
            report = oracle_ratio(lambda_op(m), build_spec(FSpecParams(m, b, d)))
            assert abs(W(b, d, m) - report.ratio) <= 1e-7

    @pytest.mark.parametrize("m", [1, 4, 8])
    def test_adjoint(self, m):
        rng = np.random.default_rng(100 + m)
        from weaktype.families import b_star_max, b_star_min, d_star_max, d_star_min

        for _ in range(25):
            u, v = rng.uniform(0.03, 0.97, 2)
            bs = b_star_min(m) + u * (b_star_max(m) - b_star_min(m))
            ds = d_star_min(bs, m) + v * (d_star_max(bs, m) - d_star_min(bs, m))
            report = oracle_ratio(
                lambda_star_op(m), build_star_spec(FStarSpecParams(m, bs, ds))
            )
            assert abs(W_star(bs, ds, m) - report.ratio) <= 1e-7
