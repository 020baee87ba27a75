"""Extremal function families and their feasibility boundaries.

The general family stitches (2+m)/m + B*t**(m/2) on (a, b] against
-(2+m)/m + D*t**(m/2) on (c, d], with B and D chosen so the forward operator
maps the function to +1 on (a, b) and -1 on (c, d).  The restricted family
fixes a = 1 and c = b and constrains (b, d) to the open region where the
second piece changes sign and stays below 2 at d.  The adjoint families
mirror this construction with the kernel exponent -1 - m/2 on the unit-scale
side d_* < b_* < 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .piecewise import PiecewisePowerFunction, PowerPiece

__all__ = [
    "ConstraintViolation",
    "ConstraintDiagnostic",
    "GeneralFamilyParams",
    "FSpecParams",
    "FStarSpecParams",
    "DomainBoundaries",
    "B_SP",
    "B_STAR_SP",
    "b_min",
    "b_max",
    "b_tilde_max",
    "t_0",
    "d_min",
    "d_max",
    "b_star_min",
    "b_star_max",
    "b_tilde_star_min",
    "t_0_star",
    "d_star_min",
    "d_star_max",
    "general_B",
    "general_D",
    "spec_D",
    "star_spec_D",
    "boundaries",
    "build_general",
    "build_spec",
    "build_star_spec",
    "validate",
    "validate_general",
    "validate_spec",
    "validate_star_spec",
]

# Endpoint of the forward m=1 curve scan where the curve optimum leaves the
# feasible region; its adjoint image under the duality map.
B_SP = 7.0 ** (2.0 / 3.0)
B_STAR_SP = (27.0 / (54.0 - 16.0 * (2.0 - 7.0 ** (1.0 / 3.0)) ** 3)) ** (2.0 / 3.0)


class ConstraintViolation(ValueError):
    """A family parameter violates a named feasibility inequality."""


@dataclass(frozen=True)
class ConstraintDiagnostic:
    """One inequality with its signed slack (positive means satisfied)."""

    name: str
    slack: float
    satisfied: bool


def _check_m(m: int) -> None:
    if not (isinstance(m, int) and m >= 1):
        raise ValueError(f"m must be an integer >= 1, got {m}")


# --- boundary functions ------------------------------------------------------

def b_min(m: int) -> float:
    return ((2.0 + 3.0 * m) / (2.0 + 2.0 * m)) ** (2.0 / m)


def b_max(m: int) -> float:
    return 2.0 ** (2.0 / m)


def b_tilde_max(m: int) -> float:
    """Right end of the forward curve scan: b_max for m >= 2, B_SP for m = 1."""
    return B_SP if m == 1 else b_max(m)


def t_0(b: float, m: int) -> float:
    """Sign change of the second restricted piece; equals d_min(b, m)."""
    return ((2.0 + m) / (2.0 * (1.0 + m))) ** (2.0 / m) * (
        2.0 * b ** (-m / 2.0) - 1.0
    ) ** (-2.0 / m)


def d_min(b: float, m: int) -> float:
    return t_0(b, m)


def d_max(b: float, m: int) -> float:
    return ((2.0 + 3.0 * m) / (2.0 * (1.0 + m) * (2.0 * b ** (-m / 2.0) - 1.0))) ** (
        2.0 / m
    )


def b_star_min(m: int) -> float:
    return 2.0 ** (-2.0 / (2.0 + m))


def b_star_max(m: int) -> float:
    return ((2.0 + 2.0 * m) / (4.0 + 3.0 * m)) ** (2.0 / (2.0 + m))


def b_tilde_star_min(m: int) -> float:
    """Left end of the adjoint curve scan: b_star_min for m >= 2, B_STAR_SP for m = 1."""
    return B_STAR_SP if m == 1 else b_star_min(m)


def t_0_star(b_star: float, m: int) -> float:
    """Sign change of the inner adjoint piece; equals d_star_max(b_star, m)."""
    return (2.0 * (1.0 + m) / m) ** (2.0 / (2.0 + m)) * (
        2.0 * b_star ** (1.0 + m / 2.0) - 1.0
    ) ** (2.0 / (2.0 + m))


def d_star_max(b_star: float, m: int) -> float:
    return t_0_star(b_star, m)


def d_star_min(b_star: float, m: int) -> float:
    return (
        (4.0 + 3.0 * m) / (2.0 * (1.0 + m) * (2.0 * b_star ** (1.0 + m / 2.0) - 1.0))
    ) ** (-2.0 / (2.0 + m))


# --- coefficients ------------------------------------------------------------

def general_B(a: float, m: int) -> float:
    return -2.0 * (1.0 + m) / (m * a ** (m / 2.0))


def general_D(a: float, b: float, c: float, m: int) -> float:
    lead = 2.0 * (1.0 + m) / (m * c ** (m / 2.0))
    return (
        lead
        + lead * (b / c) ** (1.0 + m / 2.0)
        + general_B(a, m) * (b / c) ** (1.0 + m)
    )


def spec_D(b: float, m: int) -> float:
    return 2.0 * (1.0 + m) / m * (2.0 * b ** (-m / 2.0) - 1.0)


def star_spec_D(b_star: float, m: int) -> float:
    return 2.0 * (1.0 + m) / (2.0 + m) * (2.0 * b_star ** (1.0 + m / 2.0) - 1.0)


@dataclass(frozen=True)
class DomainBoundaries:
    """All boundary functions of the feasible regions for one m, as callables."""

    m: int
    b_min: float = field(init=False)
    b_max: float = field(init=False)
    b_tilde_max: float = field(init=False)
    b_sp: float = B_SP
    b_star_min: float = field(init=False)
    b_star_max: float = field(init=False)
    b_tilde_star_min: float = field(init=False)
    b_star_sp: float = B_STAR_SP

    def __post_init__(self) -> None:
        _check_m(self.m)
        object.__setattr__(self, "b_min", b_min(self.m))
        object.__setattr__(self, "b_max", b_max(self.m))
        object.__setattr__(self, "b_tilde_max", b_tilde_max(self.m))
        object.__setattr__(self, "b_star_min", b_star_min(self.m))
        object.__setattr__(self, "b_star_max", b_star_max(self.m))
        object.__setattr__(self, "b_tilde_star_min", b_tilde_star_min(self.m))

    def t_0(self, b: float) -> float:
        return t_0(b, self.m)

    def d_min(self, b: float) -> float:
        return d_min(b, self.m)

    def d_max(self, b: float) -> float:
        return d_max(b, self.m)

    def t_0_star(self, b_star: float) -> float:
        return t_0_star(b_star, self.m)

    def d_star_min(self, b_star: float) -> float:
        return d_star_min(b_star, self.m)

    def d_star_max(self, b_star: float) -> float:
        return d_star_max(b_star, self.m)


def boundaries(m: int) -> DomainBoundaries:
    return DomainBoundaries(m)


# --- parameter types ---------------------------------------------------------

def validate_general(
    m: int, a: float, b: float, c: float, d: float
) -> list[ConstraintDiagnostic]:
    """Slack of every ordering constraint of the general family."""
    _check_m(m)
    return [
        ConstraintDiagnostic("a > 0", a, a > 0.0),
        ConstraintDiagnostic("b > a", b - a, b > a),
        ConstraintDiagnostic("c >= b", c - b, c >= b),
        ConstraintDiagnostic("d > c", d - c, d > c),
    ]


def validate_spec(
    m: int, b: float, d: float, closure: bool = False
) -> list[ConstraintDiagnostic]:
    """Slack of every restricted-family constraint at (b, d).

    The derived interval constraints are canonical; the raw inequality chain
    on the second piece is kept as a redundant cross-check.  With ``closure``
    the relaxable inequalities become non-strict (the region's closure), but
    the coefficient positivity stays strict.
    """
    _check_m(m)
    out = [
        ConstraintDiagnostic("b > 0", b, b > 0.0),
        ConstraintDiagnostic("d > 0", d, d > 0.0),
    ]
    if b <= 0.0 or d <= 0.0:
        return out
    dd = spec_D(b, m)
    lo, hi = b_min(m), b_max(m)
    out.append(ConstraintDiagnostic("b > b_min" if not closure else "b >= b_min",
                                    b - lo, b >= lo if closure else b > lo))
    out.append(ConstraintDiagnostic("b < b_max", hi - b, b < hi))
    out.append(ConstraintDiagnostic("D(b, m) > 0", dd, dd > 0.0))
    if dd <= 0.0:
        return out
    at_b = -(2.0 + m) / m + dd * b ** (m / 2.0)
    at_d = -(2.0 + m) / m + dd * d ** (m / 2.0)
    relaxable = [
        ("d > d_min(b)", d - d_min(b, m)),
        ("d < d_max(b)", d_max(b, m) - d),
        ("second piece negative at b", -at_b),
        ("second piece positive at d", at_d),
        ("second piece below 2 at d", 2.0 - at_d),
    ]
    for name, slack in relaxable:
        ok = slack >= 0.0 if closure else slack > 0.0
        out.append(ConstraintDiagnostic(name, slack, ok))
    return out


def validate_star_spec(
    m: int, b_star: float, d_star: float, closure: bool = False
) -> list[ConstraintDiagnostic]:
    """Adjoint counterpart of validate_spec at (b*, d*)."""
    _check_m(m)
    out = [
        ConstraintDiagnostic("d* > 0", d_star, d_star > 0.0),
        ConstraintDiagnostic("b* > d*", b_star - d_star, b_star > d_star),
        ConstraintDiagnostic("b* < 1", 1.0 - b_star, b_star < 1.0),
    ]
    if d_star <= 0.0 or not d_star < b_star < 1.0:
        return out
    dd = star_spec_D(b_star, m)
    out.append(
        ConstraintDiagnostic("b* > b*_min", b_star - b_star_min(m),
                             b_star > b_star_min(m))
    )
    out.append(ConstraintDiagnostic("D*(b*, m) > 0", dd, dd > 0.0))
    if dd <= 0.0:
        return out
    at_b = -m / (2.0 + m) + dd * b_star ** (-1.0 - m / 2.0)
    at_d = -m / (2.0 + m) + dd * d_star ** (-1.0 - m / 2.0)
    relaxable = [
        ("b* < b*_max", b_star_max(m) - b_star),
        ("d* > d*_min(b*)", d_star - d_star_min(b_star, m)),
        ("d* < d*_max(b*)", d_star_max(b_star, m) - d_star),
        ("inner piece negative at b*", -at_b),
        ("inner piece positive at d*", at_d),
        ("inner piece below 2 at d*", 2.0 - at_d),
    ]
    for name, slack in relaxable:
        ok = slack >= 0.0 if closure else slack > 0.0
        out.append(ConstraintDiagnostic(name, slack, ok))
    return out


def _raise_on_failure(diagnostics) -> None:
    for diag in diagnostics:
        if not diag.satisfied:
            raise ConstraintViolation(
                f"constraint violated: {diag.name} (slack {diag.slack:.6g})"
            )


@dataclass(frozen=True)
class GeneralFamilyParams:
    """Parameters (m, a, b, c, d) of the general two-piece family, 0 < a < b <= c < d."""

    m: int
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        _raise_on_failure(validate_general(self.m, self.a, self.b, self.c, self.d))


@dataclass(frozen=True)
class FSpecParams:
    """A point (b, d) of the restricted feasible region for parameter m.

    The region is open; pass ``closure=True`` to admit boundary points, which
    the ratio functionals extend to continuously.
    """

    m: int
    b: float
    d: float
    closure: bool = False

    def __post_init__(self) -> None:
        _raise_on_failure(validate_spec(self.m, self.b, self.d, self.closure))


@dataclass(frozen=True)
class FStarSpecParams:
    """A point (b*, d*) of the adjoint restricted feasible region for parameter m."""

    m: int
    b_star: float
    d_star: float
    closure: bool = False

    def __post_init__(self) -> None:
        _raise_on_failure(
            validate_star_spec(self.m, self.b_star, self.d_star, self.closure)
        )


def validate(params) -> list[ConstraintDiagnostic]:
    """Signed slack of every feasibility inequality for the given parameters."""
    if isinstance(params, GeneralFamilyParams):
        return validate_general(params.m, params.a, params.b, params.c, params.d)
    if isinstance(params, FSpecParams):
        return validate_spec(params.m, params.b, params.d, params.closure)
    if isinstance(params, FStarSpecParams):
        return validate_star_spec(
            params.m, params.b_star, params.d_star, params.closure
        )
    raise TypeError(f"unsupported parameter type {type(params)!r}")


# --- constructors -------------------------------------------------------------

def build_general(params: GeneralFamilyParams) -> PiecewisePowerFunction:
    """The general two-piece function with its coupling coefficients."""
    m, a, b, c, d = params.m, params.a, params.b, params.c, params.d
    half = m / 2.0
    return PiecewisePowerFunction(
        (
            PowerPiece(a, b, (2.0 + m) / m, general_B(a, m), half),
            PowerPiece(c, d, -(2.0 + m) / m, general_D(a, b, c, m), half),
        )
    )


def build_spec(params: FSpecParams) -> PiecewisePowerFunction:
    """The restricted function; its unique sign change on (b, d) is t_0(b, m)."""
    m, b, d = params.m, params.b, params.d
    half = m / 2.0
    return PiecewisePowerFunction(
        (
            PowerPiece(1.0, b, (2.0 + m) / m, -2.0 * (1.0 + m) / m, half),
            PowerPiece(b, d, -(2.0 + m) / m, spec_D(b, m), half),
        )
    )


def build_star_spec(params: FStarSpecParams) -> PiecewisePowerFunction:
    """The adjoint restricted function; sign change on (d*, b*) at t_0*(b*, m)."""
    m, bs, ds = params.m, params.b_star, params.d_star
    neg = -1.0 - m / 2.0
    return PiecewisePowerFunction(
        (
            PowerPiece(ds, bs, -m / (2.0 + m), star_spec_D(bs, m), neg),
            PowerPiece(bs, 1.0, m / (2.0 + m), -2.0 * (1.0 + m) / (2.0 + m), neg),
        )
    )
