"""Command-line entry point: reproduce the bound tables, export curve data,
and run verification suites, with CSV or JSON output.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import families, functionals, optimize, verify

__all__ = ["OutputConfig", "main"]


@dataclass(frozen=True)
class OutputConfig:
    """Where and how to emit results: csv or json, path or stdout, digits."""

    format: str = "csv"
    path: Path | None = None
    precision: int = 9

    def __post_init__(self) -> None:
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format}")
        if not 3 <= self.precision <= 17:
            raise ValueError(f"precision must be in [3, 17], got {self.precision}")


def _format_number(value, precision: int) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.{precision}g}"


def _emit_rows(header: list[str], rows: list[list], out: OutputConfig) -> None:
    if out.format == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_format_number(v, out.precision) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        payload = [
            {
                key: (int(v) if isinstance(v, (int, np.integer))
                      else float(_format_number(v, out.precision)))
                for key, v in zip(header, row)
            }
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    _write(text, out)


def _write(text: str, out: OutputConfig) -> None:
    if out.path is None:
        sys.stdout.write(text)
    else:
        out.path.write_text(text)


def _output_config(args) -> OutputConfig:
    return OutputConfig(
        format=args.format,
        path=Path(args.out) if args.out else None,
        precision=args.precision,
    )


def cmd_table1(args) -> int:
    out = _output_config(args)
    rows = []
    for m in args.m:
        record = optimize.maximize_W(m)
        rows.append(
            [
                m,
                record.b,
                record.d,
                families.t_0(record.b, m),
                record.value,
                functionals.gill_bound(m),
            ]
        )
    _emit_rows(["m", "b", "d", "t_0", "W", "gill_bound"], rows, out)
    return 0


def cmd_curves(args) -> int:
    out = _output_config(args)
    m = args.m
    lo = families.b_min(m)
    # the right endpoint diverges for m >= 2, so stop just inside it
    hi = families.b_tilde_max(m) if m == 1 else families.b_max(m) * (1.0 - 1e-9)
    rows = []
    for b in np.linspace(lo, hi, args.samples):
        b = float(b)
        d_at = optimize.d_opt(b, m)
        rows.append(
            [
                b,
                families.d_min(b, m),
                d_at,
                families.d_max(b, m),
                families.t_0(b, m),
                functionals.W(b, d_at, m),
            ]
        )
    _emit_rows(["b", "d_min", "d_opt", "d_max", "t_0", "W_on_curve"], rows, out)
    return 0


def cmd_asymptotic(args) -> int:
    out = _output_config(args)
    x_inf = optimize.x_infinity(1e-10)
    rows = [
        [
            x_inf,
            1.0 / (np.exp(x_inf) - 1.0),
            functionals.asymptotic_restricted(0.548, 1.164),
        ]
    ]
    _emit_rows(["x_infinity", "bound", "sample_value"], rows, out)
    return 0


def cmd_verify(args) -> int:
    out = _output_config(args)
    names = list(verify.SUITE_NAMES) if args.suites == ["all"] else args.suites
    reports = verify.run_suite(names, args.seed, m_range=args.m_range)
    if out.format == "json":
        _write(verify.reports_to_json(reports, out.precision) + "\n", out)
    else:
        header = ["name", "status", "worst_residual", "tolerance", "seed"]
        rows = [
            [r.name, r.status.value, r.worst_residual, r.tolerance, r.seed]
            for r in reports
        ]
        lines = [",".join(header)]
        for row in rows:
            lines.append(
                ",".join(
                    v if isinstance(v, str) else _format_number(v, out.precision)
                    for v in row
                )
            )
        _write("\n".join(lines) + "\n", out)
    failing = [r.name for r in reports if r.status is verify.Status.FAIL]
    if failing:
        sys.stderr.write(f"failing suites: {', '.join(failing)}\n")
        return 1
    return 0


def _parse_m_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad m list {text!r}") from exc
    if not values or any(m < 1 for m in values):
        raise argparse.ArgumentTypeError("every m must be a positive integer")
    return values


def _parse_m_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"bad m range {text!r}; expected LO..HI"
        ) from exc
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad m range {text!r}")
    return lo, hi


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument(
        "--precision", type=int, default=9, help="significant digits, 3..17"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weaktype",
        description=(
            "Extremal lower bounds for the weak-type constants of the radial "
            "averaging operators and their adjoints."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table1", help="maximize the restricted ratio per m")
    p_table.add_argument(
        "--m", type=_parse_m_list, default=[1, 2, 3, 4],
        help="comma-separated list of m values",
    )
    _add_output_flags(p_table)
    p_table.set_defaults(func=cmd_table1)

    p_curves = sub.add_parser("curves", help="export the optimal-curve data for one m")
    p_curves.add_argument("--m", type=int, default=1)
    p_curves.add_argument("--samples", type=int, default=100)
    _add_output_flags(p_curves)
    p_curves.set_defaults(func=cmd_curves)

    p_asym = sub.add_parser("asymptotic", help="the large-m root and bound")
    _add_output_flags(p_asym)
    p_asym.set_defaults(func=cmd_asymptotic)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument(
        "--suites",
        type=lambda text: text.split(","),
        default=["all"],
        help=f"comma-separated suite names (default all): {', '.join(verify.SUITE_NAMES)}",
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--m-range", type=_parse_m_range, default=(1, 200), dest="m_range",
        help="direct-evaluation range for the bound134 suite, as LO..HI",
    )
    _add_output_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "curves":
        if args.m < 1:
            parser.error(f"m must be >= 1, got {args.m}")
        if args.samples < 2:
            parser.error(f"samples must be >= 2, got {args.samples}")
    if args.command == "verify":
        unknown = [s for s in args.suites if s != "all" and s not in verify.SUITE_NAMES]
        if unknown:
            parser.error(f"unknown suites: {', '.join(unknown)}")
    try:
        return args.func(args)
    except OSError as exc:
        sys.stderr.write(f"write failed: {exc}\n")
        return 1
    except ValueError as exc:
        parser.error(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
