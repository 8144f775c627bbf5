"""Command line interface.

Records go to stdout as newline-delimited JSON, diagnostics to stderr.
Exit status: 0 on success, 1 on invalid input, 2 if verification finds a
mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .distribution import (
    DistributionParams,
    NonIntegralPopulationError,
    ParameterError,
    as_multi_index,
    params_from_counts,
    params_from_probs,
    parse_rational,
)
from .kinds import MomentKind
from .moments import alpha_grid, compute_moment
from .oracle import mc_moment_estimate
from .verification import OracleReport, grid_params, verify_grid, verify_params

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2


def format_decimal(value: Fraction, digits: int) -> str:
    """Fixed-point rendering with ``digits`` decimals, rounding half to even."""
    scaled = round(value * 10**digits)  # Fraction.__round__ is exact and half-even
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rational_list(text: str) -> list[Fraction]:
    try:
        return [parse_rational(part) for part in text.split(",") if part.strip()]
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _output_format(text: str) -> Optional[int]:
    if text == "rational":
        return None
    if text.startswith("decimal:"):
        digits = text.split(":", 1)[1]
        if digits.isdigit():
            return int(digits)
    raise argparse.ArgumentTypeError(f"format must be 'rational' or 'decimal:<digits>', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypergeom-moments",
        description="Exact moments of the multivariate hypergeometric distribution.",
        allow_abbrev=False,
    )
    parser.add_argument("--N", type=int, dest="N", help="total population size")
    parser.add_argument("--n", type=int, dest="n", help="sample size")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--counts", type=_int_list, help="subpopulation sizes N_1,...,N_d")
    source.add_argument("--probs", type=_rational_list, help="proportions p_1,...,p_d, e.g. 1/2,1/3")
    source.add_argument(
        "--grid",
        action="store_true",
        help="verify mode only: sweep every (N, n, counts) with d in --grid-dims and 1 <= N <= --grid-max-N",
    )
    parser.add_argument("--alpha", type=_int_list, help="exponents alpha_1,...,alpha_d")
    parser.add_argument("--kind", choices=[k.value for k in MomentKind])
    parser.add_argument("--mode", choices=["single", "table", "verify"], default="single")
    parser.add_argument("--max-order", type=int, help="largest |alpha| for table and verify modes")
    parser.add_argument("--max-entry", type=int, help="cap on each alpha_i in table and verify modes")
    parser.add_argument("--format", type=_output_format, default=None, dest="digits",
                        metavar="{rational,decimal:<digits>}")
    parser.add_argument("--seed", type=int, help="seed for the Monte Carlo cross-check")
    parser.add_argument("--mc-samples", type=int, default=0,
                        help="single mode: add a Monte Carlo estimate from this many draws")
    parser.add_argument("--grid-dims", type=_int_list, default=[1, 2, 3])
    parser.add_argument("--grid-max-N", type=int, default=9, dest="grid_max_N")
    parser.add_argument("--workers", type=int, default=1, help="processes for --grid verification")
    parser.add_argument("--quiet", action="store_true", help="verify mode: print mismatches only")
    return parser


def _params(args) -> DistributionParams:
    if args.N is None or args.n is None:
        raise ParameterError("--N and --n are required")
    if args.counts is not None:
        return params_from_counts(args.N, args.n, args.counts)
    if args.probs is not None:
        return params_from_probs(args.N, args.n, args.probs)
    raise ParameterError("one of --counts or --probs is required")


def _record(params: DistributionParams, alpha, kind: MomentKind, value: Fraction, digits) -> dict:
    record = {
        "N": params.N,
        "n": params.n,
        "counts": list(params.counts),
        "alpha": list(alpha),
        "kind": kind.value,
        "value": str(value),
    }
    if digits is not None:
        record["decimal"] = format_decimal(value, digits)
    return record


def _report_record(report: OracleReport, digits) -> dict:
    record = _record(report.params, report.alpha, report.kind, report.formula_value, digits)
    record["oracle"] = str(report.oracle_value)
    record["match"] = report.match
    return record


def _emit(record: dict, out) -> None:
    out.write(json.dumps(record) + "\n")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Parse ``argv``, write records to ``out`` and return the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return _dispatch(args, out, err)
    except NonIntegralPopulationError as exc:
        err.write(f"error: non-integral population: {exc}\n")
        return EXIT_INVALID
    except ParameterError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID


def _dispatch(args, out, err) -> int:
    if args.grid and args.mode != "verify":
        raise ParameterError("--grid is only valid with --mode verify")
    if args.mode in ("table", "verify") and args.max_order is None:
        raise ParameterError(f"--mode {args.mode} requires --max-order")
    if args.max_order is not None and args.max_order < 0:
        raise ParameterError(f"--max-order must be nonnegative, got {args.max_order}")

    if args.mode == "verify":
        kinds = [MomentKind(args.kind)] if args.kind else list(MomentKind)
        if args.grid:
            params_list = list(grid_params(args.grid_dims, range(1, args.grid_max_N + 1)))
            checked, bad = verify_grid(params_list, args.max_order, args.max_entry, kinds, args.workers)
            for report in bad:
                _emit(_report_record(report, args.digits), out)
            err.write(f"verified {checked} parameter sets, {len(bad)} mismatches\n")
            return EXIT_MISMATCH if bad else EXIT_OK
        reports = verify_params(_params(args), args.max_order, args.max_entry, kinds)
        for report in reports:
            if not (args.quiet and report.match):
                _emit(_report_record(report, args.digits), out)
        return EXIT_OK if all(r.match for r in reports) else EXIT_MISMATCH

    params = _params(args)
    kind = MomentKind(args.kind or MomentKind.NONCENTRAL.value)
    if args.mode == "table":
        for alpha in alpha_grid(params.d, args.max_order, args.max_entry):
            result = compute_moment(params, alpha, kind)
            _emit(_record(params, alpha, kind, result.value, args.digits), out)
        return EXIT_OK

    if args.alpha is None:
        raise ParameterError("--alpha is required in single mode")
    alpha = as_multi_index(args.alpha, params.d)
    result = compute_moment(params, alpha, kind)
    record = _record(params, alpha, kind, result.value, args.digits)
    if args.mc_samples:
        est = mc_moment_estimate(params, alpha, kind, args.mc_samples, args.seed or 0)
        record["mc_estimate"] = est.estimate
        record["mc_std_error"] = est.std_error
    _emit(record, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
