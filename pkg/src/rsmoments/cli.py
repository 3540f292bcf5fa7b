"""Command-line front end.

Subcommands: ``exact`` (rational moments via the series pipeline),
``asym`` (full asymptotic sums), ``mainterm`` (corollary main terms),
``compare`` (exact vs asymptotic side by side), ``verify`` (named
invariant suites), and ``pn`` (exact-formula partition numbers against
the pentagonal recurrence).

Output is deterministic at fixed configuration: numbers are serialized
as decimal strings rendered from exact values, never as binary floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import asymp, qseries, verify
from .formatting import fraction_to_sig_str, mpf_to_fraction
from .specfun import PrecisionContext

ENV_PRECISION = "RSMOMENTS_PRECISION_BITS"
EXIT_OK = 0
EXIT_COMPUTE_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation: one command plus its numeric settings."""

    command: str
    n_list: tuple[int, ...]
    moment: int
    precision_bits: int
    sig_digits: int
    output_format: str
    parallelism: int
    enumeration_cap: int
    suite: str = "all"

    def __post_init__(self):
        if self.sig_digits < 1:
            raise ValueError("sig_digits must be >= 1")
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if self.command != "verify" and not self.n_list:
            raise ValueError("n_list must be nonempty")

    def context(self) -> PrecisionContext:
        return PrecisionContext(precision_bits=self.precision_bits)


def _decimal_of(value, sig_digits: int) -> str:
    if isinstance(value, Fraction):
        return fraction_to_sig_str(value, sig_digits)
    return fraction_to_sig_str(mpf_to_fraction(value), sig_digits)


def _exact_moments(config: RunConfig) -> list[qseries.MomentValue]:
    order = max(config.n_list)
    if config.moment == 0:
        counts = qseries.distinct_partition_counts(order)
        series = [Fraction(c) for c in counts]
    else:
        series = qseries.s_moment_series(config.moment, order).coeffs
    out = []
    for n in config.n_list:
        exact = series[n]
        if n <= config.enumeration_cap:
            oracle = qseries.enumerate_moment(n, config.moment, cap=config.enumeration_cap)
            if oracle != exact:
                raise ArithmeticError(
                    f"series and enumeration disagree at n={n}, k={config.moment}: "
                    f"{exact} vs {oracle}"
                )
        out.append(qseries.MomentValue.from_exact(n, config.moment, exact, config.sig_digits))
    return out


def _asym_value(config: RunConfig, n: int):
    ctx = config.context()
    if config.moment == 1:
        return asymp.s1_asymptotic(n, ctx, workers=config.parallelism)
    if config.moment == 2:
        return asymp.s2_asymptotic(n, ctx, workers=config.parallelism)
    raise ValueError("asymptotic formulas exist for moments 1 and 2 only")


def _mainterm_value(config: RunConfig, n: int):
    ctx = config.context()
    if config.moment == 1:
        return asymp.s1_mainterm(n, ctx)
    if config.moment == 2:
        return asymp.s2_mainterm(n, ctx)
    raise ValueError("main terms exist for moments 1 and 2 only")


def _rows_compare(config: RunConfig) -> list[dict]:
    exacts = _exact_moments(config)
    rows = []
    for mv in exacts:
        approx = _asym_value(config, mv.n)
        approx_fr = mpf_to_fraction(approx)
        ratio = mv.exact / approx_fr - 1
        rows.append(
            {
                "n": mv.n,
                "exact": mv.decimal,
                "exact_rational": f"{mv.exact.numerator}/{mv.exact.denominator}",
                "asymptotic": _decimal_of(approx_fr, config.sig_digits),
                "ratio_minus_1": _decimal_of(ratio, config.sig_digits),
            }
        )
    return rows


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, emitted document)."""
    if config.command == "exact":
        moments = _exact_moments(config)
        rows = [
            {
                "n": mv.n,
                "decimal": mv.decimal,
                "rational": f"{mv.exact.numerator}/{mv.exact.denominator}",
            }
            for mv in moments
        ]
        text_lines = [f"{mv.exact.numerator}/{mv.exact.denominator}" for mv in moments]
        return EXIT_OK, _emit(config, "exact", rows, text_lines)

    if config.command in ("asym", "mainterm"):
        evaluate = _asym_value if config.command == "asym" else _mainterm_value
        rows = []
        text_lines = []
        for n in config.n_list:
            dec = _decimal_of(mpf_to_fraction(evaluate(config, n)), config.sig_digits)
            rows.append({"n": n, "decimal": dec})
            text_lines.append(dec)
        return EXIT_OK, _emit(config, config.command, rows, text_lines)

    if config.command == "compare":
        rows = _rows_compare(config)
        text_lines = [
            f"{r['n']} {r['exact']} {r['asymptotic']} {r['ratio_minus_1']}" for r in rows
        ]
        return EXIT_OK, _emit(config, "compare", rows, text_lines)

    if config.command == "pn":
        rows = []
        text_lines = []
        pent = qseries.partition_series(max(config.n_list))
        ctx = config.context()
        for n in config.n_list:
            value = asymp.rademacher_p(n, ctx=ctx)
            reference = int(pent[n])
            if value != reference:
                raise ArithmeticError(
                    f"exact-formula p({n})={value} disagrees with recurrence {reference}"
                )
            rows.append({"n": n, "p": value})
            text_lines.append(f"{n} {value}")
        return EXIT_OK, _emit(config, "pn", rows, text_lines)

    if config.command == "verify":
        results = verify.run_suites([config.suite], config.context())
        rows = [
            {"check": name, "passed": passed, "detail": detail}
            for name, passed, detail in results
        ]
        text_lines = [
            f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}"
            for name, passed, detail in results
        ]
        status = EXIT_OK if all(r["passed"] for r in rows) else EXIT_COMPUTE_FAILURE
        return status, _emit(config, "verify", rows, text_lines)

    raise ValueError(f"unknown command {config.command!r}")


def _emit(config: RunConfig, command: str, rows: list[dict], text_lines: list[str]) -> str:
    if config.output_format == "text":
        return "\n".join(text_lines)
    if config.output_format == "json":
        doc = {
            "command": command,
            "moment": config.moment,
            "precision_bits": config.precision_bits,
            "sig_digits": config.sig_digits,
            "rows": rows,
        }
        return json.dumps(doc, sort_keys=True, indent=2)
    if config.output_format == "csv":
        if not rows:
            return ""
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    raise ValueError(f"unknown output format {config.output_format!r}")


def _parse_n_list(raw: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad n list {raw!r}") from exc
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("n values must be positive integers")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsmoments",
        description="Reciprocal-sum moments over partitions into distinct parts",
    )
    default_bits = int(os.environ.get(ENV_PRECISION, "192"))
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=_parse_n_list, required=True,
                           help="comma-separated list of n values")
        p.add_argument("--moment", "-k", type=int, default=1, help="moment order k")
        p.add_argument("--prec-bits", type=int, default=default_bits,
                       help=f"working precision in bits (env {ENV_PRECISION})")
        p.add_argument("--sig-digits", type=int, default=10,
                       help="significant digits in decimal output")
        p.add_argument("--format", choices=("json", "csv", "text"), default="text",
                       dest="output_format")
        p.add_argument("--workers", type=int, default=1,
                       help="parallel workers for the asymptotic sums")
        p.add_argument("--enum-cap", type=int, default=qseries.DEFAULT_ENUMERATION_CAP,
                       help="largest n cross-checked against enumeration")

    for name, help_text in (
        ("exact", "exact rational moments via the series pipeline"),
        ("asym", "full asymptotic sums (moments 1 and 2)"),
        ("mainterm", "corollary main terms (moments 1 and 2)"),
        ("compare", "exact vs asymptotic with ratio-1 column"),
        ("pn", "exact-formula p(n) against the pentagonal recurrence"),
    ):
        add_common(sub.add_parser(name, help=help_text))

    pv = sub.add_parser("verify", help="run named invariant suites")
    add_common(pv, need_n=False)
    pv.add_argument("--suite", default="all",
                    choices=sorted(verify.SUITES) + ["all"])
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        n_list=getattr(args, "n", ()) or (),
        moment=args.moment,
        precision_bits=args.prec_bits,
        sig_digits=args.sig_digits,
        output_format=args.output_format,
        parallelism=args.workers,
        enumeration_cap=args.enum_cap,
        suite=getattr(args, "suite", "all"),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        status, document = run(config)
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"rsmoments: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE_FAILURE
    if document:
        print(document)
    return status


if __name__ == "__main__":
    sys.exit(main())
