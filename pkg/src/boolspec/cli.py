"""Command-line interface: analyze, verify, scan, napdt, construct, plotdata."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import bounds as bounds_mod
from . import measures
from .constructions import CLOSED_FORM_FAMILIES, FamilySpec, closed_form_coeffs, make
from .core import (BooleanFunction, f2_degree, format_table_text, max_arity,
                   parse_table_text, wht)
from .errors import BoolspecError
from .napdt import napdt
from .scan import CSV_HEADER, iter_exhaustive, scan_sampled
from .suites import SUITES, run_suite

USAGE_ERROR = 2


def _add_family_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=sorted(
        ("and", "parity", "bent_ip", "addressing", "ad_tt", "ad_tta",
         "ab", "aab", "mand", "mad", "composed")))
    parser.add_argument("--t", type=int)
    parser.add_argument("--tprime", type=int)
    parser.add_argument("--a", type=int)
    parser.add_argument("--ell", type=int)
    parser.add_argument("--p", type=int)
    parser.add_argument("--inner", type=str,
                        help="inner family as JSON, for --family composed")


def _spec_from_args(args: argparse.Namespace) -> FamilySpec:
    inner = None
    if args.inner:
        inner = FamilySpec.from_json_dict(json.loads(args.inner))
    return FamilySpec(family=args.family, t=args.t, tprime=args.tprime,
                      a=args.a, ell=args.ell, p=args.p, inner=inner)


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    if bool(args.input) == bool(args.family):
        raise SystemExit("analyze: need exactly one of --input or --family")
    if args.input:
        f = parse_table_text(Path(args.input).read_text())
        prof = measures.profile(f)
        report = bounds_mod.bound_report(f)
    else:
        spec = _spec_from_args(args)
        if spec.arity <= max_arity():
            f = make(spec)
            prof = measures.profile(f)
            report = bounds_mod.bound_report(f)
        elif spec.family in CLOSED_FORM_FAMILIES:
            # spectrum-only path: the truth table would exceed the guard
            coeffs = closed_form_coeffs(spec)
            prof = measures.profile_from_coeffs(spec.arity, coeffs)
            report = bounds_mod.bound_report_from_coeffs(spec.arity, coeffs, None, prof)
        else:
            raise SystemExit(
                f"analyze: arity {spec.arity} exceeds the guard and "
                f"{spec.family} has no closed-form spectrum")
    out = {"profile": prof.to_json_dict(), "bounds": report.to_json_dict()}
    _write(args.out, json.dumps(out, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, max_n=args.max_n, samples=args.samples,
                        seed=args.seed)
    failed = False
    for res in results:
        print(res.summary_line())
        if not res.passed:
            failed = True
            payload = res.failures_json() + "\n"
            if args.failures in (None, "-"):
                sys.stderr.write(payload)
            else:
                with open(args.failures, "a") as fh:
                    fh.write(payload)
    return 1 if failed else 0


def cmd_scan(args: argparse.Namespace) -> int:
    if args.n > 5:
        raise SystemExit("scan: n > 5 is out of reach; use analyze on single functions")
    if args.n == 5 and not args.samples:
        raise SystemExit("scan: n = 5 has 2^32 functions; pass --samples K")
    if args.samples:
        records = sorted(scan_sampled(args.n, args.samples, args.seed),
                         key=lambda r: r.index)
    else:
        records = iter_exhaustive(args.n)
    lines = [CSV_HEADER]
    bad = 0
    for rec in records:
        lines.append(rec.csv_row())
        bad += len(rec.failures)
    _write(args.out, "\n".join(lines) + "\n")
    if bad:
        sys.stderr.write(json.dumps({"scan_failures": bad}) + "\n")
        return 1
    return 0


def cmd_napdt(args: argparse.Namespace) -> int:
    f = parse_table_text(Path(args.input).read_text())
    gamma, trace = napdt(f, args.mode)
    _write(args.trace, json.dumps(trace.to_json_dict(), indent=2) + "\n")
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    f = make(spec)
    _write(args.out, format_table_text(f))
    return 0


def cmd_plotdata(args: argparse.Namespace) -> int:
    rho, kappa = args.rho, args.kappa
    logk = math.log2(kappa)
    kline = rho * rho / (kappa * logk * logk)
    if args.kind == "kprime":
        lo = math.sqrt(kappa)
        curve = lambda x: kappa / (x * x)
        cl = lambda x: math.sqrt(rho) / (x * math.log2(x)) if x > 1 else None
    else:
        lo = max(math.sqrt(rho), rho / logk)
        curve = lambda x: rho / (x * logk)
        cl = lambda x: (math.sqrt(rho) / (x * math.log2(x * x / rho))
                        if x * x > 2 * rho else None)
    xs = np.geomspace(lo, kappa, args.points)
    lines = ["x,kline,curve,cl_curve"]
    for x in xs:
        clv = cl(float(x))
        lines.append(f"{float(x)!r},{kline!r},{curve(float(x))!r},"
                     f"{'' if clv is None else repr(clv)}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolspec",
        description="Exact Fourier-analytic measures of Boolean functions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="profile + bound report as JSON")
    p.add_argument("--input", help="truth-table text file")
    _add_family_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--failures", default="-",
                   help="file for machine-readable failure JSON (default stderr)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan", help="frontier CSV over all functions of arity n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("napdt", help="run the parity-fixing algorithm")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    p.add_argument("--trace", default="-")
    p.set_defaults(fn=cmd_napdt)

    p = sub.add_parser("construct", help="emit a family member's truth table")
    _add_family_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("plotdata", help="bound-curve CSV on a log-spaced grid")
    p.add_argument("--kind", choices=("kprime", "kdprime"), required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_plotdata)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BoolspecError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except SystemExit as exc:
        if isinstance(exc.code, str):
            sys.stderr.write(exc.code + "\n")
            return USAGE_ERROR
        raise


if __name__ == "__main__":
    sys.exit(main())
