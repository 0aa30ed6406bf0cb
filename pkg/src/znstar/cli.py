"""Command-line interface.

Exit codes: 0 success, 1 usage or domain error, 2 resource-cap error,
3 when a run records a mathematical finding (a conjecture counterexample
or a violated bound) — the output is still written in full so batch
pipelines can triage.

Machine-readable output only: JSON on stdout, JSONL/CSV under --out.
Integers that can overflow 64-bit consumers are serialized as decimal
strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config
from .arith import factorize
from .bounds import (
    phi_over_2omega_scan,
    phi_ratio_constant,
    primorial_growth_check,
    robin_omega_check,
    rosser_schoenfeld_check,
)
from .census import build_census_report
from .conjectures import scan_conjecture, write_counterexamples, write_records_jsonl
from .errors import DomainError, FalsificationError, ResourceLimitError
from .families import (
    FunctionFamily,
    LinearForm,
    fermat_numbers,
    mersenne_numbers,
    quadratic_plus_one,
    shifted_pair,
    sophie_germain_pair,
)
from .gaps import gap_census_table
from .witness import (
    WitnessReport,
    construct_shifted_pair_witness,
    construct_sophie_germain_witness,
    exceptional_set_scan,
    find_smallest_witness,
)

_I64_MAX = 2**63 - 1

_FAMILY_FLAGS = ("shifted-pair", "sophie-germain", "mersenne", "quadratic", "fermat")


def _family_from_flag(name: str, a: int) -> FunctionFamily:
    if name == "shifted-pair":
        return shifted_pair(a)
    if name == "sophie-germain":
        return sophie_germain_pair()
    if name == "mersenne":
        return mersenne_numbers()
    if name == "quadratic":
        return quadratic_plus_one()
    return fermat_numbers()


def _json_int(v: int):
    return v if -_I64_MAX <= v <= _I64_MAX else str(v)


def _witness_dict(report: WitnessReport | None, modulus: int, family: FunctionFamily) -> dict:
    if report is None:
        return {
            "modulus": _json_int(modulus),
            "family": family.to_dict(),
            "witness": None,
            "values": [],
            "method": "search",
            "verified": False,
        }
    d = {
        "modulus": _json_int(report.modulus),
        "family": report.family.to_dict(),
        "witness": report.witness,
        "values": [str(v) for v in report.values],
        "method": report.method,
        "verified": report.verified,
    }
    if report.factorial_of is not None:
        d["factorial_of"] = report.factorial_of
    return d


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _cmd_census(args) -> int:
    report = build_census_report(args.n, LinearForm(args.a, args.b), brute=args.brute)
    _emit(
        {
            "modulus": args.n,
            "form": {"a": args.a, "b": args.b},
            "formula_count": _json_int(report.formula_count),
            "brute_count": None if report.brute_count is None else _json_int(report.brute_count),
            "lower_bound": str(report.lower_bound),
        }
    )
    return 0


def _cmd_witness(args) -> int:
    family = _family_from_flag(args.family, args.a)
    if args.construct == "appendix-a":
        if args.family != "sophie-germain":
            raise DomainError("--construct appendix-a applies to the sophie-germain family")
        report = construct_sophie_germain_witness(factorize(args.n))
    elif args.construct == "appendix-c":
        if args.family != "shifted-pair":
            raise DomainError("--construct appendix-c applies to the shifted-pair family")
        report = construct_shifted_pair_witness(args.a, factorize(args.n))
    else:
        report = find_smallest_witness(family, args.n)
    _emit(_witness_dict(report, args.n, family))
    return 0


def _cmd_exceptional(args) -> int:
    result = exceptional_set_scan(
        _family_from_flag(args.family, args.a), args.limit, workers=args.workers
    )
    _emit(result)
    return 0


def _cmd_conjecture(args) -> int:
    records, summary = scan_conjecture(
        args.which, args.n_from, args.n_to, modulus_mode=args.mode, workers=args.workers
    )
    write_records_jsonl(records, args.out)
    counterexamples = 0
    if summary["fails"]:
        counterexamples = write_counterexamples(records, args.out + ".counterexamples")
        summary = {**summary, "counterexample_log": args.out + ".counterexamples"}
    _emit(summary)
    return 3 if counterexamples else 0


def _cmd_gaps(args) -> int:
    rows = gap_census_table(args.x, args.k_max)
    with open(args.out, "w", newline="\n") as fh:
        fh.write("k,x_limit,empirical,predicted,ratio\n")
        for row in rows:
            ratio = "" if row.ratio is None else f"{row.ratio:.6g}"
            fh.write(f"{row.k},{row.x_limit},{row.empirical},{row.predicted:.6g},{ratio}\n")
    return 0


def _cmd_bounds(args) -> int:
    if args.which == "lemma4":
        report = phi_over_2omega_scan(args.a, args.limit)
        finding = (
            report.empirical_threshold is not None
            and report.empirical_threshold > report.paper_constant
        )
        _emit(
            {
                "statement": report.statement,
                "parameter": report.parameter,
                "paper_constant": _json_int(report.paper_constant),
                "empirical_threshold": report.empirical_threshold,
                "scan_limit": report.scan_limit,
            }
        )
        return 3 if finding else 0
    if args.which in ("rosser", "robin"):
        check = rosser_schoenfeld_check if args.which == "rosser" else robin_omega_check
        violations = check(args.limit)
        _emit(
            {
                "statement": args.which,
                "limit": args.limit,
                "violations": [
                    {"n": v.n, "observed": v.observed, "bound": v.bound} for v in violations
                ],
            }
        )
        return 3 if violations else 0
    report = primorial_growth_check(args.limit)
    _emit(
        {
            "statement": "remark10",
            "k_limit": report.k_limit,
            "main_violations": [
                {"k": v.n, "lhs_bits": v.observed, "rhs_bits": v.bound}
                for v in report.main_violations
            ],
            "auxiliary_failures": [
                {"k": f.k, "p_k": f.p_k, "log_sum": f.log_sum, "lower_bound": f.lower_bound}
                for f in report.auxiliary_failures
            ],
            "auxiliary_holds_from_k": report.auxiliary_holds_from_k,
        }
    )
    return 3 if report.main_violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="znstar",
        description="Coprime residue witnesses, census formulas, conjecture "
        "harnesses, prime-gap statistics and analytic bound checks.",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=config.default_workers(),
        help="parallel workers for range scans (output is identical at any count)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="coprime-shift census #{x in Z_n*: gcd(ax+b, n) = 1}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="also run the enumeration oracle")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("witness", help="smallest or constructed witness for a family")
    p.add_argument("--family", choices=_FAMILY_FLAGS, required=True)
    p.add_argument("--a", type=int, default=1, help="half-gap for the shifted pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--construct", choices=("appendix-a", "appendix-c"))
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("exceptional", help="moduli up to a limit with no witness")
    p.add_argument("--family", choices=_FAMILY_FLAGS, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=_cmd_exceptional)

    p = sub.add_parser("conjecture", help="smallest-witness primality harness scan")
    p.add_argument("--which", choices=("twin", "sophie-germain", "mersenne", "landau"), required=True)
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--mode", choices=("factorial", "plain"), default="factorial")
    p.add_argument("--out", required=True, help="JSONL output path")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("gaps", help="consecutive prime gap census vs predicted density")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_gaps)

    p = sub.add_parser("bounds", help="verify the analytic inequalities")
    p.add_argument("--which", choices=("lemma4", "rosser", "robin", "remark10"), required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=_cmd_bounds)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except FalsificationError as exc:
        print(f"falsification event: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
