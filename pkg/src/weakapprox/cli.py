"""Command-line front end: experiment orchestration and artifact I/O.

Exit codes: 0 all checks passed, 1 a bound or oracle check failed,
2 usage error, 3 resource guard exceeded.

Everything is deterministic for a fixed invocation: one seed drives all
randomness, JSON is emitted with sorted keys, and the SVG writer formats
floats with a fixed pattern.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import check_theorem
from .cf import PartialQuotients, convergents, qnorm_table, truncation_value
from .construct import (
    GuardExceeded,
    InterleavingError,
    construct_thm1,
    construct_thm2,
    construct_thm3,
)
from .exponents import exponent_report
from .intmath import decimal_str, fraction_str
from .lattice import diag_scale, lattice_exponents, lattice_from_pair
from .lemma import StepPair, check_conditions, find_witnesses, random_step_pair, verify_witness
from .measure import StepFunction, min_step, psi_step, upsilon_step
from .svgplot import PlotStyle, plot_steps

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _parse_gamma(text: str) -> Fraction:
    return Fraction(text)


def _parse_prefix(text: str) -> PartialQuotients:
    text = text.strip()
    if text.startswith("{"):
        return PartialQuotients.from_json(text)
    return PartialQuotients.parse(text)


def _load_prefix(arg: str) -> PartialQuotients:
    """Accept '[a0;a1,...]' inline or a path to a JSON artifact."""
    p = Path(arg)
    if p.exists():
        return PartialQuotients.from_json(p.read_text(encoding="utf-8"))
    return _parse_prefix(arg)


def _seed_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def cmd_cf(args) -> int:
    pq = _load_prefix(args.prefix)
    conv = convergents(pq)
    value = truncation_value(pq)
    table = qnorm_table(pq) if pq.depth >= 2 else []
    out = {
        "prefix": {"a0": decimal_str(pq.a0), "tail": [decimal_str(a) for a in pq.tail]},
        "value": fraction_str(value),
        "convergents": [
            {"index": c.index, "p": decimal_str(c.p), "q": decimal_str(c.q)}
            for c in conv
        ],
        "distances": [
            {
                "index": row.index,
                "q": decimal_str(row.q),
                "value": fraction_str(row.value),
                "sandwich_ok": row.sandwich_ok,
                "tail_degenerate": row.tail_degenerate,
            }
            for row in table
        ],
    }
    _emit(_json_dump(out), args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    gamma = _parse_gamma(args.gamma)
    if args.scheme == "thm1":
        seed = _seed_tuple(args.seed_theta) if args.seed_theta else (0, 1)
        pq = construct_thm1(gamma, args.depth, seed=seed)
        _emit(pq.to_json() + "\n", args.output)
        return EXIT_OK
    builder = construct_thm2 if args.scheme == "thm2" else construct_thm3
    kwargs = {}
    if args.seed_theta:
        kwargs["seed_theta"] = _seed_tuple(args.seed_theta)
    if args.seed_eta:
        kwargs["seed_eta"] = _seed_tuple(args.seed_eta)
    theta, eta = builder(gamma, args.depth, **kwargs)
    out = {
        "theta": json.loads(theta.to_json()),
        "eta": json.loads(eta.to_json()),
    }
    _emit(_json_dump(out), args.output)
    return EXIT_OK


def cmd_measure(args) -> int:
    pq = _load_prefix(args.prefix)
    f = psi_step(pq) if args.kind == "psi" else upsilon_step(pq)
    _emit(f.to_csv(), args.output)
    return EXIT_OK


def cmd_exponents(args) -> int:
    theta = _load_prefix(args.theta)
    eta = _load_prefix(args.eta) if args.eta else None
    window = None
    if args.window:
        lo, _, hi = args.window.partition(",")
        window = (int(lo), int(hi))
    report = exponent_report(theta, eta, window=window)
    _emit(_json_dump(report), args.output)
    return EXIT_CHECK_FAILED if report["flags"] else EXIT_OK


def cmd_lattice(args) -> int:
    theta = _load_prefix(args.theta)
    eta = _load_prefix(args.eta)
    lat = lattice_from_pair(theta, eta)
    if args.d1 != "1" or args.d2 != "1":
        lat = diag_scale(lat, Fraction(args.d1), Fraction(args.d2))
    t_max = Fraction(args.t_max) if args.t_max else None
    ordinary, uniform, info = lattice_exponents(lat, t_max)
    out = {
        "lattice": lat.to_dict(),
        "omega_lattice": ordinary.to_dict(),
        "omega_bar_lattice": uniform.to_dict(),
        "info": info,
        "flags": [],
    }
    if uniform.value > ordinary.value + 0.05:
        out["flags"].append("uniform estimate above ordinary estimate")
    _emit(_json_dump(out), args.output)
    return EXIT_CHECK_FAILED if out["flags"] else EXIT_OK


def cmd_lemma1(args) -> int:
    if args.u_csv and args.v_csv:
        u = StepFunction.from_csv(Path(args.u_csv).read_text(encoding="utf-8"),
                                  domain_end=args.u_end)
        v = StepFunction.from_csv(Path(args.v_csv).read_text(encoding="utf-8"),
                                  domain_end=args.v_end)
        pair = StepPair(u, v)
        report = check_conditions(pair)
        witnesses = find_witnesses(pair, margin=args.margin)
        out = {
            "a_holds": report.a_holds,
            "b_holds": report.b_holds,
            "witnesses": [w.to_dict() for w in witnesses],
            "all_verified": all(verify_witness(pair, w) for w in witnesses),
        }
        _emit(_json_dump(out), args.output)
        ok = (not report.a_holds or not report.b_holds) or (
            witnesses and out["all_verified"]
        )
        return EXIT_OK if ok else EXIT_CHECK_FAILED

    results = []
    failures = 0
    for k in range(args.pairs):
        gen = random_step_pair(args.seed + k, pieces=args.pieces)
        report = check_conditions(gen.pair)
        witnesses = find_witnesses(gen.pair)
        verified = [w for w in witnesses if verify_witness(gen.pair, w)]
        ok = report.a_holds and report.b_holds and len(verified) >= 1
        if not ok:
            failures += 1
        results.append(
            {
                "seed": args.seed + k,
                "a_holds": report.a_holds,
                "b_holds": report.b_holds,
                "witnesses": len(verified),
            }
        )
    out = {"pairs": results, "failures": failures}
    _emit(_json_dump(out), args.output)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def cmd_verify(args) -> int:
    gamma = _parse_gamma(args.gamma)
    tol = args.tolerance

    if args.theorem == "T1":
        pq = construct_thm1(gamma, args.depth)
        report = exponent_report(pq)
        estimates = {
            "omega_theta": report["omega_theta"],
            "omega_bar_theta": report["omega_bar_theta"],
        }
        check = check_theorem("T1", estimates, tolerance=tol)
    elif args.theorem in ("T2", "T3"):
        builder = construct_thm2 if args.theorem == "T2" else construct_thm3
        theta, eta = builder(gamma, args.depth)
        report = exponent_report(theta, eta)
        estimates = {
            k: report[k]
            for k in ("omega_theta", "omega_eta", "varpi_psi", "varpi_upsilon")
        }
        check = check_theorem(args.theorem, estimates, tolerance=tol)
    else:  # T4
        theta, eta = construct_thm3(gamma, args.depth)
        report = exponent_report(theta, eta)
        lat = lattice_from_pair(theta, eta)
        ordinary, uniform, info = lattice_exponents(lat)
        estimates = {
            "omega_lattice": ordinary.value,
            "omega_bar_lattice": uniform.value,
        }
        check = check_theorem("T4", estimates, tolerance=tol)
        report = {"number_side": report, "lattice_info": info}

    out = {
        "theorem": args.theorem,
        "gamma": str(gamma),
        "depth": args.depth,
        "check": check.to_dict(),
        "report": report,
    }
    _emit(_json_dump(out), args.output)
    if check.applicable and check.satisfied:
        return EXIT_OK
    if report_flags(report):
        return EXIT_CHECK_FAILED
    return EXIT_OK if not check.applicable else EXIT_CHECK_FAILED


def report_flags(report: dict) -> list:
    if "flags" in report:
        return report["flags"]
    if "number_side" in report:
        return report["number_side"].get("flags", [])
    return []


def cmd_plot(args) -> int:
    functions = []
    labels = args.label or []
    for k, path in enumerate(args.csv):
        text = Path(path).read_text(encoding="utf-8")
        f = StepFunction.from_csv(text)
        label = labels[k] if k < len(labels) else Path(path).stem
        functions.append((label, f))
    if args.prefix:
        pq = _load_prefix(args.prefix)
        psi = psi_step(pq)
        ups = upsilon_step(pq)
        functions.append(("psi", psi))
        functions.append(("upsilon", ups))
    if not functions:
        raise SystemExit(EXIT_USAGE)
    annotations = [int(a) for a in args.annotate.split(",")] if args.annotate else []
    svg = plot_steps(
        functions,
        annotations,
        PlotStyle(log_axes=not args.linear, title=args.title),
    )
    _emit(svg, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakapprox",
        description="Exact-arithmetic experiments with continued fractions, "
        "irrationality measure functions, Diophantine exponents, and "
        "two-dimensional lattice products.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="convergents and exact distances of a prefix")
    p.add_argument("--prefix", required=True, help="'[a0;a1,...]' or JSON artifact path")
    p.add_argument("--output")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("construct", help="generate an extremal prefix or pair")
    p.add_argument("--scheme", required=True, choices=("thm1", "thm2", "thm3"))
    p.add_argument("--gamma", required=True, help="rational, e.g. 3/2")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed-theta", help="comma-separated a0,a1,...")
    p.add_argument("--seed-eta", help="comma-separated b0,b1,...")
    p.add_argument("--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("measure", help="export a measure function as CSV")
    p.add_argument("--prefix", required=True)
    p.add_argument("--kind", choices=("psi", "upsilon"), default="psi")
    p.add_argument("--output")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("exponents", help="exponent estimates and ordering flags")
    p.add_argument("--theta", required=True)
    p.add_argument("--eta")
    p.add_argument("--window", help="explicit sample window 'lo,hi'")
    p.add_argument("--output")
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("lattice", help="lattice exponent estimates for a pair")
    p.add_argument("--theta", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--t-max", help="rational cap; defaults to the degeneracy radius")
    p.add_argument("--d1", default="1", help="diagonal row scale for the first row")
    p.add_argument("--d2", default="1", help="diagonal row scale for the second row")
    p.add_argument("--output")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("lemma1", help="step-pair hypothesis checks and witnesses")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--pieces", type=int, default=10)
    p.add_argument("--u-csv", help="CSV for the first function")
    p.add_argument("--v-csv", help="CSV for the second function")
    p.add_argument("--u-end", type=int, help="domain end for the first CSV")
    p.add_argument("--v-end", type=int, help="domain end for the second CSV")
    p.add_argument("--margin", type=int, default=2,
                   help="interior margin (intervals) excluded from the witness scan")
    p.add_argument("--output")
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("verify", help="build a construction and check its bound")
    p.add_argument("--theorem", required=True, choices=("T1", "T2", "T3", "T4"))
    p.add_argument("--gamma", required=True)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="render step functions to SVG")
    p.add_argument("--csv", action="append", default=[], help="repeatable CSV input")
    p.add_argument("--label", action="append", help="repeatable trace label")
    p.add_argument("--prefix", help="plot psi and upsilon of this prefix")
    p.add_argument("--annotate", help="comma-separated vertical marker positions")
    p.add_argument("--title", default="")
    p.add_argument("--linear", action="store_true", help="linear instead of log axes")
    p.add_argument("--output")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InterleavingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
