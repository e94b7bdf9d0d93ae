"""Command line interface.

Exit codes: 0 success, 1 input or parse error, 2 precondition violation
(not smooth, not complete, ...), 3 internal theorem inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import catalog
from .demazure import demazure_roots
from .divisor import ToricDivisor, divisor_from_json, is_ample, is_nef, support_function
from .errors import InputError, PreconditionError, TheoremInconsistency
from .fan import check_valid, fan_from_json, fan_to_json
from .pipeline import analyze, theorem_sweep
from .polytope import dual_polytope, polytope_from_json, polytope_to_json

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INCONSISTENT = 0, 1, 2, 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _load_fan(args):
    return check_valid(fan_from_json(_load_json(args.fan)), strict=args.strict)


def cmd_analyze(args) -> int:
    report = analyze(_load_fan(args), strict=args.strict)
    text = report.dumps()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
        print(f"fano={report.fano} all_nef={report.all_nef} product={report.product_dims} "
              f"theorem_consistent={report.theorem_consistent}")
    else:
        sys.stdout.write(text)
    if not report.theorem_consistent:
        raise TheoremInconsistency("; ".join(report.problems))
    return EXIT_OK


def cmd_roots(args) -> int:
    rs = demazure_roots(_load_fan(args))
    sys.stdout.write(_dump(rs.to_json()))
    return EXIT_OK


def cmd_nef(args) -> int:
    fan = _load_fan(args)
    if args.ray is not None:
        D = ToricDivisor.prime(fan, args.ray)
    else:
        D = divisor_from_json(_load_json(args.divisor))
    nef = is_nef(fan, D)
    ample = is_ample(fan, D)
    out = {
        "coefficients": list(D.coefficients),
        "support_function": [list(m) for m in support_function(fan, D).per_cone],
        "nef": nef.verdict,
        "basepoint_free": nef.verdict,
        "ample": ample.verdict,
    }
    for key, cert in (("nef_witness", nef), ("ample_witness", ample)):
        if not cert:
            out[key] = {"cone": cert.witness[0], "ray": cert.witness[1], "value": cert.value, "bound": cert.bound}
    sys.stdout.write(_dump(out))
    return EXIT_OK


def cmd_dual(args) -> int:
    P = polytope_from_json(_load_json(args.polytope))
    sys.stdout.write(_dump(polytope_to_json(dual_polytope(P))))
    return EXIT_OK


def cmd_theorem(args) -> int:
    summary = theorem_sweep(catalog.selection(args.catalog))
    if args.json:
        sys.stdout.write(_dump(summary))
    else:
        for row in summary["entries"]:
            mark = _color("ok", "32") if row["theorem_consistent"] else _color("INCONSISTENT", "31")
            print(f"{row['name']:<10} fano={row['fano']!s:<5} all_nef={row['all_nef']!s:<5} "
                  f"product={row['product_dims']}  {mark}")
        for cell_name, count in summary["cells"].items():
            print(f"  {cell_name}: {count}")
        for msg in summary["expected_mismatches"]:
            print(f"  mismatch: {msg}")
    if not summary["ok"]:
        raise TheoremInconsistency("inconsistent entries: " + ", ".join(summary["inconsistent"]))
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            print(name)
        return EXIT_OK
    if not args.name:
        raise InputError("catalog export needs --name")
    sys.stdout.write(_dump(fan_to_json(catalog.entry(args.name).fan)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricnef", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fan_command(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("fan", help="fan JSON file")
        p.add_argument("--strict", action="store_true", help="also check pairwise cone intersections")
        p.set_defaults(func=func)
        return p

    p = fan_command("analyze", cmd_analyze, "full analysis report of a fan")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    fan_command("roots", cmd_roots, "Demazure roots of a fan")
    p = fan_command("nef", cmd_nef, "nef / ample test for a divisor")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--divisor", help="divisor JSON file")
    g.add_argument("--ray", type=int, help="use the prime divisor of this ray (file order)")

    p = sub.add_parser("dual", help="dual polytope")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("theorem", help="check the nef-tangent-bundle theorem on a catalog")
    p.add_argument("--catalog", default="all", choices=sorted(catalog.SELECTIONS))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("catalog", help="built-in fans")
    p.add_argument("action", choices=["export", "list"])
    p.add_argument("--name")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TheoremInconsistency as exc:
        print(f"error: theorem inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
