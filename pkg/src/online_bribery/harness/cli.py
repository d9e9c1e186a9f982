"""Command-line interface.

Exit codes: 0 yes/ok, 1 no (``solve``/``oracle``), 2 validation error or bad
usage, 3 resource cap, 4 mismatch (``check``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from ..errors import NotApplicableError, ResourceCapError, ValidationError
from ..obs import (
    decision_to_dict,
    instance_to_dict,
    parse_instance,
    serialize_instance,
)
from ..oracle import extract_policy, solve_exact
from ..polysolve import solve_auto, solve_fast
from ..transforms import TRANSFORMS, apply_transform
from .check import ALGORITHMS, cross_check, make_algorithm
from .family import FamilySpec, Generation

EXIT_YES, EXIT_NO, EXIT_INVALID, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_solve(args):
    obs = parse_instance(_read(args.input))
    if args.mode == "oracle":
        decision = solve_exact(obs, generic=args.generic, memo=not args.no_memo)
    elif args.mode == "fast":
        decision = solve_fast(obs)
    else:
        decision = solve_auto(obs)
    out = decision_to_dict(obs, decision)
    if args.policy and decision.answer:
        out["policy"] = extract_policy(obs).to_dict(obs.candidates)
    _write(args.out, _dump(out))
    return EXIT_YES if decision.answer else EXIT_NO


def cmd_oracle(args):
    args.mode = "oracle"
    return cmd_solve(args)


def cmd_check(args):
    family = FamilySpec.from_json(_read(args.family))
    report = cross_check(family, args.a, args.b, workers=args.workers)
    _write(args.out, report.to_json(timing=args.timing))
    print(
        f"{family.name}: {report.instances} instances, {report.filtered} filtered, "
        f"{len(report.mismatches)} mismatches, {len(report.errors)} errors",
        file=sys.stderr,
    )
    return EXIT_YES if report.passed else EXIT_MISMATCH


def cmd_gen(args):
    family = FamilySpec.from_json(_read(args.family))
    buf = io.StringIO()
    generation = Generation(family)
    for obs in generation:
        buf.write(json.dumps(instance_to_dict(obs), sort_keys=True, separators=(",", ":")))
        buf.write("\n")
    _write(args.out, buf.getvalue())
    print(f"{generation.generated} instances, {generation.filtered} filtered", file=sys.stderr)
    return EXIT_YES


def cmd_transform(args):
    report = apply_transform(args.name, parse_instance(_read(args.input)))
    _write(args.out, serialize_instance(report.target))
    return EXIT_YES


def cmd_bench(args):
    family = FamilySpec.from_json(_read(args.family))
    instances = list(Generation(family))
    rows = []
    for name in args.algorithms.split(","):
        label, fn = make_algorithm(name)
        yes = errors = 0
        started = time.perf_counter()
        for obs in instances:
            try:
                yes += fn(obs).answer
            except (ResourceCapError, NotApplicableError):
                errors += 1
        elapsed = time.perf_counter() - started
        rows.append({
            "algorithm": label,
            "instances": len(instances),
            "yes": yes,
            "errors": errors,
            "seconds": round(elapsed, 4),
            "us_per_instance": round(1e6 * elapsed / max(len(instances), 1), 1),
        })
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        _write(args.out, buf.getvalue())
    else:
        _write(args.out, _dump({"format_version": 1, "family": family.name, "results": rows}))
    return EXIT_YES


def build_parser():
    parser = argparse.ArgumentParser(
        prog="online-bribery", description="Online bribery solvers and cross-checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def solve_args(p):
        p.add_argument("--in", dest="input", required=True, help="instance JSON ('-' for stdin)")
        p.add_argument("--out", default="-", help="result JSON ('-' for stdout)")
        p.add_argument("--policy", action="store_true", help="attach the winning policy tree")
        p.add_argument("--generic", action="store_true", help="oracle: full-profile evaluator")
        p.add_argument("--no-memo", action="store_true", help="oracle: disable memoisation")

    p = sub.add_parser("solve", help="decide one instance")
    solve_args(p)
    p.add_argument("--mode", choices=("auto", "fast", "oracle"), default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="decide one instance by exact game search")
    solve_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", help="cross-check two algorithms over a family")
    p.add_argument("--family", required=True)
    p.add_argument("--a", default="oracle", choices=sorted(ALGORITHMS))
    p.add_argument("--b", default="fast", choices=sorted(ALGORITHMS))
    p.add_argument("--out", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a family's instances as JSON lines")
    p.add_argument("--family", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("transform", help="apply a named instance transform")
    p.add_argument("--name", required=True, choices=sorted(TRANSFORMS))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("bench", help="time algorithms over a family")
    p.add_argument("--family", required=True)
    p.add_argument("--algorithms", default="oracle,fast")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, NotApplicableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
