"""Command-line interface.

Subcommands: sets, check, constant, verify, table. Exit codes: 0 success,
2 usage error, 3 constant undetermined, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import kernels
from .engine import (
    Sequence,
    WeightSet,
    has_zero_sum_consecutive,
    has_zero_sum_subsequence,
)
from .modcore import closed_form_set_size, family_set, reduce_mod
from .predictions import predicted_constants, verify_predictions
from .search import (
    DEFAULT_NODE_BUDGET,
    KIND_CONSECUTIVE,
    KIND_DAVENPORT,
    consecutive_constant,
    davenport_constant,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNDETERMINED = 3
EXIT_VERIFY_FAILED = 4

FAMILIES = ("nonzero-squares", "unit-squares", "units", "q_p")


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}")


def _weight_set(args) -> WeightSet:
    if getattr(args, "weights", None):
        values = reduce_mod(_parse_ints(args.weights), args.n)
        if not values:
            raise ValueError("custom weight list is empty")
        return WeightSet.from_values(args.n, values)
    return WeightSet.from_family(args.n, args.family)


def _node_budget(args) -> int:
    if getattr(args, "node_budget", None) is not None:
        return args.node_budget
    env = os.environ.get("ZSWC_NODE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_NODE_BUDGET


def _range(args) -> list[int]:
    if args.n is not None:
        ns = [args.n]
    elif args.from_n is None or args.to_n is None:
        raise ValueError("give either --n or both --from and --to")
    elif args.to_n < args.from_n:
        raise ValueError(f"empty range [{args.from_n}, {args.to_n}]")
    else:
        ns = list(range(args.from_n, args.to_n + 1))
    if ns and ns[0] < 2:
        raise ValueError(f"moduli start at 2, got {ns[0]}")
    return ns


def cmd_sets(args) -> int:
    try:
        members = family_set(args.n, args.family).values()
        closed = closed_form_set_size(args.n, args.family)
    except ValueError as exc:
        return _fail_usage(str(exc))
    enumerated = len(members)
    if args.format == "json":
        print(json.dumps({
            "n": args.n,
            "family": args.family,
            "members": list(members),
            "enumerated_size": enumerated,
            "closed_form_size": closed,
        }))
    else:
        print(f"n={args.n} family={args.family}")
        print("members: {" + ",".join(str(v) for v in members) + "}")
        print(f"enumerated size: {enumerated}")
        print(f"closed-form size: {closed}")
    if enumerated != closed:
        print(
            f"size mismatch: enumerated {enumerated} != closed form {closed}",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        terms = _parse_ints(args.seq)
        for t in terms:
            if not 0 <= t < args.n:
                raise ValueError(f"sequence term {t} out of range [0, {args.n - 1}]")
        seq = Sequence.from_values(args.n, terms)
        weights = _weight_set(args)
    except ValueError as exc:
        return _fail_usage(str(exc))
    decide = (
        has_zero_sum_consecutive if args.mode == "consecutive"
        else has_zero_sum_subsequence
    )
    found, witness = decide(seq, weights)
    payload = {"n": args.n, "mode": args.mode, "zero_sum": found}
    if witness is not None:
        payload["witness"] = {
            "indices": [i + 1 for i in witness.indices],  # 1-based for output
            "coefficients": list(witness.coefficients),
        }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print("true" if found else "false")
        if witness is not None:
            print(f"witness indices (1-based): {[i + 1 for i in witness.indices]}")
            print(f"witness coefficients:      {list(witness.coefficients)}")
    return EXIT_OK


def cmd_constant(args) -> int:
    try:
        weights = _weight_set(args)
        budget = _node_budget(args)
    except ValueError as exc:
        return _fail_usage(str(exc))
    run = davenport_constant if args.mode == KIND_DAVENPORT else consecutive_constant
    try:
        result = run(
            args.n, weights, args.cap,
            threads=args.threads, node_budget=budget,
        )
    except ValueError as exc:
        return _fail_usage(str(exc))
    payload = {
        "n": args.n,
        "mode": args.mode,
        "value": result.value,
        "extremal": list(result.extremal.values) if result.extremal else None,
        "nodes": result.stats.nodes,
        "millis": round(result.stats.millis, 3),
    }
    if not result.determined:
        payload["lower_bound"] = result.lower_bound
        payload["reason"] = result.reason
    print(json.dumps(payload))
    return EXIT_OK if result.determined else EXIT_UNDETERMINED


def cmd_verify(args) -> int:
    try:
        ns = _range(args)
        budget = _node_budget(args)
    except ValueError as exc:
        return _fail_usage(str(exc))
    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    counts = {"ok": 0, "skip": 0, "fail": 0}
    try:
        for n in ns:
            report = verify_predictions(
                n, args.effort, node_budget=budget, threads=args.threads
            )
            counts[report.status] += 1
            print(json.dumps(report.to_json_dict()), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    total = len(ns)
    print(
        f"{counts['ok']}/{total} verified, {counts['skip']} skipped, "
        f"{counts['fail']} failed"
    )
    return EXIT_VERIFY_FAILED if counts["fail"] else EXIT_OK


def cmd_table(args) -> int:
    try:
        ns = _range(args)
    except ValueError as exc:
        return _fail_usage(str(exc))
    preds = [predicted_constants(n) for n in ns]
    if args.format == "json":
        print(json.dumps([
            {"n": p.n, "case": p.case_tag, "d": p.d, "c_lo": p.c_lo, "c_hi": p.c_hi}
            for p in preds
        ]))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "case", "d", "c_lo", "c_hi"])
        for p in preds:
            writer.writerow([p.n, p.case_tag, p.d, p.c_lo, p.c_hi])
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zswc",
        description="Square-weighted zero-sum constants over Z_n: sets, "
        "decisions, exact search, and prediction verification.",
    )
    parser.add_argument(
        "--backend-info", action="store_true",
        help="print the active kernel backend and exit",
    )
    sub = parser.add_subparsers(dest="command")

    def add_weights(p):
        p.add_argument("--family", choices=FAMILIES, default="nonzero-squares",
                       help="named weight family (default: nonzero-squares)")
        p.add_argument("--weights", help="custom weight set, e.g. 1,4,7 (reduced mod n)")

    def add_range(p):
        p.add_argument("--n", type=int, help="single modulus")
        p.add_argument("--from", dest="from_n", type=int, help="range start (inclusive)")
        p.add_argument("--to", dest="to_n", type=int, help="range end (inclusive)")

    p = sub.add_parser("sets", help="print a weight family and cross-check its size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, default="nonzero-squares")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_sets)

    p = sub.add_parser("check", help="decide zero-sum existence for one sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seq", required=True, help="comma-separated terms, e.g. 1,1,3,3")
    p.add_argument("--mode", choices=("subsequence", "consecutive"),
                   default="subsequence")
    add_weights(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("constant", help="compute D or C exactly by pruned search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=(KIND_DAVENPORT, KIND_CONSECUTIVE),
                   default=KIND_DAVENPORT)
    add_weights(p)
    p.add_argument("--cap", type=int, help="search cap (default: n)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--node-budget", type=int,
                   help=f"node budget (default: ZSWC_NODE_BUDGET or {DEFAULT_NODE_BUDGET})")
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("verify", help="verify predictions over a range of n")
    add_range(p)
    p.add_argument("--effort", choices=("fast", "full"), default="fast")
    p.add_argument("--out", default="-", help="JSON-lines report path (default: stdout)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--node-budget", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="print the predicted-constants table")
    add_range(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend_info:
        print(json.dumps({"backend": kernels.backend_name()}))
        return EXIT_OK
    if not getattr(args, "command", None):
        parser.print_help()
        return EXIT_USAGE
    return args.func(args)


def entry():  # console_scripts hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
