"""Command line front end.

Subcommands:
  classify    decide one coefficient tuple, text or JSON output
  check       search one target n for an admissible witness
  exceptions  stream the unrepresented n up to a bound as JSON lines
  scan        sweep a coefficient corpus, write one record per valid tuple

exceptions and scan render a matplotlib figure next to the output file when
--out is given (suppress with --no-plot).

Exit codes: 0 success, 1 usage error, 2 parameter violation, 3 no witness,
4 resource cap exceeded, 5 cross-check mismatch, 6 empirical contradiction.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from contextlib import nullcontext
from multiprocessing import Pool
from pathlib import Path

from .classifier import (
    CrossCheckMismatch,
    VerdictKind,
    classify,
    tau,
)
from .lattice import ParamError, make_params
from .oracle import (
    EmpiricalVerdict,
    ResourceCapExceeded,
    exception_summary,
    exceptions,
    is_representable,
    verdict_from_windows,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARAM = 2
EXIT_NO_WITNESS = 3
EXIT_RESOURCE = 4
EXIT_CROSS_CHECK = 5
EXIT_EMPIRICAL = 6

DEFAULT_EXCEPTION_LIMIT = 100_000
DEFAULT_SCAN_LIMIT = 200_000
DEFAULT_ESCALATE_LIMIT = 1_000_000


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; the contract reserves 2 for
    # parameter violations, so remap usage errors to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_tuple_args(sub) -> None:
    sub.add_argument("--a", type=int, required=True)
    sub.add_argument("--b", type=int, required=True)
    sub.add_argument("--c", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--s", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pentaform", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_classify = subs.add_parser("classify", help="decide one coefficient tuple")
    _add_tuple_args(p_classify)
    p_classify.add_argument("--literal-sf", action="store_true")
    p_classify.add_argument("--json", action="store_true")

    p_check = subs.add_parser("check", help="find a witness for one n")
    _add_tuple_args(p_check)
    p_check.add_argument("--n", type=int, required=True)
    p_check.add_argument("--json", action="store_true")

    p_exc = subs.add_parser("exceptions", help="stream unrepresented n")
    _add_tuple_args(p_exc)
    p_exc.add_argument("--limit", type=int, default=DEFAULT_EXCEPTION_LIMIT)
    p_exc.add_argument("--literal-sf", action="store_true")
    p_exc.add_argument("--out", type=Path, default=None)
    p_exc.add_argument("--no-plot", action="store_true")

    p_scan = subs.add_parser("scan", help="sweep a coefficient corpus")
    p_scan.add_argument("--max-abc", type=int, default=15)
    p_scan.add_argument("--max-s", type=int, default=6)
    p_scan.add_argument("--max-r", type=int, default=None)
    p_scan.add_argument("--limit", type=int, default=DEFAULT_SCAN_LIMIT)
    p_scan.add_argument(
        "--escalate-limit", type=int, default=DEFAULT_ESCALATE_LIMIT
    )
    p_scan.add_argument("--jobs", type=int, default=1)
    p_scan.add_argument("--literal-sf", action="store_true")
    p_scan.add_argument("--out", type=Path, default=None)
    p_scan.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p_scan.add_argument("--timing", action="store_true")
    p_scan.add_argument("--no-plot", action="store_true")
    return parser


def _validated_params(args):
    try:
        return make_params(args.a, args.b, args.c, args.r, args.s), None
    except ParamError as exc:
        print(f"parameter violation ({exc.violation.value}): {exc}", file=sys.stderr)
        return None, EXIT_PARAM


def cmd_classify(args) -> int:
    try:
        verdict = classify(
            args.a, args.b, args.c, args.r, args.s, literal_sf=args.literal_sf
        )
    except CrossCheckMismatch as exc:
        print(f"cross-check mismatch: {exc}", file=sys.stderr)
        return EXIT_CROSS_CHECK
    doc = verdict.to_dict()
    if args.json:
        print(json.dumps(doc))
    else:
        view = doc["params"]
        print(
            "tuple: "
            + " ".join(f"{key}={view[key]}" for key in ("a", "b", "c", "r", "s"))
        )
        print(f"verdict: {doc['verdict']}")
        print(f"reason: {doc['reason']}")
        if doc["case"] is not None:
            print(f"case: {doc['case']}")
        if doc["conditions"] is not None:
            conds = " ".join(
                f"{key}={str(val).lower()}" for key, val in doc["conditions"].items()
            )
            print(f"conditions: {conds}")
        if doc["tau"] is not None:
            print(f"tau: {doc['tau']}")
        if "obstructed_primes" in doc:
            print(f"obstructed primes: {doc['obstructed_primes']}")
        if "violation" in doc:
            print(f"violation: {doc['violation']}")
    return EXIT_PARAM if verdict.kind is VerdictKind.INVALID_PARAMS else EXIT_OK


def cmd_check(args) -> int:
    params, err = _validated_params(args)
    if err is not None:
        return err
    try:
        witness = is_representable(params, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        doc = {
            "params": {
                "a": params.a,
                "b": params.b,
                "c": params.c,
                "r": params.r,
                "s": params.s,
            },
            "n": args.n,
            "witness": None
            if witness is None
            else {
                "x": witness.x,
                "y": witness.y,
                "z": witness.z,
                "units": list(witness.units()),
            },
        }
        print(json.dumps(doc))
    elif witness is None:
        print(f"n={args.n}: no admissible representation")
    else:
        u, v, w = witness.units()
        print(
            f"n={args.n}: witness x={witness.x} y={witness.y} z={witness.z}"
            f" (units {u}, {v}, {w})"
        )
    return EXIT_OK if witness is not None else EXIT_NO_WITNESS


def _square_class_k(l_n: int, tau_val: int):
    q, rem = divmod(l_n, tau_val)
    if rem:
        return None
    k = math.isqrt(q)
    if k * k != q or k % 6 not in (1, 5):
        return None
    return k


def cmd_exceptions(args) -> int:
    params, err = _validated_params(args)
    if err is not None:
        return err
    try:
        report = exceptions(params, args.limit)
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    tau_val = tau(params, literal=args.literal_sf)
    eps = params.eps
    sink = open(args.out, "w") if args.out is not None else nullcontext(sys.stdout)
    with sink as fh:
        for n in report.exceptions:
            l_n = 24 * n + eps
            row = {"n": n, "l_n": l_n, "k": _square_class_k(l_n, tau_val)}
            fh.write(json.dumps(row) + "\n")
    windows = " ".join(
        f"({lo},{hi}]={cnt}" for lo, hi, cnt in report.window_counts
    )
    print(
        f"{report.count} exceptions up to {report.limit}; windows: {windows}",
        file=sys.stderr,
    )
    if args.out is not None and not args.no_plot:
        from .report import exception_window_figure

        fig_path = args.out.with_suffix(".png")
        title = (
            f"a={params.a} b={params.b} c={params.c} r={params.r} s={params.s},"
            f" limit {report.limit}"
        )
        exception_window_figure(report, title, str(fig_path))
        print(f"figure: {fig_path}", file=sys.stderr)
    return EXIT_OK


def _scan_tuples(max_abc: int, max_r: int, max_s: int):
    odd_values = range(1, max_abc + 1, 2)
    for a in odd_values:
        for b in odd_values:
            for c in odd_values:
                for r in range(min(max_r, max_s) + 1):
                    for s in range(r, max_s + 1):
                        yield (a, b, c, r, s)


def _scan_worker(task):
    a, b, c, r, s, limit, escalate_limit, literal, timing = task
    started = time.perf_counter()
    try:
        verdict = classify(a, b, c, r, s, literal_sf=literal)
    except CrossCheckMismatch as exc:
        return {"_error": "cross_check_mismatch", "detail": str(exc)}
    if verdict.kind in (VerdictKind.INVALID_PARAMS, VerdictKind.NOT_COVERED):
        return None
    params = verdict.params
    try:
        count, windows = exception_summary(params, limit)
        empirical = verdict_from_windows(windows)
        escalated = False
        if (
            verdict.kind is VerdictKind.NOT_ALMOST_UNIVERSAL
            and empirical is EmpiricalVerdict.LIKELY_AU
            and escalate_limit > limit
        ):
            count, windows = exception_summary(params, escalate_limit)
            empirical = verdict_from_windows(windows)
            escalated = True
    except ResourceCapExceeded as exc:
        return {"_error": "resource_cap", "detail": str(exc)}
    contradiction = (
        verdict.kind is VerdictKind.NOT_ALMOST_UNIVERSAL
        and empirical is EmpiricalVerdict.LIKELY_AU
    )
    conds = verdict.conditions
    record = {
        "a": params.a,
        "b": params.b,
        "c": params.c,
        "r": params.r,
        "s": params.s,
        "verdict": verdict.kind.value,
        "reason": verdict.reason.value,
        "case": None if verdict.case is None else verdict.case.value,
        "conditions": None if conds is None else dict(conds),
        "tau": verdict.exceptional_class,
        "spinor": None if verdict.spinor is None else verdict.spinor.value,
        "empirical": empirical.value,
        "exception_count": count,
        "escalated": escalated,
    }
    if timing:
        record["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    if contradiction:
        record["_contradiction"] = True
    return record


_CSV_COLUMNS = (
    "a", "b", "c", "r", "s", "verdict", "reason", "case",
    "cond_i", "cond_ii", "cond_iii", "cond_iv",
    "tau", "spinor", "empirical", "exception_count", "escalated",
)


def _csv_row(record: dict, timing: bool) -> list:
    conds = record["conditions"] or {}
    row = [
        record["a"], record["b"], record["c"], record["r"], record["s"],
        record["verdict"], record["reason"], record["case"] or "",
        conds.get("i", ""), conds.get("ii", ""), conds.get("iii", ""),
        conds.get("iv", ""),
        "" if record["tau"] is None else record["tau"],
        record["spinor"] or "", record["empirical"],
        record["exception_count"], record["escalated"],
    ]
    if timing:
        row.append(record.get("elapsed_ms", ""))
    return row


def cmd_scan(args) -> int:
    max_r = args.max_s if args.max_r is None else args.max_r
    tasks = [
        (a, b, c, r, s, args.limit, args.escalate_limit, args.literal_sf, args.timing)
        for (a, b, c, r, s) in _scan_tuples(args.max_abc, max_r, args.max_s)
    ]
    if args.jobs > 1:
        chunk = max(1, len(tasks) // (args.jobs * 8))
        with Pool(args.jobs) as pool:
            results = pool.map(_scan_worker, tasks, chunksize=chunk)
    else:
        results = [_scan_worker(task) for task in tasks]

    errors = [res for res in results if res is not None and "_error" in res]
    records = [res for res in results if res is not None and "_error" not in res]
    contradictions = [rec for rec in records if rec.pop("_contradiction", False)]

    sink = open(args.out, "w") if args.out is not None else nullcontext(sys.stdout)
    with sink as fh:
        if args.format == "csv":
            columns = _CSV_COLUMNS + (("elapsed_ms",) if args.timing else ())
            writer = csv.writer(fh)
            writer.writerow(columns)
            for rec in records:
                writer.writerow(_csv_row(rec, args.timing))
        else:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")
    print(f"{len(records)} records from {len(tasks)} tuples", file=sys.stderr)

    if args.out is not None and not args.no_plot and records:
        from .report import scan_summary_figure

        fig_path = args.out.with_suffix(".png")
        scan_summary_figure(records, str(fig_path))
        print(f"figure: {fig_path}", file=sys.stderr)

    for err in errors:
        print(f"{err['_error']}: {err['detail']}", file=sys.stderr)
    if any(err["_error"] == "cross_check_mismatch" for err in errors):
        return EXIT_CROSS_CHECK
    if any(err["_error"] == "resource_cap" for err in errors):
        return EXIT_RESOURCE
    if contradictions:
        for rec in contradictions:
            print(
                "empirical contradiction: "
                + " ".join(f"{k}={rec[k]}" for k in ("a", "b", "c", "r", "s")),
                file=sys.stderr,
            )
        return EXIT_EMPIRICAL
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "classify": cmd_classify,
        "check": cmd_check,
        "exceptions": cmd_exceptions,
        "scan": cmd_scan,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
