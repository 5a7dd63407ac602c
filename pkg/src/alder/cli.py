"""Command-line front end.

Subcommands

    count    stream exact values of one counter over a range of n
    verify   run one statement's grid and write a verification report
    inject   exhaustively verify the piecewise injection per (d, N, n)
    search   scan a grid for negative deltas (informational)

Reports are JSON lines by default, one object per cell with the fixed
field order  v, cmd, params, status, value, witness  and counts encoded
as decimal strings; a final summary object carries the status tallies.
Output is byte-stable for a fixed invocation regardless of --jobs, so
reports can be diffed across runs; wall-clock timing goes to stderr
only.  CSV is a flat projection for spreadsheets, and the human format
is for reading at the terminal.

Exit codes: 0 when every in-hypothesis assertion holds, 1 when at least
one fails (a falsification candidate), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import counting, inequalities, injection
from .counting import (big_q, big_q_minus, big_q_minus_minus, delta,
                       delta_minus, delta_minus_minus, g_script, l_script,
                       q_count, rho)
from .inequalities import FAILS, GridSpec, VerificationReport
from .parallel import parallel_map
from .partset import s_set, t_set

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, ...]:
    """'5' -> (5,); '3..7' -> (3, 4, 5, 6, 7)."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise UsageError(f"bad range {text!r} (expected N or LO..HI)") from None


def _record_obj(cmd: str, params: dict, status: str, value, witness) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "cmd": cmd,
        "params": params,
        "status": status,
        "value": None if value is None else str(value),
        "witness": witness,
    }


def _emit(records: list[dict], summary: dict, fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
        out.write(json.dumps({"v": SCHEMA_VERSION, "cmd": summary.pop("cmd"),
                              "summary": summary}, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        param_keys: list[str] = []
        for rec in records:
            for k in rec["params"]:
                if k not in param_keys:
                    param_keys.append(k)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["cmd", *param_keys, "status", "value"])
        for rec in records:
            writer.writerow([rec["cmd"],
                             *[rec["params"].get(k, "") for k in param_keys],
                             rec["status"],
                             "" if rec["value"] is None else rec["value"]])
    else:  # human
        for rec in records:
            params = " ".join(f"{k}={v}" for k, v in rec["params"].items())
            line = f"{params}  {rec['status']}"
            if rec["value"] is not None:
                line += f"  value={rec['value']}"
            if rec["witness"]:
                line += f"  witness={json.dumps(rec['witness'], separators=(',', ':'))}"
            out.write(line + "\n")
        tallies = " ".join(f"{k}={v}" for k, v in summary.items() if k != "cmd")
        out.write(f"summary: {tallies}\n")


def _report_records(report: VerificationReport) -> tuple[list[dict], dict]:
    records = [_record_obj(report.cmd, rec.params, rec.status, rec.value, rec.witness)
               for rec in report.records]
    summary = {"cmd": report.cmd, "cells": len(report.records)}
    summary.update(dict(sorted(report.summary.items())))
    return records, summary


# ---------------------------------------------------------------- count

_COUNT_KINDS = frozenset({"q", "Q", "Qm", "Qmm", "delta", "delta_m",
                          "delta_mm", "g", "l", "rho"})

_COUNT_FNS = {
    "q": q_count, "Q": big_q, "Qm": big_q_minus, "Qmm": big_q_minus_minus,
    "delta": delta, "delta_m": delta_minus, "delta_mm": delta_minus_minus,
}


def cmd_count(args, out) -> int:
    kind = args.kind.replace("-", "_")
    if kind not in _COUNT_KINDS:
        raise UsageError(f"unknown count kind {args.kind!r}")
    n_values = parse_range(args.n)

    if kind == "rho":
        if args.set == "T":
            if args.s is None or args.d is None:
                raise UsageError("rho over T needs --s and --d")
            A = t_set(args.s, args.d)
            params_base = {"kind": kind, "set": "T", "s": args.s, "d": args.d}
        elif args.set == "S":
            if args.N is None or args.d is None:
                raise UsageError("rho over S needs --N and --d")
            A = s_set(args.d, args.N)
            params_base = {"kind": kind, "set": "S", "d": args.d, "N": args.N}
        else:
            raise UsageError("rho needs --set T or --set S")
        fn = lambda n: rho(A, n)
    elif kind in ("g", "l"):
        if args.d is None:
            raise UsageError(f"kind {kind} needs --d")
        fn = (lambda n: g_script(args.d, n)) if kind == "g" else \
             (lambda n: l_script(args.d, n))
        params_base = {"kind": kind, "d": args.d}
    else:
        if args.a is None or args.d is None:
            raise UsageError(f"kind {kind} needs --a and --d")
        fn = lambda n: _COUNT_FNS[kind](args.a, args.d, n)
        params_base = {"kind": kind, "a": args.a, "d": args.d}

    records = [_record_obj("count", {**params_base, "n": n}, "ok", fn(n), None)
               for n in n_values]
    _emit(records, {"cmd": "count", "cells": len(records), "ok": len(records)},
          args.format, out)
    return 0


# ---------------------------------------------------------------- verify

def _grid_from_args(args, need_N=False, need_a=False) -> GridSpec:
    kwargs = dict(n_min=args.n_min, n_max=args.n_max,
                  evaluate_out_of_hypothesis=args.force)
    if args.d is None:
        raise UsageError("this verification needs --d")
    kwargs["d_values"] = parse_range(args.d)
    if need_N:
        if args.N is None:
            raise UsageError("this verification needs --N")
        kwargs["N_values"] = parse_range(args.N)
    if need_a:
        if args.a is None:
            raise UsageError("this verification needs --a")
        kwargs["a_values"] = parse_range(args.a)
    return GridSpec(**kwargs)


def _single(args, flag: str) -> int:
    value = getattr(args, flag)
    if value is None:
        raise UsageError(f"this verification needs --{flag}")
    values = parse_range(value) if isinstance(value, str) else (value,)
    if len(values) != 1:
        raise UsageError(f"--{flag} must be a single value here")
    return values[0]


def _default_n_max(args) -> int:
    """Grid horizon when --n-max is omitted: 2000 for a = 1 work, 1200 otherwise."""
    a_values = parse_range(args.a) if getattr(args, "a", None) else (1,)
    return (inequalities.DEFAULT_N_MAX_A1 if max(a_values) <= 1
            else inequalities.DEFAULT_N_MAX_GENERAL)


def cmd_verify(args, out) -> int:
    theorem = args.theorem
    if theorem not in ("anchors", "xy-diff") and args.n_max < 1:
        args.n_max = _default_n_max(args)
    if theorem == "shift":
        report = inequalities.verify_shift_range(
            _grid_from_args(args, need_N=True), jobs=args.jobs)
    elif theorem == "littlelemon":
        args.N = "4"
        report = inequalities.verify_shift_range(
            _grid_from_args(args, need_N=True), jobs=args.jobs)
    elif theorem == "gen-kp":
        report = inequalities.verify_gen_kp(
            _single(args, "a"), _single(args, "d"), args.n_max,
            evaluate_out=args.force, jobs=args.jobs)
    elif theorem == "gen-dkst":
        report = inequalities.verify_gen_dkst(
            _single(args, "a"), _single(args, "d"), args.n_max,
            evaluate_out=args.force, jobs=args.jobs)
    elif theorem == "anchors":
        report = inequalities.verify_smalln_anchors(
            _single(args, "d"), _single(args, "N"), evaluate_out=args.force)
    elif theorem == "xy-diff":
        report = inequalities.xy_difference_report(
            _single(args, "d"), _single(args, "N"))
    elif theorem == "ceiling":
        report = inequalities.verify_ceiling(
            _grid_from_args(args, need_a=True), jobs=args.jobs)
    elif theorem == "a-to-1":
        report = inequalities.verify_a_to_1(
            _grid_from_args(args, need_a=True), jobs=args.jobs)
    elif theorem == "modified-st":
        report = inequalities.verify_modified_st(
            _single(args, "a"), _single(args, "d"), args.n_max, jobs=args.jobs)
    elif theorem == "t-monotone":
        report = inequalities.verify_t_monotone(_single(args, "d"), args.n_max)
    else:
        raise UsageError(f"unknown theorem {theorem!r}")

    records, summary = _report_records(report)
    _emit(records, summary, args.format, out)
    return 0 if report.ok else 1


# ---------------------------------------------------------------- inject

def _inject_cell(cell: tuple[int, int, int, bool, int]) -> injection.InjectionCellReport:
    d, N, n, force, horizon = cell
    return injection.verify_injection(d, N, n, force=force, horizon=horizon)


def cmd_inject(args, out) -> int:
    d = _single(args, "d")
    N = _single(args, "N")
    n_values = parse_range(args.n)
    cells = [(d, N, n, args.force, args.horizon) for n in n_values]
    try:
        reports = parallel_map(_inject_cell, cells, args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    records = []
    failed = 0
    for rep in reports:
        witness: dict | None = None
        if rep.evaluated:
            witness = {"rho_S": str(rep.rho_s), "rho_T": str(rep.rho_t),
                       "s1": rep.s1_size, "s2": rep.s2_size,
                       "failed_checks": sorted(k for k, v in rep.checks.items()
                                               if not v)}
            if rep.witnesses:
                witness["witnesses"] = rep.witnesses[:5]
        if rep.status == FAILS:
            failed += 1
        records.append(_record_obj("inject", {"d": rep.d, "N": rep.N, "n": rep.n},
                                   rep.status, rep.size if rep.evaluated else None,
                                   witness))
    tally: dict[str, int] = {}
    for rep in reports:
        tally[rep.status] = tally.get(rep.status, 0) + 1
    summary = {"cmd": "inject", "cells": len(records)}
    summary.update(dict(sorted(tally.items())))
    _emit(records, summary, args.format, out)
    return 1 if failed else 0


# ---------------------------------------------------------------- search

def cmd_search(args, out) -> int:
    kind = args.kind.replace("-", "_")
    if kind not in ("delta", "delta_m", "delta_mm", "shift"):
        raise UsageError(f"unknown search kind {args.kind!r}")
    spec = _grid_from_args(args, need_N=(kind == "shift"),
                           need_a=(kind != "shift"))
    report = inequalities.search_counterexamples(kind, spec, jobs=args.jobs)
    records, summary = _report_records(report)
    summary["violations"] = summary.pop("violation", 0)
    _emit(records, summary, args.format, out)
    return 0  # search is informational


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alder",
        description="Exact counting and grid verification of Alder-type "
                    "partition inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "human"), default="json")
        p.add_argument("--jobs", type=int, default=1, metavar="K")
        p.add_argument("--cache", metavar="DIR", default=None)
        p.add_argument("--out", metavar="FILE", default=None)
        p.add_argument("--force", action="store_true",
                       help="also evaluate out-of-hypothesis cells")

    p = sub.add_parser("count", help="stream exact counter values")
    p.add_argument("--kind", required=True,
                   help="q|Q|Qm|Qmm|rho|g|l|delta|delta_m|delta_mm")
    p.add_argument("--a", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--set", choices=("T", "S"))
    p.add_argument("--n", required=True, help="N or LO..HI")
    common(p)

    p = sub.add_parser("verify", help="verify one statement over a grid")
    p.add_argument("theorem",
                   choices=("shift", "littlelemon", "gen-kp", "gen-dkst",
                            "anchors", "xy-diff", "ceiling", "a-to-1",
                            "modified-st", "t-monotone"))
    p.add_argument("--a")
    p.add_argument("--d")
    p.add_argument("--N")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=0)
    common(p)

    p = sub.add_parser("inject", help="exhaustive injection verification")
    p.add_argument("--d", required=True)
    p.add_argument("--N", required=True)
    p.add_argument("--n", required=True, help="N or LO..HI")
    p.add_argument("--horizon", type=int, default=injection.DEFAULT_ENUM_HORIZON)
    common(p)

    p = sub.add_parser("search", help="scan for negative deltas")
    p.add_argument("--kind", required=True, help="delta|delta_m|delta_mm|shift")
    p.add_argument("--a")
    p.add_argument("--d")
    p.add_argument("--N")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    common(p)

    return parser


_DISPATCH = {"count": cmd_count, "verify": cmd_verify,
             "inject": cmd_inject, "search": cmd_search}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    counting.set_cache_dir(args.cache)
    started = time.monotonic()
    buffer = io.StringIO()
    try:
        code = _DISPATCH[args.command](args, buffer)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = buffer.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    elapsed = time.monotonic() - started
    print(f"alder {args.command}: exit {code}, {elapsed:.2f}s wall",
          file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
