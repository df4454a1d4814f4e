"""Command-line front end.

Exit codes: 0 success, 1 infeasible instance (or an UNSOUND verdict from
``check``), 2 invalid input, non-monotonic B or enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .binrel import NonMonotonicError, monotonic_order
from .bench import run_bench
from .catalog import propagate_catalog, static_continuity, to_seqbin
from .domain import Instance, InstanceError
from .dp import PropagationOutcome, propagate
from .generate import FAMILIES, random_batch
from .jsonio import instance_to_json, load_instance
from .oracle import (DEFAULT_CAP, UNSOUND, EnumerationCapExceeded, Filtered,
                     check_counting_continuous, compare, gac_oracle)

OK, INFEASIBLE, INVALID = 0, 1, 2


class _Usage(Exception):
    pass


# --- shared helpers -------------------------------------------------------

def _read(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceError(f"{path}: {exc.strerror}") from exc
    return load_instance(text)


def _propagate(inst: Instance) -> PropagationOutcome:
    if inst.catalog is not None:
        return propagate_catalog(inst.catalog, inst.n_domain, inst.x_domains)
    return propagate(inst)


def _oracle(inst: Instance, cap: int) -> Filtered:
    if inst.catalog is None:
        return gac_oracle(inst, cap)
    ref = to_seqbin(inst.catalog, inst.n_domain, inst.x_domains)
    res = gac_oracle(ref.instance, cap)
    return None if res is None else (res[0].shift(-ref.offset), res[1])


def _seqbin_view(inst: Instance) -> Instance:
    if inst.catalog is None:
        return inst
    return to_seqbin(inst.catalog, inst.n_domain, inst.x_domains).instance


def _domains_json(status: str, res: Filtered) -> dict:
    if res is None:
        return {"status": status, "n": [], "x": []}
    return {"status": status, "n": res[0].tolist(), "x": [d.tolist() for d in res[1]]}


def _emit(obj, fmt: str, text_lines: Sequence[str]) -> None:
    if fmt == "json":
        print(json.dumps(obj, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _domain_lines(obj: dict) -> list[str]:
    lines = [f"status: {obj['status']}", f"N: {obj['n']}"]
    lines += [f"x[{i}]: {d}" for i, d in enumerate(obj["x"])]
    return lines


# --- commands -------------------------------------------------------------

def cmd_propagate(args) -> int:
    out = _propagate(_read(args.file))
    obj = out.to_json()
    lines = _domain_lines(obj) + [f"removed: {obj['removed']}", f"passes: {obj['passes']}"]
    if out.message:
        lines.append(f"reason: {out.message}")
    _emit(obj, args.format, lines)
    return OK if out.ok else INFEASIBLE


def cmd_oracle(args) -> int:
    res = _oracle(_read(args.file), args.cap)
    obj = _domains_json("ok" if res is not None else "fail", res)
    _emit(obj, args.format, _domain_lines(obj))
    return OK if res is not None else INFEASIBLE


def _check_one(inst: Instance, cap: int) -> tuple[str, list[str]]:
    out = _propagate(inst)
    got = (out.n_domain, out.x_domains) if out.ok else None
    return compare(got, _oracle(inst, cap))


def cmd_check(args) -> int:
    if args.random:
        if args.family not in FAMILIES:
            raise _Usage(f"--family must be one of {', '.join(FAMILIES)}")
        if args.n < 1 or args.d < 1 or args.count < 0:
            raise _Usage("--n and --d must be >= 1 and --count >= 0")
        batch = random_batch(args.family, args.count, args.n, args.d, args.seed)
    elif args.file:
        batch = [_read(args.file)]
    else:
        raise _Usage("check needs a file or --random")

    tally = {"EQUAL": 0, "SOUND-SUPERSET": 0, "UNSOUND": 0}
    details, lines = [], []
    for k, inst in enumerate(batch):
        verdict, diffs = _check_one(inst, args.cap)
        tally[verdict] += 1
        if verdict != "EQUAL":
            details.append({"index": k, "verdict": verdict, "diffs": diffs,
                            "instance": instance_to_json(inst)})
        lines.append(f"#{k} {verdict}" + "".join(f"\n  {d}" for d in diffs))
    obj = {"instances": len(batch), "verdicts": tally, "details": details}
    lines.append(" ".join(f"{k}={v}" for k, v in tally.items()))
    _emit(obj, args.format, lines)
    return INFEASIBLE if tally[UNSOUND] else OK


def cmd_classify(args) -> int:
    inst = _seqbin_view(_read(args.file))
    universe = sorted({int(v) for d in inst.x_domains for v in d})
    order = monotonic_order(inst.b_rel, universe)
    obj = {
        "b_monotonic": order is not None,
        "order": list(order.ordered_values) if order is not None else None,
        "continuity": static_continuity(inst.c_rel, inst.b_rel),
    }
    try:
        continuous, witness = check_counting_continuous(inst, args.cap)
        obj["exhaustive"] = {
            "continuous": continuous,
            "witness": None if witness is None else {
                "values": list(witness.values), "position": witness.position,
                "new_value": witness.new_value,
                "counts": [witness.old_count, witness.new_count],
            },
        }
    except EnumerationCapExceeded:
        obj["exhaustive"] = "skipped: cap exceeded"
    lines = [f"B monotonic: {obj['b_monotonic']}", f"order: {obj['order']}",
             f"continuity: {obj['continuity']}", f"exhaustive: {obj['exhaustive']}"]
    _emit(obj, args.format, lines)
    return OK


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("values must be positive integers")
    return vals


def cmd_bench(args) -> int:
    if args.family not in FAMILIES:
        raise _Usage(f"--family must be one of {', '.join(FAMILIES)}")
    rows = run_bench(args.family, args.n, args.d, args.reps, args.seed,
                     specialize=not args.generic)
    lines = ["n d sum_d specialized median_s work passes status"]
    lines += [" ".join(str(r[k]) for k in ("n", "d", "sum_d", "specialized", "median_s",
                                            "work", "passes", "status")) for r in rows]
    _emit(rows, args.format, lines)
    return OK


# --- parser ---------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    # global flags are accepted before and after the subcommand; only the
    # top-level copy carries defaults so a subcommand copy cannot reset them
    p = argparse.ArgumentParser(add_help=False)
    kw = (lambda v: {"default": v}) if defaults else (lambda v: {"default": argparse.SUPPRESS})
    p.add_argument("--seed", type=int, help="random seed (default 0)", **kw(0))
    p.add_argument("--format", choices=("json", "text"), help="output format (default json)",
                   **kw("json"))
    p.add_argument("--cap", type=int, help=f"enumeration cap (default {DEFAULT_CAP})",
                   **kw(DEFAULT_CAP))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqbin", parents=[_common(True)],
                                     description="SEQ_BIN propagation, oracle checks and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("propagate", parents=[common], help="filter an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("oracle", parents=[common], help="GAC domains by enumeration")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", parents=[common], help="compare propagate with the oracle")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", action="store_true", help="check a seeded random batch")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--family", default="increasing_nvalue")
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common],
                       help="B monotonicity and counting continuity of an instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bench", parents=[common], help="scaling measurements")
    p.add_argument("--family", default="increasing_nvalue")
    p.add_argument("--n", type=_int_list, default=[10_000, 20_000])
    p.add_argument("--d", type=_int_list, default=[100])
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--generic", action="store_true", help="force the quadratic recurrence")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    if args.cap < 1:
        print("seqbin: error: --cap must be positive", file=sys.stderr)
        return INVALID
    try:
        return args.func(args)
    except (InstanceError, NonMonotonicError, EnumerationCapExceeded, _Usage) as exc:
        print(f"seqbin: error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
