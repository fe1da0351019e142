"""Command-line front end.

Subcommands: `validate` (structural checks on documents), `invariant`
(compute the untwisted or twisted state sum), `fuzz` (random move walk
asserting invariance), `make` (write fixture/parcel/cocycle documents).

Exit codes: 0 success, 1 invariance-assertion failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .cocycle import (
    check_condition_1,
    check_condition_2,
    check_condition_3,
    check_domain,
    pullback_group_cocycle,
    restrict,
    standard_cyclic_cocycle,
)
from .groups import cyclic_table, symmetric_table
from .moves import random_walk
from .parcel import full_group_spec, from_group_spec, validate_parcel
from .statesum import twisted_invariant, untwisted_invariant
from .stratified_complex import s3_join_fixture, validate

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INPUT = 2


def _render(value, fmt: str) -> str:
    if hasattr(value, "numerator"):
        exact = f"{value.numerator}/{value.denominator}"
    else:
        exact = str(value)
    if fmt == "exact":
        return exact
    approx = getattr(value, "approx", None)
    decimal = f"{complex(approx):.12g}" if approx is not None else f"{float(value):.12g}"
    if fmt == "decimal":
        return decimal
    return f"{exact} ~ {decimal}"


def _load_inputs(args):
    t = io.triangulation_from_doc(io.load_doc(args.triangulation))
    rep = validate(t)
    if not rep.ok:
        raise io.DocumentError(f"{args.triangulation}:\n{rep}")
    p = io.parcel_from_doc(io.load_doc(args.parcel))
    prep = validate_parcel(p)
    if not prep.ok:
        raise io.DocumentError(f"{args.parcel}:\n{prep}")
    a = None
    if args.cocycle is not None:
        a = io.cocycle_from_doc(io.load_doc(args.cocycle), p)
    return t, p, a


def cmd_validate(args) -> int:
    status = EXIT_OK
    parcel = None
    for path in args.paths:
        doc = io.load_doc(path)
        if "vertices" in doc:
            rep = validate(io.triangulation_from_doc(doc))
        elif "hom" in doc or "group_spec" in doc:
            parcel = io.parcel_from_doc(doc)
            rep = validate_parcel(parcel)
        elif "order" in doc:
            if parcel is None:
                raise io.DocumentError(f"{path}: list a parcel document before its cocycle")
            a = io.cocycle_from_doc(doc, parcel)
            rep = check_domain(a)
            for check in (check_condition_1, check_condition_2, check_condition_3):
                rep.entries.extend(check(a).entries)
        else:
            raise io.DocumentError(f"{path}: unrecognized document type")
        print(f"{path}: {rep}")
        if not rep.ok:
            status = EXIT_ASSERTION
    return status


def cmd_invariant(args) -> int:
    t, p, a = _load_inputs(args)
    if a is None:
        value = untwisted_invariant(t, p)
    else:
        value = twisted_invariant(t, p, a)
    print(_render(value, args.format))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    t, p, a = _load_inputs(args)
    trace = random_walk(t, p, a, args.steps, args.seed, max_vertices=args.max_vertices)
    baseline = trace[0][1]
    status = EXIT_OK
    for move, value in trace:
        label = "start" if move is None else f"{move.kind} {','.join(map(str, move.site))}"
        print(f"{label} -> {_render(value, args.format)}")
        if value != baseline and status == EXIT_OK:
            print(f"invariant changed at: {label}", file=sys.stderr)
            status = EXIT_ASSERTION
    return status


def cmd_make(args) -> int:
    what = args.what
    if what == "s3-join":
        doc = io.triangulation_to_doc(s3_join_fixture())
    elif what == "parcel":
        table = _named_group(args.params[0], int(args.params[1]))
        if args.params[2] != "full":
            raise io.DocumentError(f"unknown parcel shape {args.params[2]!r}")
        doc = io.parcel_to_doc(from_group_spec(full_group_spec(table)))
    elif what == "cocycle":
        if args.params[0] != "zn":
            raise io.DocumentError("cocycle construction supports cyclic groups only")
        n, p_exp = int(args.params[1]), int(args.params[2])
        parcel = from_group_spec(full_group_spec(cyclic_table(n)))
        alpha = restrict(pullback_group_cocycle(parcel, standard_cyclic_cocycle(n, p_exp)))
        doc = io.cocycle_to_doc(alpha)
    else:
        raise io.DocumentError(f"unknown make target {what!r}")
    if args.out is not None:
        io.save_doc(args.out, doc)
    else:
        import json

        print(json.dumps(doc, indent=2))
    return EXIT_OK


def _named_group(name: str, n: int):
    if name == "zn":
        return cyclic_table(n)
    if name == "sn":
        return symmetric_table(n)
    raise io.DocumentError(f"unknown group family {name!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stratsum")
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check documents and print reports")
    p_val.add_argument("paths", nargs="+")
    p_val.set_defaults(func=cmd_validate)

    def invariant_args(p):
        p.add_argument("triangulation")
        p.add_argument("parcel")
        p.add_argument("cocycle", nargs="?", default=None)
        p.add_argument("--format", choices=("exact", "decimal", "both"), default="exact")
        p.add_argument("--parallel", action="store_true",
                       help="accepted for compatibility; results are identical")

    p_inv = sub.add_parser("invariant", help="compute the state-sum invariant")
    invariant_args(p_inv)
    p_inv.set_defaults(func=cmd_invariant)

    p_fuzz = sub.add_parser("fuzz", help="random move walk asserting invariance")
    invariant_args(p_fuzz)
    p_fuzz.add_argument("--steps", type=int, default=50)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--max-vertices", type=int, default=9)
    p_fuzz.set_defaults(func=cmd_fuzz)

    p_make = sub.add_parser("make", help="write example documents")
    p_make.add_argument("what", choices=("s3-join", "parcel", "cocycle"))
    p_make.add_argument("params", nargs="*")
    p_make.add_argument("--out", default=None)
    p_make.set_defaults(func=cmd_make)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.DocumentError, OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
