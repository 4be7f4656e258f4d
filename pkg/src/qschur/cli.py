"""Command-line surface: multiply, reduce, basis, table, verify.

Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage,
parse or guard errors, so CI can gate directly on theorem suites.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import (
    EKF,
    FKE,
    Context,
    ContextMismatch,
    IndexOutOfRange,
    multiply,
    reduce_monomial,
    reduction_defect,
)
from .suites import FAULTS, SUITE_GUARDS, SUITES, run_suites
from .textio import ParseError, element_to_json, format_element, parse_element

TABLE_MAX_D = 6


class UsageError(Exception):
    pass


def _orientation(value: str) -> str:
    value = value.lower()
    if value == "ekf":
        return EKF
    if value == "fke":
        return FKE
    raise argparse.ArgumentTypeError(f"orientation must be 'ekf' or 'fke', got {value!r}")


def _quadruple(value: str) -> tuple[int, int, int, int]:
    parts = value.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected a,b1,b2,c but got {value!r}")
    try:
        a, b1, b2, c = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer component in {value!r}") from None
    return (a, b1, b2, c)


def _read_operand(value: str) -> str | dict:
    """An operand is a file path (text or JSON contents) or an inline string."""
    if os.path.exists(value):
        with open(value, "r", encoding="utf-8") as fh:
            value = fh.read()
    stripped = value.strip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    return stripped


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qschur",
        description="Exact computations in the degree-d quantum Schur algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, orientation: bool = True) -> None:
        p.add_argument("--d", type=int, required=True, help="tensor degree d >= 0")
        if orientation:
            p.add_argument(
                "--orientation", type=_orientation, default=EKF, help="ekf or fke"
            )
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to a file instead of stdout")

    p = sub.add_parser("multiply", help="multiply two elements")
    common(p)
    p.add_argument("--lhs", required=True, help="element text/JSON, inline or a file path")
    p.add_argument("--rhs", required=True, help="element text/JSON, inline or a file path")

    p = sub.add_parser("reduce", help="straighten a single monomial")
    common(p)
    p.add_argument(
        "--monomial", type=_quadruple, required=True, help="quadruple a,b1,b2,c"
    )

    p = sub.add_parser("basis", help="list the canonical basis monomials")
    common(p)

    p = sub.add_parser("table", help="emit all structure constants as JSON lines")
    common(p, orientation=False)
    p.add_argument("--max-d-override", action="store_true")

    p = sub.add_parser("verify", help="run theorem-verification suites")
    common(p, orientation=False)
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--max-d-override", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--inject-fault",
        choices=[f for f in FAULTS if f],
        default=None,
        help="deliberately break the build so the suites must fail (self-test)",
    )
    return parser


def cmd_multiply(args) -> int:
    ctx = Context(args.d)
    lhs = parse_element(_read_operand(args.lhs), ctx, args.orientation)
    rhs = parse_element(_read_operand(args.rhs), ctx, args.orientation)
    product = multiply(lhs, rhs)
    if args.format == "json":
        _emit(json.dumps(element_to_json(product)), args.out)
    else:
        _emit(format_element(product), args.out)
    return 0


def cmd_reduce(args) -> int:
    ctx = Context(args.d)
    a, b1, b2, c = args.monomial
    s = reduction_defect(ctx, args.monomial, args.orientation)
    reduced = reduce_monomial(ctx, args.monomial, args.orientation)
    k_min, k_max = (s, min(a, c)) if s >= 1 else (None, None)
    if args.format == "json":
        payload = {
            "element": element_to_json(reduced),
            "s": s,
            "k_min": k_min,
            "k_max": k_max,
        }
        _emit(json.dumps(payload), args.out)
    else:
        if s < 1:
            k_line = "k: none (already canonical)"
        elif k_max < k_min:
            k_line = f"k: {k_min}..{k_max} (empty)"
        else:
            k_line = f"k: {k_min}..{k_max}"
        _emit(f"result: {format_element(reduced)}\ns: {s}\n{k_line}", args.out)
    return 0


def cmd_basis(args) -> int:
    ctx = Context(args.d)
    basis = ctx.monomials(args.orientation)
    if args.format == "json":
        payload = {
            "d": args.d,
            "orientation": args.orientation,
            "monomials": [{"a": m.a, "b1": m.b1, "b2": m.b2, "c": m.c} for m in basis],
        }
        _emit(json.dumps(payload), args.out)
    else:
        from .algebra import Element
        from .laurent import LaurentPoly

        lines = [
            format_element(Element(ctx, args.orientation, {m: LaurentPoly.one()}))
            for m in basis
        ]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_table(args) -> int:
    if args.d > TABLE_MAX_D and not args.max_d_override:
        raise UsageError(
            f"structure-constant tables are guarded at d <= {TABLE_MAX_D}; "
            "pass --max-d-override to force"
        )
    if args.d > TABLE_MAX_D:
        print(
            f"warning: d={args.d} exceeds the table guard; this may take a while",
            file=sys.stderr,
        )
    from .algebra import Element
    from .laurent import LaurentPoly

    ctx = Context(args.d)
    basis = ctx.monomials(EKF)
    lines = []
    for ml in basis:
        x = Element(ctx, EKF, {ml: LaurentPoly.one()})
        for mr in basis:
            y = Element(ctx, EKF, {mr: LaurentPoly.one()})
            product = multiply(x, y)
            lines.append(
                json.dumps(
                    {
                        "lhs": {"a": ml.a, "b1": ml.b1, "b2": ml.b2, "c": ml.c},
                        "rhs": {"a": mr.a, "b1": mr.b1, "b2": mr.b2, "c": mr.c},
                        "product": element_to_json(product),
                    }
                )
            )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        guard = SUITE_GUARDS[name]
        if args.d > guard and not args.max_d_override:
            raise UsageError(
                f"suite {name!r} is guarded at d <= {guard}; pass --max-d-override to force"
            )
        if args.d > guard:
            print(
                f"warning: suite {name!r} at d={args.d} exceeds its guard {guard}; "
                "expect significant time and memory",
                file=sys.stderr,
            )
    report = run_suites(
        names,
        args.d,
        seed=args.seed,
        fault=args.inject_fault,
        allow_large_oracle=args.max_d_override,
    )
    if args.format == "json":
        _emit(json.dumps(report), args.out)
    else:
        lines = []
        for c in report["checks"]:
            status = "PASS" if c["pass"] else "FAIL"
            witness = f"  [{c['witness']}]" if not c["pass"] and "witness" in c else ""
            lines.append(f"{status:4}  {c['id']}{witness}")
        lines.append(
            f"{'PASS' if report['pass'] else 'FAIL'}  overall "
            f"({sum(c['pass'] for c in report['checks'])}/{len(report['checks'])} checks)"
        )
        _emit("\n".join(lines), args.out)
    return 0 if report["pass"] else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "multiply": cmd_multiply,
        "reduce": cmd_reduce,
        "basis": cmd_basis,
        "table": cmd_table,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (
        UsageError,
        ParseError,
        IndexOutOfRange,
        ContextMismatch,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
