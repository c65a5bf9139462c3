"""Command line front end: ``fdmod chain|operator|verify|root``.

Reports go to stdout (text or ``--json``), diagnostics to stderr.
Exit codes: 0 success, 1 verification failure, 2 bad input, 3 cap exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chain import compute_chain
from .diffop import (
    apply_localized,
    generator_witness,
    minimal_delta,
    normalize_fraction,
    parse_operator,
    verify_delta,
)
from .errors import EnumerationLimitExceeded, ParseError
from .field import ORDERS, RingContext
from .frobenius import frob_decompose, frobenius_root_ideal
from .ideal import bracket_power, ideal_equal
from .poly import Poly, apply_divided_power, parse_poly

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

SCHEMA_VERSION = "1"

_POLY_LIST = {"type": "array", "items": {"type": "string"}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "context"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["chain", "operator", "verify", "root"]},
        "context": {
            "type": "object",
            "required": ["p", "vars", "order"],
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "vars": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "order": {"enum": list(ORDERS)},
            },
        },
        "chain": {
            "type": "object",
            "required": ["levels", "stabilized_at", "cap"],
            "properties": {
                "levels": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["s", "groebner", "max_gen_degree"],
                        "properties": {
                            "s": {"type": "integer", "minimum": 1},
                            "groebner": _POLY_LIST,
                            "max_gen_degree": {"type": "integer"},
                        },
                    },
                },
                "stabilized_at": {"type": ["integer", "null"]},
                "cap": {"type": "integer"},
                "degrees_ok": {"type": "boolean"},
            },
        },
        "operator": {
            "type": "object",
            "required": ["normal_form", "level", "verified"],
            "properties": {
                "normal_form": {"type": "string"},
                "level": {"type": "integer"},
                "verified": {"type": "boolean"},
                "max_coeff_degree": {"type": "integer"},
            },
        },
        "witness": {
            "type": "object",
            "required": ["expr", "target_power"],
            "properties": {
                "expr": {"type": "string"},
                "target_power": {"type": "integer"},
                "verified": {"type": "boolean"},
            },
        },
        "root": {
            "type": "object",
            "required": ["level", "coordinates", "groebner"],
            "properties": {
                "level": {"type": "integer"},
                "coordinates": {"type": "object", "additionalProperties": {"type": "string"}},
                "groebner": _POLY_LIST,
            },
        },
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="prime characteristic")
    common.add_argument("-v", dest="vars", required=True, help="comma-separated variables")
    common.add_argument("--order", choices=ORDERS, default="grevlex")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)

    parser = _Parser(prog="fdmod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    chain = sub.add_parser("chain", parents=[common], help="root ideal chain of f")
    chain.add_argument("-f", required=True)
    chain.add_argument("--max-level", type=_positive)

    op = sub.add_parser("operator", parents=[common], help="operator sending 1/f to 1/f^p")
    op.add_argument("-f", required=True)
    op.add_argument("--max-level", type=_positive)
    op.add_argument("--power", type=_positive, metavar="t", help="also emit a 1/f -> 1/f^(p^t) witness")

    ver = sub.add_parser("verify", parents=[common], help="check op(1/f) = 1/f^p")
    ver.add_argument("-f", required=True)
    ver.add_argument("--op", required=True)
    ver.add_argument("-N", dest="level", type=_positive, help="level (default: level of op)")

    root = sub.add_parser("root", parents=[common], help="Frobenius coordinates of g")
    root.add_argument("-g", required=True)
    root.add_argument("-s", dest="level", type=_positive, default=1)
    return parser


def _context(args) -> RingContext:
    names = [v.strip() for v in args.vars.split(",")]
    try:
        return RingContext(args.p, tuple(names), args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _header(args, ctx: RingContext) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "context": {"p": ctx.p, "vars": list(ctx.vars), "order": ctx.order},
    }


def _chain_payload(report) -> dict:
    return {
        "levels": [
            {"s": lv.s, "groebner": [str(g) for g in lv.ideal.groebner()], "max_gen_degree": lv.max_gen_degree}
            for lv in report.levels
        ],
        "stabilized_at": report.stabilized_at,
        "cap": report.cap,
        "degrees_ok": report.degrees_ok,
    }


def _oracle_check(report, err) -> bool:
    # Brute-force cross-check of every level; slow, test use only.
    from .oracle import oracle_ds_image, oracle_pow

    ok = True
    for lv in report.levels:
        q = report.f.ctx.p**lv.s
        if oracle_pow(report.f, q - 1) != lv.power:
            err(f"oracle: power mismatch at level {lv.s}")
            ok = False
        try:
            image = oracle_ds_image(lv.power, lv.s)
        except EnumerationLimitExceeded as exc:
            err(f"oracle: level {lv.s} skipped ({exc})")
            continue
        if not ideal_equal(image, bracket_power(lv.ideal, lv.s)):
            err(f"oracle: image mismatch at level {lv.s}")
            ok = False
    if ok:
        err("oracle: ok")
    return ok


def _run_chain(args, ctx, f, err):
    report = compute_chain(f, args.max_level)
    if args.oracle and not _oracle_check(report, err):
        return report, EXIT_UNVERIFIED
    if report.stabilized_at is None:
        err(f"chain did not stabilize within {report.cap} levels")
        return report, EXIT_CAP
    return report, EXIT_OK


def _chain_text(report) -> list[str]:
    lines = []
    for lv in report.levels:
        gens = ", ".join(str(g) for g in lv.ideal.groebner())
        lines.append(f"I_{lv.s} = ({gens})  max coordinate degree {lv.max_gen_degree}")
    if report.stabilized_at is None:
        lines.append(f"not stabilized (cap {report.cap})")
    else:
        lines.append(f"stabilized at {report.stabilized_at} (cap {report.cap})")
    lines.append(f"degree bound: {'ok' if report.degrees_ok else 'VIOLATED'}")
    return lines


def cmd_chain(args, ctx, out, err) -> int:
    f = parse_poly(args.f, ctx)
    report, code = _run_chain(args, ctx, f, err)
    if args.json:
        out(_dump({**_header(args, ctx), "chain": _chain_payload(report)}))
    else:
        out("\n".join([f"f = {f}", *_chain_text(report)]))
    return code


def cmd_operator(args, ctx, out, err) -> int:
    f = parse_poly(args.f, ctx)
    report, code = _run_chain(args, ctx, f, err)
    doc = {**_header(args, ctx), "chain": _chain_payload(report)}
    lines = [f"f = {f}", *_chain_text(report)]
    if code == EXIT_OK:
        delta, level = minimal_delta(f, report)
        verified = verify_delta(delta, f, level)
        coeff_degree = max((g.degree for g in delta.terms.values()), default=-1)
        doc["operator"] = {
            "normal_form": str(delta),
            "level": level,
            "verified": verified,
            "max_coeff_degree": coeff_degree,
        }
        lines.append(f"operator: {delta}")
        lines.append(f"level: {level}")
        lines.append(f"max coefficient degree: {coeff_degree}")
        lines.append(f"verified: {str(verified).lower()}")
        if not verified:
            err("synthesized operator failed verification")
            code = EXIT_UNVERIFIED
        if args.power is not None:
            w = generator_witness(f, args.power, delta)
            target = ctx.p**args.power
            num, k = apply_localized(w, Poly.one(ctx), f, 1)
            num, k = normalize_fraction(num, k, f)
            w_ok = num == 1 and k == target
            doc["witness"] = {"expr": str(w), "target_power": target, "verified": w_ok}
            lines.append(f"witness: {w}")
            lines.append(f"target power: {target}")
            lines.append(f"witness verified: {str(w_ok).lower()}")
            if not w_ok:
                err("witness failed verification")
                code = EXIT_UNVERIFIED
    out(_dump(doc) if args.json else "\n".join(lines))
    return code


def replay_verify(op, f: Poly, level: int) -> bool:
    """``op(f^(q-1)) == f^(q-p)`` using only polynomial arithmetic."""
    p = f.ctx.p
    q = p**level
    g = f ** (q - 1)
    total = Poly.zero(f.ctx)
    for b, coeff in op.terms.items():
        total = total + coeff * apply_divided_power(b, g)
    return total == f ** (q - p)


def cmd_verify(args, ctx, out, err) -> int:
    f = parse_poly(args.f, ctx)
    op = parse_operator(args.op, ctx)
    level = args.level if args.level is not None else max(op.level, 1)
    if f.is_zero():
        raise UsageError("f must be nonzero")
    if op.level > level:
        err(f"operator level {op.level} exceeds {level}")
        verified = False
    else:
        verified = replay_verify(op, f, level)
    if args.oracle and op.level <= level and verified != verify_delta(op, f, level):
        err("oracle: library verification disagrees")
    doc = {**_header(args, ctx), "operator": {"normal_form": str(op), "level": level, "verified": verified}}
    if args.json:
        out(_dump(doc))
    else:
        out("\n".join([f"f = {f}", f"operator: {op}", f"level: {level}", f"verified: {str(verified).lower()}"]))
    return EXIT_OK if verified else EXIT_UNVERIFIED


def cmd_root(args, ctx, out, err) -> int:
    g = parse_poly(args.g, ctx)
    dec = frob_decompose(g, args.level)
    gb = [str(h) for h in frobenius_root_ideal(g, args.level).groebner()]
    coords = dec.as_text()
    if args.oracle:
        from .oracle import oracle_recompose

        if oracle_recompose(dec) != g:
            err("oracle: recomposition mismatch")
            return EXIT_UNVERIFIED
        err("oracle: ok")
    if args.json:
        out(_dump({**_header(args, ctx), "root": {"level": args.level, "coordinates": coords, "groebner": gb}}))
    else:
        lines = [f"g = {g}", f"level: {args.level}"]
        lines += [f"  {mono} -> {c}" for mono, c in coords.items()]
        lines.append(f"I_{args.level} = ({', '.join(gb)})")
        out("\n".join(lines))
    return EXIT_OK


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2)


COMMANDS = {"chain": cmd_chain, "operator": cmd_operator, "verify": cmd_verify, "root": cmd_root}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def out(text: str):
        # one write per report
        stdout.write(text + "\n")
        stdout.flush()

    def err(text: str):
        stderr.write(f"fdmod: {text}\n")

    try:
        args = build_parser().parse_args(argv)
        ctx = _context(args)
        return COMMANDS[args.command](args, ctx, out, err)
    except (UsageError, ParseError) as exc:
        err(f"error: {exc}")
        return EXIT_USAGE
    except (ValueError, OverflowError) as exc:
        err(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
