"""Command-line front end.

Exit codes: 0 success, 1 verification or oracle failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from typing import Any, Iterator

from . import verify as vf
from .boomerang import bct_rows_fast, bct_table_naive
from .errors import BctForgeError
from .field_core import FieldCtx, build_field, prime_power
from .power_map import (PowerMap, ddt_entry, derivative_at, differential_spectrum,
                        make_f1, make_f2, make_power)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization

def flatten(obj: Any, path: str = "") -> Iterator[tuple[str, str, Any]]:
    """(section, key, scalar) triples covering every leaf of a JSON document."""
    items = obj.items() if isinstance(obj, dict) else enumerate(obj)
    for k, v in items:
        if isinstance(v, (dict, list)):
            if not v:
                continue
            yield from flatten(v, f"{path}.{k}" if path else str(k))
        else:
            yield path, str(k), v


def _csv_cell(v: Any) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v)


def to_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "key", "value"])
    for section, key, value in flatten(doc):
        w.writerow([section, key, _csv_cell(value)])
    return buf.getvalue()


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _table(d: dict) -> dict[str, Any]:
    return {str(k): v for k, v in d.items()}


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bctforge-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# commands

def _field(args) -> tuple[FieldCtx, int]:
    if args.p is None or args.k is None:
        raise UsageError("--p and --k are required for this command")
    if args.k < 1:
        raise UsageError("--k must be positive")
    ctx = build_field(args.p, 2 * args.k)
    return ctx, args.p ** args.k


def _map(args, ctx: FieldCtx, q: int) -> PowerMap:
    if args.map == "f1":
        return make_f1(ctx)
    if args.map == "f2":
        return make_f2(ctx)
    if args.d is None:
        raise UsageError("--map custom requires --d")
    if not 1 <= args.d < q * q - 1:
        raise UsageError(f"--d must satisfy 1 <= d < {q * q - 1}")
    return make_power(ctx, args.d)


def _meta(args, ctx: FieldCtx, q: int, F: PowerMap | None) -> dict[str, Any]:
    return {"p": ctx.p, "k": args.k, "q": q, "d": F.d if F else None,
            "modulus": list(ctx.spec.modulus), "generator": ctx.generator}


def cmd_field_info(args) -> tuple[dict, int]:
    ctx, q = _field(args)
    result = {"q": q, "field_size": ctx.order, "characteristic": ctx.p,
              "extension_degree": ctx.m, "modulus": list(ctx.spec.modulus),
              "generator": ctx.generator}
    return {"meta": _meta(args, ctx, q, None), "result": result}, EXIT_OK


def cmd_spectrum(args) -> tuple[dict, int]:
    ctx, q = _field(args)
    F = _map(args, ctx, q)
    rep = differential_spectrum(F, per_b=args.per_b or args.naive)
    code = EXIT_OK
    result: dict[str, Any] = {"omega": _table(rep.omega), "max_delta": rep.max_delta}
    if args.naive:
        direct: dict[int, int] = {}
        for x in ctx.elements():
            c = derivative_at(F, x)
            direct[c] = direct.get(c, 0) + 1
        if any(direct.get(b, 0) != v for b, v in rep.per_b.items()):
            print("error: spectrum disagrees with direct evaluation", file=sys.stderr)
            code = EXIT_FAIL
    if args.per_b:
        result["per_b"] = _table(rep.per_b)
    result["oracle_checked"] = bool(args.naive)
    return {"meta": _meta(args, ctx, q, F), "result": result}, code


def cmd_ddt(args) -> tuple[dict, int]:
    ctx, q = _field(args)
    F = _map(args, ctx, q)
    if not 1 <= args.a < ctx.order:
        raise UsageError(f"--a must be a nonzero element index below {ctx.order}")
    row = {b: ddt_entry(F, args.a, b) for b in ctx.elements()}
    result = {"a": args.a, "row": _table({b: v for b, v in row.items() if v}),
              "max": max(row.values())}
    return {"meta": _meta(args, ctx, q, F), "result": result}, EXIT_OK


def cmd_bct(args) -> tuple[dict, int]:
    ctx, q = _field(args)
    F = _map(args, ctx, q)
    rep = bct_rows_fast(F)
    code = EXIT_OK
    if args.naive and bct_table_naive(F) != rep.per_b:
        print("error: fast BCT disagrees with the exhaustive oracle", file=sys.stderr)
        code = EXIT_FAIL
    result = {"per_b": _table(rep.per_b), "beta": rep.beta,
              "spectrum": _table(rep.spectrum), "omega_classes": _table(rep.omega_classes),
              "oracle_checked": bool(args.naive)}
    return {"meta": _meta(args, ctx, q, F), "result": result}, code


def _parse_q_list(text: str) -> list[int]:
    try:
        qs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"malformed q list: {text!r}") from None
    if not qs:
        raise UsageError("empty q list")
    for q in qs:
        pk = prime_power(q)
        if pk is None or pk[0] == 2:
            raise UsageError(f"q = {q} is not an odd prime power")
    return qs


def _parse_subjects(text: str) -> list[str]:
    subjects = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in subjects if s not in vf.SUBJECTS]
    if bad or not subjects:
        raise UsageError(f"unknown subjects {bad}; choose from {', '.join(vf.SUBJECTS)}")
    return subjects


def cmd_verify(args) -> tuple[dict, int]:
    qs = _parse_q_list(args.q)
    subjects = _parse_subjects(args.subjects)
    reports = vf.scan(qs, subjects)
    ok = {vf.PASS, vf.HYPOTHESES_NOT_MET}
    if args.allow_unattained:
        ok.add(vf.BOUND_HOLDS_NOT_ATTAINED)
    code = EXIT_OK if all(r.overall in ok for r in reports) else EXIT_FAIL
    for r in reports:
        print(f"q={r.q} {r.subject}: {r.overall}", file=sys.stderr)
    meta = {"subjects": subjects, "q_values": qs, "allow_unattained": args.allow_unattained}
    return {"meta": meta, "result": [r.to_dict() for r in reports]}, code


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="bctforge", parents=[common],
        description="Differential and boomerang properties of power maps over GF(q^2), q = p^k.")
    parser.add_argument("--p", type=int, help="characteristic")
    parser.add_argument("--k", type=int, default=1, help="q = p^k (default 1)")
    parser.add_argument("--map", choices=("f1", "f2", "custom"), default="f1",
                        help="f1: x^(q-1), f2: x^((q-1)(q+3)/2), custom: x^d")
    parser.add_argument("--d", type=int, help="exponent for --map custom")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", parents=[common], help="field parameters")
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("spectrum", parents=[common], help="differential spectrum")
    p.add_argument("--naive", action="store_true", help="cross-check by direct evaluation")
    p.add_argument("--per-b", action="store_true", help="include delta(b) for every b")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ddt", parents=[common], help="one DDT row")
    p.add_argument("--a", type=int, default=1, help="input difference (element index)")
    p.set_defaults(func=cmd_ddt)

    p = sub.add_parser("bct", parents=[common], help="BCT row beta(1, b) and boomerang uniformity")
    p.add_argument("--naive", action="store_true", help="cross-check against the exhaustive oracle")
    p.set_defaults(func=cmd_bct)

    p = sub.add_parser("verify", parents=[common], help="check the lemmas and theorems for given q")
    p.add_argument("--subjects", default=",".join(vf.SUBJECTS))
    p.add_argument("--q", required=True, help="comma-separated odd prime powers")
    p.add_argument("--allow-unattained", action="store_true",
                   help="treat bound_holds_not_attained as success")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    try:
        doc, code = args.func(args)
    except (UsageError, BctForgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = to_csv(doc) if fmt == "csv" else to_json(doc)
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
