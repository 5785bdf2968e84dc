"""Command-line front end: ``sympgrade <command> ...``.

Exit codes: 0 pass, 1 check failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import SympGradeError
from .factor import factor_isometry
from .grading import grading_table, label_exponents
from .isom import isometry_from_json, orbit, sp_enumerate, transvection_tables
from .realize import MAX_DIM, realization_report
from .suites import (
    VerificationReport,
    run_grading,
    run_realize,
    run_spgen,
    run_sympcore,
    shapes_up_to_dim,
    shapes_up_to_order,
)
from .sympcore import parse_shape

SCOPES = ("sympcore", "spgen", "grading", "realize")


class UsageError(Exception):
    pass


def _emit(args, payload, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _element(shape, text: str):
    coords = [int(x) for x in text.split(",") if x.strip()]
    if len(coords) != shape.rank:
        raise UsageError(f"expected {shape.rank} coordinates for shape {shape}, got {len(coords)}")
    return shape.element(coords)


# -- commands ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    scopes = SCOPES if args.scope == "all" else (args.scope,)
    fixed = [parse_shape(args.shape)] if args.shape else None
    reports: list[VerificationReport] = []
    for scope in scopes:
        if scope == "sympcore":
            reports.append(run_sympcore(fixed or shapes_up_to_order(args.max_order), seed=args.seed))
        elif scope == "spgen":
            reports.append(run_spgen(fixed or shapes_up_to_order(min(args.max_order, 256)),
                                     trials=args.trials, seed=args.seed, n_max=args.n_max))
        elif scope == "grading":
            reports.append(run_grading(fixed or shapes_up_to_dim(min(args.n_max, MAX_DIM))))
        else:
            reports.append(run_realize(fixed or shapes_up_to_dim(min(args.n_max, MAX_DIM)), tol=args.tol))
    ok = all(r.passed for r in reports)
    _emit(args, {"passed": ok, "reports": [r.to_json() for r in reports]},
          "\n".join(r.to_text() for r in reports))
    return 0 if ok else 1


def cmd_sp_order(args) -> int:
    shape = parse_shape(args.shape)
    count = sp_enumerate(shape)
    _emit(args, {"shape": shape.to_json(), "order": count}, str(count))
    return 0


def cmd_factor(args) -> int:
    with open(args.infile) if args.infile != "-" else sys.stdin as fh:
        M = isometry_from_json(json.load(fh))
    word = factor_isometry(M)
    table = []
    for c in range(M.shape.rank):
        e = M.shape.basis(c)
        want, got = M(e), word(e)
        table.append({"generator": e.to_json(), "expected": want.to_json(),
                      "word_image": got.to_json(), "ok": want == got})
    ok = all(row["ok"] for row in table)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(word.to_json(), fh, indent=2)
    payload = {"word": word.to_json(), "length": len(word), "verification": table, "passed": ok}
    lines = [f"word length {len(word)}"]
    lines += [f"  e{c}: {r['expected']} -> {r['word_image']} {'ok' if r['ok'] else 'MISMATCH'}"
              for c, r in enumerate(table)]
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_grading_table(args) -> int:
    shape = parse_shape(args.shape)
    if shape.dim > MAX_DIM:
        raise UsageError(f"n = {shape.dim} exceeds {MAX_DIM}")
    rows = grading_table(shape, args.algebra)
    lines = [f"# shape {shape} algebra {args.algebra}: {len(rows)} rows",
             "# label | per-factor (Q exp, P exp) | trace_zero"]
    for r in rows:
        lines.append(f"{r.label.to_json()} | {label_exponents(r.label)} | {r.trace_zero}")
    _emit(args, [r.to_json() for r in rows], "\n".join(lines))
    return 0


def cmd_orbit(args) -> int:
    shape = parse_shape(args.shape)
    a = _element(shape, args.element)
    found = sorted(orbit(transvection_tables(shape), a))
    _emit(args, {"shape": shape.to_json(), "element": a.to_json(), "size": len(found),
                 "orbit": [x.to_json() for x in found]},
          "\n".join([f"orbit size {len(found)}"] + [str(x.to_json()) for x in found]))
    return 0


def cmd_realize(args) -> int:
    shape = parse_shape(args.shape)
    rep = realization_report(_element(shape, args.delta), tol=args.tol)
    diag = ", ".join(f"{re:+.6f}{im:+.6f}j" for re, im in rep["z_diagonal"])
    text = "\n".join([
        f"shape {shape}, delta {rep['delta']}, order {rep['order']}",
        f"diag(Z) = [{diag}]",
        f"induced K-map  {rep['induced']}",
        f"transvection   {rep['expected']}",
        f"match: {rep['match']}",
    ])
    _emit(args, rep, text)
    return 0 if rep["match"] else 1


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--max-order", type=int, default=256, help="cap on |H| for enumerations")
    common.add_argument("--n-max", type=int, default=12, help="cap on n for grading and realization")
    common.add_argument("--tol", type=float, default=1e-9)

    p = argparse.ArgumentParser(prog="sympgrade", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("--scope", choices=("all",) + SCOPES, default="all")
    v.add_argument("--shape", help="restrict to one shape, e.g. 4,2")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sp-order", parents=[common], help="|Sp(H)| by enumeration")
    s.add_argument("--shape", required=True)
    s.set_defaults(func=cmd_sp_order)

    f = sub.add_parser("factor", parents=[common], help="factor an isometry into transvections")
    f.add_argument("--in", dest="infile", required=True, help="isometry JSON ('-' for stdin)")
    f.add_argument("--out", help="write the word JSON here")
    f.set_defaults(func=cmd_factor)

    g = sub.add_parser("grading-table", parents=[common], help="root spaces of the Pauli grading")
    g.add_argument("--shape", required=True)
    g.add_argument("--algebra", choices=("sl", "gl"), default="sl")
    g.set_defaults(func=cmd_grading_table)

    o = sub.add_parser("orbit", parents=[common], help="orbit of an element under transvections")
    o.add_argument("--shape", required=True)
    o.add_argument("--element", required=True, help="coordinates u1,v1,...")
    o.set_defaults(func=cmd_orbit)

    r = sub.add_parser("realize", parents=[common], help="normalizer element inducing s_delta")
    r.add_argument("--shape", required=True)
    r.add_argument("--delta", required=True, help="pure-Q label coordinates a1,0,...")
    r.set_defaults(func=cmd_realize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SympGradeError, UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
