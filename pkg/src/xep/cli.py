"""Command-line entry point: ``xep <command> ...``.

Exit codes: 0 success, 1 usage error, 2 incomplete scan (ell range capped),
3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import curves as C
from .count import frobenius_data
from .criterion import MODES, evaluate
from .curves import PreconditionError
from .frey import PadicInt, construct_good, construct_mult, verify_ell_primitive
from .scan import TABLE_CURVES, ScanPlan, applicable, find_exceptional, scan, table_csv

EXIT_USAGE, EXIT_INCOMPLETE, EXIT_PRECONDITION = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump(doc) -> str:
    return json.dumps(doc, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xep", description=__doc__.splitlines()[0])
    parser.add_argument("--db", help=f"curve data file (default: ${C.DB_ENV_VAR} or the bundled file)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("criterion", help="evaluate the local criterion for one (E, ell, p)")
    p.add_argument("--curve", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="exact")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("scan", help="search exceptional ell for one (E, p)")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--all", action="store_true", help="report every exceptional ell, not just the first")
    p.add_argument("--lmax", type=int, help="cap on ell; the scan is then reported incomplete")
    p.add_argument("--mode", choices=MODES + ("auto",), default="auto")
    p.add_argument("--force", action="store_true", help="scan even if (E, p) is structurally excluded")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", help="primes p = 19 mod 24 below pmax with an exceptional ell")
    p.add_argument("--pmax", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mode", choices=MODES + ("auto",), default="auto")
    p.add_argument("--curves", default=",".join(TABLE_CURVES))
    p.add_argument("--csv", metavar="PATH", help="also write a CSV summary")
    p.add_argument("--triples", action="store_true", help="emit the witnessing triples as JSON lines")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("ap", help="Frobenius trace and discriminant at ell")
    p.add_argument("--curve", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("construct-good", help="solution mod ell matching y^2 = x^3 + Ax + B")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("construct-mult", help="ell-adic solution with j = uE0 * ell^(-kp)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--uE0", type=int, required=True)
    p.add_argument("--prec", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="check an ell-primitive solution mod ell^prec")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--prec", type=int, required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _curve(db, label):
    try:
        return db[label]
    except KeyError:
        raise UsageError(f"unknown curve {label!r}; known: {', '.join(db)}") from None


def _cmd_criterion(args, db, out):
    rep = evaluate(_curve(db, args.curve), args.ell, args.p, args.mode)
    if args.json:
        print(rep.to_json(), file=out)
        return 0
    print(f"{rep.label} ell={rep.ell} p={rep.p} mode={rep.mode}", file=out)
    rows = [
        ("(1) p = 3 mod 4", rep.cond1, ""),
        ("(5) ell < p^2/16", rep.cond5, ""),
        ("ordinary", rep.ordinary, f"a_ell={rep.a_ell} Delta={rep.delta_ell}"),
        ("(2) -p*Delta square", rep.cond2, f"s={rep.s} m={rep.m}"),
        ("(4) Legendre", rep.cond4, f"{rep.legendre_values}"),
        ("(3) p | ord Frob", rep.cond3, f"method={rep.cond3_method}"),
    ]
    for name, val, extra in rows:
        shown = "not evaluated" if val is None else str(val)
        print(f"  {name:<22} {shown:<14} {extra if val is not None else ''}".rstrip(), file=out)
    print(f"verdict: {rep.verdict}", file=out)
    return 0


def _cmd_scan(args, db, out):
    E = _curve(db, args.curve)
    app = applicable(E, args.p)
    plan = ScanPlan(curves=(E.label,), p_residue=None, pmax=args.p + 1, lmax=args.lmax, mode=args.mode,
                    stop="all" if args.all else "first", force=args.force, jobs=args.jobs)
    triples = find_exceptional(E, args.p, plan)
    complete = plan.complete_for(args.p)
    if args.json:
        for t in triples:
            print(t.to_json(), file=out)
        print(_dump({"label": E.label, "p": args.p, "applicable": app.ok, "reason": app.reason,
                     "ells": [t.ell for t in triples], "complete": complete}), file=out)
    else:
        if not app.ok:
            print(f"{E.label}, p={args.p}: excluded ({app.reason})" + (", forced" if args.force else ""), file=out)
        ells = ", ".join(str(t.ell) for t in triples) or "none"
        print(f"{E.label} p={args.p}: exceptional ell: {ells}", file=out)
        if not complete:
            print(f"warning: ell capped at {args.lmax}; window not fully searched", file=sys.stderr)
    return 0 if complete else EXIT_INCOMPLETE


def _cmd_table(args, db, out):
    labels = tuple(s for s in args.curves.split(",") if s)
    for label in labels:
        _curve(db, label)
    plan = ScanPlan(curves=labels, pmax=args.pmax, jobs=args.jobs, mode=args.mode)
    res = scan(plan, db)
    table = res.table(labels)
    if args.triples:
        for t in res.triples:
            print(t.to_json(), file=out)
    for label, ps in table.items():
        if args.json:
            print(_dump({"label": label, "pmax": args.pmax, "primes": ps}), file=out)
        else:
            print(f"{label}: {', '.join(map(str, ps))}", file=out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(table_csv(table))
    return 0


def _cmd_ap(args, db, out):
    fd = frobenius_data(_curve(db, args.curve), args.ell)
    doc = {"label": args.curve, "ell": fd.ell, "a_ell": fd.a_ell, "delta_ell": fd.delta_ell, "ordinary": fd.ordinary}
    if args.json:
        print(_dump(doc), file=out)
    else:
        print(f"{args.curve} ell={fd.ell}: a_ell={fd.a_ell} Delta={fd.delta_ell} "
              f"{'ordinary' if fd.ordinary else 'supersingular'}", file=out)
    return 0


def _cmd_construct_good(args, db, out):
    sol = construct_good(args.A, args.B, args.ell, args.p)
    if args.json:
        print(_dump(sol.to_dict()), file=out)
    else:
        print(f"a={sol.abar} b={sol.bbar} c={sol.cbar} u={sol.u} (mod {sol.ell})", file=out)
    return 0


def _cmd_construct_mult(args, db, out):
    sol = construct_mult(args.uE0, args.k, args.p, args.ell, args.prec)
    if args.json:
        print(_dump(sol.to_dict()), file=out)
    else:
        print(f"a={sol.a.residue} b={sol.b.residue} c={sol.c.residue} u_c={sol.u_c} "
              f"(mod {sol.ell}^{sol.a.prec})", file=out)
    return 0


def _cmd_verify(args, db, out):
    a, b, c = (PadicInt(args.ell, args.prec, v) for v in (args.a, args.b, args.c))
    ok = verify_ell_primitive(a, b, c, args.p)
    if args.json:
        print(_dump({"ell": args.ell, "N": args.prec, "p": args.p, "ell_primitive": ok}), file=out)
    else:
        print("ell-primitive solution" if ok else "not an ell-primitive solution", file=out)
    return 0


COMMANDS = {
    "criterion": _cmd_criterion,
    "scan": _cmd_scan,
    "table": _cmd_table,
    "ap": _cmd_ap,
    "construct-good": _cmd_construct_good,
    "construct-mult": _cmd_construct_mult,
    "verify": _cmd_verify,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        db = C.load_db(args.db)
        return COMMANDS[args.command](args, db, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except C.CurveDataError as exc:
        print(f"curve data error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
