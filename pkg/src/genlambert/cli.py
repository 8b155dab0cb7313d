"""
Command-line front end.

    genlambert eval --r 1 --branch 0 1
    genlambert eval --t 0 --s 1 --a 0.01
    genlambert eval --t1 0 --t2 1 --a 0.005
    genlambert branches --r 0.1
    genlambert series wr --r -2 --terms 80 --estimate-radius
    genlambert table A --n 7
    genlambert report --scale small --format json

Exit codes: 0 success, 2 usage or domain error (one line on stderr, of the
form ``error: <Kind>: <reason>``), 1 internal failure or failed report.
Floats are printed with the shortest repr that round-trips.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import (
    a_triangle,
    c_triangle_by_recurrence,
    fubini,
    m_polynomial,
    stirling2_row,
)
from .errors import DomainError, GenLambertError
from .genw import count_tt_solutions, residual, GenWParams, solve_ts, solve_tt
from .rlambert import classify, w_r, w_r_all
from .series import estimate_radius, series_wr, series_wts, series_wtt

SCHEMA = 1
MAX_TABLE = 1000
MAX_TERMS = 2000


class UsageError(Exception):
    """Bad combination of arguments that argparse cannot express."""


def _number(text: str):
    """Parse an int, a p/q fraction or a float; ints and fractions stay exact."""
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(v):
        raise argparse.ArgumentTypeError("NaN is not accepted")
    return v


def fmt(v) -> str:
    """Text form of a number: shortest round-trip repr, p/q for fractions."""
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, float) and not math.isfinite(v):
        return fmt(v)
    return v


def _emit(record: dict, rows: list[dict], fmt_name: str, text_lines: list[str], out) -> None:
    if fmt_name == "json":
        record = dict(record, schema=SCHEMA, rows=rows)
        out.write(json.dumps(_jsonable(record), indent=2) + "\n")
    elif fmt_name == "csv":
        if not rows:
            return
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: fmt(x) for k, x in row.items()})
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


# -- eval --------------------------------------------------------------------------

def cmd_eval(args, out) -> int:
    rmode = args.r is not None
    tsmode = args.t is not None or args.s is not None
    ttmode = args.t1 is not None or args.t2 is not None
    if rmode + tsmode + ttmode != 1:
        raise UsageError("give exactly one of --r, --t/--s, --t1/--t2")

    if rmode:
        if not args.x:
            raise UsageError("--r needs at least one X")
        r = float(args.r)
        rows = []
        for x in args.x:
            x = float(x)
            if args.branch is None:
                results = w_r_all(r, x)
                if not results:
                    raise DomainError(f"no real branch of W_{fmt(r)} is defined at {fmt(x)}")
            else:
                results = [w_r(r, args.branch, x)]
            for res in results:
                rows.append({"r": r, "x": x, "branch": res.branch, "value": res.value,
                             "residual": res.residual, "iterations": res.iterations})
        lines = [f"W_{fmt(row['r'])}[{row['branch']}]({fmt(row['x'])}) = {fmt(row['value'])}"
                 f"  residual={fmt(row['residual'])}  iterations={row['iterations']}"
                 for row in rows]
        _emit({"command": "eval", "inputs": {"r": r, "branch": args.branch, "x": args.x}},
              rows, args.format, lines, out)
        return 0

    if args.x:
        raise UsageError("positional X is only used with --r")
    if args.a is None:
        raise UsageError("--a is required")
    a = float(args.a)
    if tsmode:
        if args.t is None or args.s is None:
            raise UsageError("--t and --s go together")
        t, s, c = float(args.t), float(args.s), float(args.c)
        roots = solve_ts(t, s, c, a)
        p = GenWParams((t,), (s,), c, a)
        inputs = {"t": t, "s": s, "c": c, "a": a}
        label = f"W({fmt(t)};{fmt(s)};{fmt(a)})"
    else:
        if args.t1 is None or args.t2 is None:
            raise UsageError("--t1 and --t2 go together")
        if args.c != 1:
            raise UsageError("--c is only supported with --t/--s")
        t1, t2 = float(args.t1), float(args.t2)
        roots = solve_tt(t1, t2, a)
        p = GenWParams((t1, t2), (), 1.0, a)
        inputs = {"t1": t1, "t2": t2, "a": a, "expected_count": count_tt_solutions(t1, t2, a)}
        label = f"W({fmt(t1)},{fmt(t2)};;{fmt(a)})"
    rows = [{"root": x, "double": d, "residual": residual(p, x)}
            for x, d in zip(roots.roots, roots.double)]
    lines = [f"{label}: {roots.count} real root(s) counted with multiplicity"]
    lines += [f"  x = {fmt(row['root'])}{'  (double)' if row['double'] else ''}"
              f"  residual={fmt(row['residual'])}" for row in rows]
    _emit({"command": "eval", "inputs": inputs, "count": roots.count}, rows, args.format, lines, out)
    return 0


# -- branches ----------------------------------------------------------------------

def cmd_branches(args, out) -> int:
    layout = classify(float(args.r))
    crit = {k: v for k, v in (("alpha", layout.critical.alpha), ("beta", layout.critical.beta),
                              ("gamma", layout.critical.gamma)) if v is not None}
    rows = [{"branch": b.id, "domain_lo": b.domain[0], "domain_hi": b.domain[1],
             "range_lo": b.range[0], "range_hi": b.range[1],
             "monotone": "increasing" if b.increasing else "decreasing"}
            for b in layout.branches]
    lines = [f"r = {fmt(layout.r)}: {layout.case}, {len(layout.branches)} real branch(es)"]
    if crit:
        lines.append("critical points: " + ", ".join(f"{k}={fmt(v)}" for k, v in crit.items()))
    if layout.kink is not None:
        lines.append(f"kink at x = {fmt(layout.kink)} (W = -2)")
    lines.append("cut abscissas: " + (", ".join(fmt(c) for c in layout.cuts) or "none"))
    for row in rows:
        lines.append(f"  branch {row['branch']:>2}: domain [{fmt(row['domain_lo'])}, "
                     f"{fmt(row['domain_hi'])}]  range [{fmt(row['range_lo'])}, "
                     f"{fmt(row['range_hi'])}]  {row['monotone']}")
    record = {"command": "branches", "inputs": {"r": layout.r}, "case": layout.case,
              "critical": crit, "cuts": list(layout.cuts), "kink": layout.kink}
    _emit(record, rows, args.format, lines, out)
    return 0


# -- series ------------------------------------------------------------------------

def cmd_series(args, out) -> int:
    if not 1 <= args.terms <= MAX_TERMS:
        raise UsageError(f"--terms must be in 1..{MAX_TERMS}")
    if args.kind == "wr":
        if args.r is None:
            raise UsageError("series wr needs --r")
        se = series_wr(args.r, args.terms)
    elif args.kind == "wts":
        if args.t is None or args.s is None:
            raise UsageError("series wts needs --t and --s")
        se = series_wts(args.t, args.s, args.terms)
    else:
        if args.t1 is None or args.t2 is None:
            raise UsageError("series wtt needs --t1 and --t2")
        se = series_wtt(args.t1, args.t2, args.terms)
    rows = [{"n": n, "coefficient": c, "float": float(c), "formula": se.formula}
            for n, c in enumerate(se.coeffs, 1)]
    record = {"command": "series", "kind": se.kind,
              "inputs": {"params": list(se.params), "terms": args.terms},
              "constant_term": se.constant_term, "radius": se.radius}
    lines = [f"series {se.kind} {', '.join(fmt(p) for p in se.params)}: "
             f"constant {fmt(se.constant_term)}; coefficient = {se.formula}"]
    lines += [f"{row['n']:>4}  {fmt(row['coefficient'])}" for row in rows]
    if se.radius is not None:
        lines.append(f"radius: {fmt(se.radius)}")
    if args.estimate_radius:
        try:
            est = estimate_radius(se.coeffs)
        except ValueError as exc:
            raise UsageError(str(exc))
        record["radius_estimate"] = est
        lines.append(f"ratio-test radius estimate: {fmt(est)}")
    _emit(record, rows, args.format, lines, out)
    return 0


# -- table -------------------------------------------------------------------------

def _need(value, flag: str, lo: int = 1) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    if not lo <= value <= MAX_TABLE:
        raise UsageError(f"{flag} must be in {lo}..{MAX_TABLE}")
    return value


def cmd_table(args, out) -> int:
    rows: list[dict] = []
    if args.kind == "A":
        n = _need(args.n, "--n")
        for i, row in enumerate(a_triangle(n).rows, 1):
            rows += [{"n": i, "k": k, "value": v} for k, v in enumerate(row, 1)]
    elif args.kind == "C":
        n, k = _need(args.n, "--n"), _need(args.k, "--k")
        for kk, row in enumerate(c_triangle_by_recurrence(n, k).rows, 1):
            rows += [{"n": n, "k": kk, "i": i, "value": v} for i, v in enumerate(row, 1)]
    elif args.kind == "M":
        n, k = _need(args.n, "--n"), _need(args.k, "--k")
        p = m_polynomial(n, k)
        if args.y is None:
            rows = [{"n": n, "k": k, "power": i, "value": c} for i, c in enumerate(p.coeffs, 1)]
        else:
            rows = [{"n": n, "k": k, "y": args.y, "value": p(args.y)}]
    elif args.kind == "stirling":
        n = _need(args.n, "--n", 0)
        if args.k is not None:
            rows = [{"n": n, "k": args.k, "value": stirling2_row(n)[args.k] if 0 <= args.k <= n else 0}]
        else:
            for i in range(n + 1):
                rows += [{"n": i, "k": k, "value": v} for k, v in enumerate(stirling2_row(i))]
    else:
        k = _need(args.k, "--k", 0)
        rows = [{"k": i, "value": fubini(i)} for i in range(k + 1)]
    lines = [",".join(rows[0].keys())] if rows else []
    lines += [",".join(fmt(v) for v in row.values()) for row in rows]
    fmt_name = "csv" if args.format == "text" else args.format
    _emit({"command": "table", "kind": args.kind,
           "inputs": {"n": args.n, "k": args.k, "y": args.y}}, rows, fmt_name, lines, out)
    return 0


# -- report ------------------------------------------------------------------------

def cmd_report(args, out) -> int:
    from .acceptance import format_line, run_report
    results = run_report(args.scale)
    failed = [r.id for r in results if not r.passed]
    if args.format == "json":
        rec = {"schema": SCHEMA, "command": "report", "scale": args.scale,
               "passed": not failed, "failed": failed,
               "criteria": [r.to_dict() for r in results]}
        out.write(json.dumps(_jsonable(rec), indent=2) + "\n")
    elif args.format == "csv":
        rows = [{"id": r.id, "name": r.name, "passed": r.passed, "seconds": r.seconds,
                 "expected": r.expected, "measured": json.dumps(_jsonable(r.measured))}
                for r in results]
        _emit({}, rows, "csv", [], out)
    else:
        for r in results:
            out.write(format_line(r) + "\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed"
                  + (f"; failed: {', '.join(failed)}" if failed else "") + "\n")
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    ap = argparse.ArgumentParser(prog="genlambert",
                                 description="r-Lambert and generalized Lambert functions")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate W_r or solve an equation")
    p.add_argument("x", nargs="*", type=float, help="arguments of W_r (with --r)")
    p.add_argument("--r", type=float)
    p.add_argument("--branch", type=int, choices=(0, -1, -2))
    p.add_argument("--t", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--t1", type=float)
    p.add_argument("--t2", type=float)
    p.add_argument("--a", type=float)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("branches", parents=[common], help="real branch layout of W_r")
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_branches)

    p = sub.add_parser("series", parents=[common], help="Taylor coefficients")
    p.add_argument("kind", choices=("wr", "wts", "wtt"))
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--r", type=_number)
    p.add_argument("--t", type=_number)
    p.add_argument("--s", type=_number)
    p.add_argument("--t1", type=_number)
    p.add_argument("--t2", type=_number)
    p.add_argument("--estimate-radius", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("table", parents=[common], help="exact integer tables (CSV)")
    p.add_argument("kind", choices=("A", "C", "M", "stirling", "fubini"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--y", type=_number)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("report", parents=[common], help="run the acceptance checks")
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.set_defaults(func=cmd_report)
    return ap


def _fail(kind: str, msg: str) -> None:
    sys.stderr.write(f"error: {kind}: {' '.join(str(msg).split())}\n")


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        _fail("UsageError", exc)
        return 2
    except (GenLambertError, ValueError, ZeroDivisionError, OverflowError) as exc:
        _fail(type(exc).__name__, exc)
        return 2
    except Exception as exc:  # anything else is a bug
        _fail("InternalError", f"{type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
