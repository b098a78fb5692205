"""Command-line entry point: ``treebergman [global flags] <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import bergman as bg
from . import measure as ms
from . import operators as op
from .harmonic import FiniteFunction
from .suites import FIELDS, SUITE_NAMES, fmt, run_suite
from .tree import DyadicSet, Params, format_vertex, gromov_rho, parse_vertex


class Output:
    """Collects one table (or a JSON document) and writes it once."""

    def __init__(self, args):
        self.json = args.json
        self.path = args.output

    def emit(self, header: list[str] | None, rows: list[list], doc=None):
        if self.json:
            if doc is None:
                doc = [dict(zip(header, r)) for r in rows] if header else [r[0] for r in rows]
            text = json.dumps(doc, indent=2, default=str) + "\n"
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if header:
                w.writerow(header)
            for r in rows:
                w.writerow([_cell(x) for x in r])
            text = buf.getvalue()
        if self.path:
            Path(self.path).write_text(text)
        else:
            sys.stdout.write(text)


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return fmt(x)
    if x is None:
        return ""
    return str(x)


def _params(args) -> Params:
    return Params(q=args.q, alpha=args.alpha, tol=args.tol, depth=args.depth)


def _vertex(args, text: str):
    return parse_vertex(text, args.q)


def _vertex_list(args, text: str):
    return [_vertex(args, t) for t in text.split(",") if t.strip()]


def _read_function(args, path: str) -> FiniteFunction:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return FiniteFunction.from_csv(text, args.q)


def _parse_cell(args, text: str) -> DyadicSet:
    head, sep, rest = text.partition(":")
    if head in ("pt", "point") and sep:
        return DyadicSet.singleton(_vertex(args, rest))
    if text.startswith("U(") and text.endswith(")"):
        text = text[2:-1]
    return DyadicSet.sector(_vertex(args, text))


# -- commands -------------------------------------------------------------------


def cmd_eval(args, out: Output) -> int:
    p = _params(args)
    what = args.what
    if what == "kernel":
        val = bg.kernel(p, _vertex(args, args.v), _vertex(args, args.x))
    elif what == "basis":
        val = bg.eval_normalized(p, bg.BasisIndex(_vertex(args, args.v), args.j), _vertex(args, args.x))
    elif what == "sigma":
        val = ms.sigma(p, _vertex(args, args.x))
    elif what == "rho":
        val = gromov_rho(_vertex(args, args.x), _vertex(args, args.y))
    else:
        return cmd_project(args, out)
    out.emit(None, [[val]], doc={"operation": what, "value": val})
    return 0


def cmd_kernel(args, out: Output) -> int:
    args.what = "kernel"
    return cmd_eval(args, out)


def cmd_basis(args, out: Output) -> int:
    args.what = "basis"
    return cmd_eval(args, out)


def cmd_coeff(args, out: Output) -> int:
    p = _params(args)
    co = bg.coefficients(p)
    rows = [["C", "", co.C], ["Cp", "", co.Cp]]
    for n in range(args.lo, args.hi + 1):
        rows.append(["b", n, co.b(n)])
    for n in range(args.lo, args.hi + 1):
        rows.append(["bp", n, co.bp(n)])
    out.emit(["name", "n", "value"], rows)
    return 0


def cmd_project(args, out: Output) -> int:
    p = _params(args)
    f = _read_function(args, args.f)
    pts = _vertex_list(args, args.at)
    rows = [[format_vertex(z), op.project_eval(p, f, z)] for z in pts]
    out.emit(["vertex", "value"], rows)
    return 0


def cmd_cz(args, out: Output) -> int:
    p = _params(args)
    f = _read_function(args, args.f)
    res = op.cz_decompose(p, f, args.lam)
    rows = []
    for cell in res.selected:
        rows.append(["selected", str(cell), "", op.mean(p, f, cell)])
    for x, v in sorted(res.good.points.items()):
        rows.append(["good_point", "", format_vertex(x), v])
    for v, c in res.good.sectors:
        rows.append(["good_sector", str(DyadicSet.sector(v)), "", c])
    for cell, b in res.bad:
        for x, v in sorted(b.points.items()):
            rows.append(["bad_point", str(cell), format_vertex(x), v])
        for v, c in b.sectors:
            rows.append(["bad_sector", str(cell), "", c])
    rows += [
        ["start_level", "", "", float(res.start_level)],
        ["c_good", "", "", res.c_good],
        ["c_good_bound", "", "", res.c_good_bound],
        ["c_bad", "", "", res.c_bad],
        ["c_bad_bound", "", "", res.c_bad_bound],
    ]
    out.emit(["record", "cell", "vertex", "value"], rows)
    return 0


def cmd_hormander(args, out: Output) -> int:
    p = _params(args)
    lo, up = op.hormander_sum(p, _vertex(args, args.v), _vertex(args, args.x), _vertex(args, args.y), args.window)
    out.emit(["lower", "upper", "uniform_constant"], [[lo, up, op.hormander_constant(p)]])
    return 0


def cmd_atom(args, out: Output) -> int:
    p = _params(args)
    f = _read_function(args, args.f)
    pval = math.inf if args.p.lower() in ("inf", "infinity") else float(args.p)
    rep = op.is_atom(p, f, pval, _parse_cell(args, args.cell))
    out.emit(["is_atom", "cell", "support_ok", "norm_check", "mean"],
             [[rep.is_atom, str(rep.support_cell), rep.support_ok, rep.norm_check, rep.mean]])
    return 0 if rep.is_atom else 1


def cmd_bmo(args, out: Output) -> int:
    p = _params(args)
    f = _read_function(args, args.f)
    rep = op.bmo_scan(p, f, args.levels)
    out.emit(["value", "cell", "cells_checked", "above_window_bound"],
             [[rep.value, str(rep.cell) if rep.cell else "", rep.cells_checked, rep.above_window_bound]])
    return 0


def cmd_weak11(args, out: Output) -> int:
    p = _params(args)
    f = _read_function(args, args.f)
    lams = [float(t) for t in args.lambdas.split(",") if t.strip()]
    curve = op.weak_type_curve(p, f, lams, args.window)
    rows = [[lam, mass, bound, mass / bound if bound else 0.0] for lam, mass, bound in curve]
    out.emit(["lambda", "mass", "bound", "ratio"], rows)
    return 0


def cmd_suite(args, out: Output) -> int:
    rows = run_suite(args.name, _params(args), args.seed)
    if out.json:
        doc = [dict(zip(FIELDS, [r.check_id, r.anchor, r.input, r.expected, r.got, r.tol, r.passed])) for r in rows]
        out.emit(None, [], doc=doc)
    else:
        out.emit(FIELDS, [r.row() for r in rows])
    return 0 if all(r.passed for r in rows) else 1


# -- parser ---------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--q", type=int, default=d(2), help="branching number (default 2)")
    p.add_argument("--alpha", type=float, default=d(2.0), help="measure exponent, > 1 (default 2)")
    p.add_argument("--tol", type=float, default=d(1e-9), help="check tolerance (default 1e-9)")
    p.add_argument("--depth", type=int, default=d(40), help="truncation depth for direct sums (default 40)")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized suites (default 0)")
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON instead of CSV")
    p.add_argument("--output", default=d(None), help="write the report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treebergman", description="Bergman spaces on homogeneous trees.")
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("eval", cmd_eval, "evaluate kernel, basis, sigma, rho or a projection")
    sp.add_argument("what", choices=["kernel", "basis", "sigma", "rho", "project"])
    sp.add_argument("--v")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--f")
    sp.add_argument("--at")

    sp = add("kernel", cmd_kernel, "kernel values")
    sp.add_argument("action", choices=["eval"])
    sp.add_argument("--v", required=True)
    sp.add_argument("--x", required=True)

    sp = add("basis", cmd_basis, "normalised basis values")
    sp.add_argument("action", choices=["eval"])
    sp.add_argument("--v", required=True)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--x", required=True)

    sp = add("coeff", cmd_coeff, "coefficient constants")
    sp.add_argument("action", choices=["dump"])
    sp.add_argument("--from", dest="lo", type=int, default=-3)
    sp.add_argument("--to", dest="hi", type=int, default=3)

    sp = add("project", cmd_project, "Bergman projection of a finite function")
    sp.add_argument("--f", required=True, help="CSV file of 'anchor:word,value' lines, or -")
    sp.add_argument("--at", required=True, help="comma-separated vertices")

    sp = add("cz", cmd_cz, "Calderon-Zygmund decomposition")
    sp.add_argument("--f", required=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)

    sp = add("hormander", cmd_hormander, "bracket for the Hormander integral")
    sp.add_argument("--v", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--window", type=int, default=6)

    sp = add("atom-check", cmd_atom, "check the atom conditions")
    sp.add_argument("--f", required=True)
    sp.add_argument("--p", default="inf")
    sp.add_argument("--cell", required=True, help="'anchor:word' for a sector, 'point:anchor:word' for a singleton")

    sp = add("bmo", cmd_bmo, "dyadic BMO norm over a window")
    sp.add_argument("--f", required=True)
    sp.add_argument("--levels", type=int, default=3)

    sp = add("weak11", cmd_weak11, "superlevel masses of the projection")
    sp.add_argument("--f", required=True)
    sp.add_argument("--lambdas", required=True, help="comma-separated positive values")
    sp.add_argument("--window", type=int, default=6)

    sp = add("suite", cmd_suite, "run a verification suite")
    sp.add_argument("name", choices=SUITE_NAMES)
    return parser


_REQUIRED = {"kernel": ("v", "x"), "basis": ("v", "x"), "sigma": ("x",), "rho": ("x", "y"), "project": ("f", "at")}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval":
        missing = [f"--{k}" for k in _REQUIRED[args.what] if getattr(args, k) is None]
        if missing:
            parser.error(f"eval {args.what} needs {', '.join(missing)}")
    try:
        return args.func(args, Output(args))
    except (ValueError, OSError) as exc:
        print(f"treebergman: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
