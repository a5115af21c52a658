"""Command-line front end: ``linfext <verb> ...``.

Exit status: 0 on success (or all rows matching), 1 on a mismatch or a
negative verdict, 2 on a usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .automorphisms import FormalAutomorphism, LinearAutomorphism, pullback_formal, pullback_linear
from .classification import (TableReport, eliminate_term, equivalence_search, obstruction, replicate,
                             standard_form, table_ids)
from .cochains import DEFAULT_DEPTH, Cochain, as_series, bracket, is_codifferential
from .expressions import ParseError, parse_cochain, parse_expression, render
from .homology import (DepthError, MixedDegreeError, filtered_cohomology, graded_cohomology,
                       series_normal_form)


class UsageError(Exception):
    pass


def _cochain(text: str, args):
    if args.field == "q" and re.search(r"(?<![A-Za-z_])c(?![A-Za-z_])", text):
        raise UsageError("the parameter c needs --field qc")
    return parse_cochain(text, args.depth)


def _emit(args, text: str, payload: dict):
    print(json.dumps(payload, indent=1) if args.json else text)


def cmd_bracket(args):
    f, g = _cochain(args.f, args), _cochain(args.g, args)
    if isinstance(f, Cochain) and isinstance(g, Cochain):
        out = bracket(f, g)
    else:
        out = bracket(as_series(f, args.depth), as_series(g, args.depth), args.depth)
    _emit(args, render(out), {"bracket": render(out)})
    return 0


def cmd_check(args):
    d = _cochain(args.d, args)
    res = is_codifferential(d, args.depth)
    _emit(args, f"codifferential: {str(bool(res.value)).lower()} (certified to weight {res.depth})",
          {"codifferential": bool(res.value), "certified_to": res.depth})
    return 0 if res.value else 1


def cmd_cohomology(args):
    rep = graded_cohomology(_cochain(args.d, args), args.n)
    _emit(args, rep.render(), rep.as_dict())
    return 0


def cmd_filtered(args):
    rep = filtered_cohomology(_cochain(args.d, args), args.n, args.depth)
    _emit(args, rep.render(), rep.as_dict())
    return 0


def cmd_act(args):
    g = parse_expression(args.g, args.depth)
    x = _cochain(args.x, args)
    if isinstance(g, LinearAutomorphism):
        out = pullback_linear(g, x)
    elif isinstance(g, FormalAutomorphism):
        out = pullback_formal(g, x, args.depth)
    else:
        raise UsageError("the first argument must be an automorphism: lin(...) or lin(...)*exp(...)")
    _emit(args, render(out), {"image": render(out)})
    return 0


def cmd_reduce(args):
    d, x = _cochain(args.d, args), _cochain(args.x, args)
    nf, pre = series_normal_form(d, x, args.depth, args.min_source)
    _emit(args, f"normal form: {render(nf)}\npreimage: {render(pre)}",
          {"normal_form": render(nf), "preimage": render(pre), "certified_to": args.depth})
    return 0


def cmd_obstruct(args):
    rep = obstruction(_cochain(args.d, args), args.n)
    _emit(args, rep.render(), rep.as_dict())
    return 0 if rep.failing_index is None and rep.solvable else 1


def cmd_eliminate(args):
    d = _cochain(args.d, args)
    if args.k is None:
        out, g = standard_form(d, args.depth)
        _emit(args, f"{out.render()}\n  via {g.render()}", {"codifferential": out.render(), "automorphism": g.render()})
        return 0
    r = eliminate_term(d, args.k, args.depth)
    _emit(args, r.render(), {"removable": r.removable, "codifferential": r.codifferential.render(),
                             "automorphism": r.automorphism.render()})
    return 0 if r.removable else 1


def cmd_replicate(args):
    ids = table_ids() if args.table == "all" else [args.table]
    params = {k: v for k, v in (("k", args.k), ("m", args.m)) if v is not None}
    reports: list[TableReport] = []
    for t in ids:
        try:
            reports.append(replicate(t, **params) if args.table != "all" else replicate(t))
        except KeyError as e:
            raise UsageError(str(e).strip("'\"")) from None
    if args.json:
        payload = reports[0].as_dict() if len(reports) == 1 else [r.as_dict() for r in reports]
        print(json.dumps(payload, indent=1))
    else:
        for r in reports:
            print(r.render(verbose=args.verbose))
    return 0 if all(r.status == "match" for r in reports) else 1


def cmd_search(args):
    res = equivalence_search(_cochain(args.d, args), _cochain(args.d2, args), args.depth)
    _emit(args, res.render(), res.as_dict())
    return 0 if res.found else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="truncation weight (default 12)")
    common.add_argument("--field", choices=("q", "qc"), default="qc", help="scalars: Q, or Q(c) with the parameter c")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="linfext", description="Cochain calculus and extension classification "
                                "for codifferentials on a 2|1-dimensional space.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("bracket", parents=[common], help="[f, g]")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(run=cmd_bracket)

    s = sub.add_parser("check", parents=[common], help="is d a codifferential up to --depth")
    s.add_argument("d")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("cohomology", parents=[common], help="graded cohomology of a pure-degree d")
    s.add_argument("d")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_cohomology)

    s = sub.add_parser("filtered", parents=[common], help="filtered cohomology of a mixed d")
    s.add_argument("d")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_filtered)

    s = sub.add_parser("act", parents=[common], help="pull back x along an automorphism g")
    s.add_argument("g")
    s.add_argument("x")
    s.set_defaults(run=cmd_act)

    s = sub.add_parser("reduce", parents=[common], help="normal form of x modulo coboundaries of d")
    s.add_argument("d")
    s.add_argument("x")
    s.add_argument("--min-source", type=int, default=1, help="lowest source weight allowed")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("obstruct", parents=[common], help="extension obstruction in weight n+N")
    s.add_argument("d")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_obstruct)

    s = sub.add_parser("eliminate", parents=[common], help="remove the weight-k term (or all removable terms)")
    s.add_argument("d")
    s.add_argument("--k", type=int)
    s.set_defaults(run=cmd_eliminate)

    s = sub.add_parser("replicate", parents=[common], help="recompute a displayed table ('all' for every table)")
    s.add_argument("table", help="table id or 'all'; known: " + ", ".join(table_ids()))
    s.add_argument("--k", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--verbose", action="store_true", help="print every row")
    s.set_defaults(run=cmd_replicate)

    s = sub.add_parser("search", parents=[common], help="search for g with g*(d) = d2 up to --depth")
    s.add_argument("d")
    s.add_argument("d2")
    s.set_defaults(run=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, ParseError, MixedDegreeError, DepthError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
