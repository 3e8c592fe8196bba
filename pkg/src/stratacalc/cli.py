"""Command-line surface: compute boundary combinatorics and invariants of
a stratum described by a JSON spec file.

Commands: info, graphs, divisors, profiles, chi, xi-top, c1, chern, check.
Diagnostics exit with status 1, internal-consistency failures with 2.
"""
from __future__ import annotations

import argparse
import json
import sys

from .exact import rational_str
from .strata import SpecError, StratumSpec, classify, dimension, validate
from . import levelgraphs as lg
from . import invariants as inv
from . import tautring as tr
from .evaluate import Evaluator, UnevaluatableError, default_registry


def _load_spec(path: str) -> StratumSpec:
    with open(path) as fh:
        return StratumSpec.from_json(fh.read())


def _evaluator(args) -> Evaluator:
    reg = default_registry()
    for path in args.fixtures or ():
        with open(path) as fh:
            reg.load_json_obj(json.load(fh))
    return Evaluator(reg)


def _emit(args, obj, text_lines) -> None:
    out = json.dumps(obj, indent=2, sort_keys=True) if args.json \
        else "\n".join(text_lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _table(rows: list[list[str]]) -> list[str]:
    if not rows:
        return ["(empty)"]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
            for r in rows]


def cmd_info(args) -> int:
    spec = _load_spec(args.spec)
    issues = validate(spec)
    if issues:
        print("invalid spec: " + "; ".join(issues), file=sys.stderr)
        return 1
    dd = dimension(spec)
    obj = {"spec": spec.to_json_obj(), "type": classify(spec),
           "dim": dd.projectivized, "dim_unprojectivized": dd.unprojectivized,
           "residue_rank": dd.residue_rank,
           "components": spec.n_components,
           "horizontal_divisor": lg.horizontal_divisor_present(spec)}
    _emit(args, obj, [f"{k}: {v}" for k, v in obj.items() if k != "spec"])
    return 0


def cmd_graphs(args) -> int:
    spec = _load_spec(args.spec)
    L = args.levels if args.levels is not None else 1
    graphs = lg.enumerate_LGL(spec, L)
    reports = [lg.graph_report(g, spec) for g in graphs]
    lines = [f"{len(graphs)} graphs with {L} levels below zero"]
    for i, r in enumerate(reports):
        lines.append(f"[{i}] vertices={r['vertices']} edges={r['edges']} "
                     f"ell={r['prongs']['ell']} K={r['prongs']['kappa_product']} "
                     f"aut={r['prongs']['aut']} profile={r['profile']}")
    _emit(args, reports, lines)
    return 0


def cmd_divisors(args) -> int:
    spec = _load_spec(args.spec)
    graphs = lg.enumerate_LG1(spec)
    rows = [["#", "ell", "K", "orbits", "aut", "N_top", "dims"]]
    reports = []
    for i, g in enumerate(graphs):
        pd = lg.prong_data(g)
        top, _ = lg.level_stratum(g, spec, 0)
        dims = lg.dimension_profile(g, spec)
        rows.append([str(i), str(pd.ell), str(pd.kappa_product),
                     str(pd.orbits), str(pd.aut_order),
                     str(dimension(top).unprojectivized), str(dims)])
        reports.append(lg.graph_report(g, spec))
    lines = _table(rows)
    if lg.horizontal_divisor_present(spec):
        lines.append("plus the horizontal divisor")
    _emit(args, reports, lines)
    return 0


def cmd_profiles(args) -> int:
    spec = _load_spec(args.spec)
    d = dimension(spec).projectivized
    top = min(d, args.levels) if args.levels is not None else d
    lg.profile_order_check(spec, top)
    out = {}
    for L in range(1, top + 1):
        out[L] = [list(lg.profile(g, spec)) for g in lg.enumerate_LGL(spec, L)]
    lines = [f"profiles consistent through L={top}"]
    for L, ps in out.items():
        lines.append(f"L={L}: {ps}")
    _emit(args, out, lines)
    return 0


def cmd_chi(args) -> int:
    spec = _load_spec(args.spec)
    rep = inv.euler_characteristic(spec, _evaluator(args))
    obj = rep.to_json_obj()
    lines = [f"chi = {rational_str(rep.chi)}"]
    if args.verbose:
        rows = [["graph", "L", "K", "N_top", "aut", "factors", "contribution"]]
        for r in rep.rows:
            rows.append([r.encoding[:40], str(r.levels_below),
                         str(r.kappa_product), str(r.top_dim_unproj),
                         str(r.aut),
                         " ".join(rational_str(x) for x in r.level_factors),
                         rational_str(r.contribution)])
        lines += _table(rows)
    _emit(args, obj, lines)
    return 0


def cmd_xi_top(args) -> int:
    spec = _load_spec(args.spec)
    val = _evaluator(args).xi_top(spec)
    _emit(args, {"xi_top": rational_str(val)}, [rational_str(val)])
    return 0


def cmd_c1(args) -> int:
    spec = _load_spec(args.spec)
    cls = inv.c1_log_cotangent(spec)
    _emit(args, cls.to_json_obj(),
          [json.dumps(t, sort_keys=True) for t in cls.to_json_obj()])
    return 0


def cmd_chern(args) -> int:
    spec = _load_spec(args.spec)
    rep = inv.chern_polynomial(spec, _evaluator(args))
    obj = rep.to_json_obj()
    lines = [f"c_top integral = {rational_str(rep.top_value)}",
             f"chi = {rational_str(rep.chi)}",
             f"duality (-1)^d chi == c_top: {rep.duality_holds}"]
    _emit(args, obj, lines)
    if not rep.duality_holds:
        print("internal consistency failure: top Chern class does not "
              "match the Euler characteristic", file=sys.stderr)
        return 2
    return 0


def cmd_check(args) -> int:
    results = inv.cross_check()
    obj = [{"name": r.name, "lhs": rational_str(r.lhs),
            "rhs": rational_str(r.rhs), "ok": r.ok} for r in results]
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}: "
             f"{rational_str(r.lhs)} vs {rational_str(r.rhs)}"
             for r in results]
    _emit(args, obj, lines)
    return 0 if all(r.ok for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stratacalc",
        description="exact boundary combinatorics and intersection numbers "
                    "of strata of abelian differentials")
    sub = p.add_subparsers(dest="command", required=True)
    handlers = {
        "info": cmd_info, "graphs": cmd_graphs, "divisors": cmd_divisors,
        "profiles": cmd_profiles, "chi": cmd_chi, "xi-top": cmd_xi_top,
        "c1": cmd_c1, "chern": cmd_chern, "check": cmd_check,
    }
    for name, fn in handlers.items():
        sp = sub.add_parser(name)
        if name != "check":
            sp.add_argument("--spec", required=True, help="stratum JSON file")
        else:
            sp.add_argument("--tables", action="store_true",
                            help="check the shipped chi tables")
        sp.add_argument("--fixtures", nargs="*", default=[],
                        help="extra fixture JSON files")
        sp.add_argument("--levels", type=int, default=None)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", default=None)
        sp.add_argument("--verbose", action="store_true")
        sp.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; evaluation is "
                             "sequential")
        sp.set_defaults(handler=fn)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (SpecError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnevaluatableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except lg.EnumerationError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
