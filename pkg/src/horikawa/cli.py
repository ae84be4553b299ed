"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 internal consistency failure.
All output is deterministic for identical arguments.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from . import cech, deformation, families, hirzebruch, multmap, strata
from .errors import DomainError, InternalError
from .exactalg import BinaryForm, RatMatrix, format_rational, to_fraction


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# serialization


def to_jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, BinaryForm):
        return {"degree": x.degree, "coeffs": [format_rational(c) for c in x.coeffs], "text": str(x)}
    if isinstance(x, RatMatrix):
        return [[format_rational(v) for v in row] for row in x.to_rows()]
    if dataclasses.is_dataclass(x):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def envelope(command: str, inputs: dict, result: Any, warnings: Sequence[str] = ()) -> str:
    doc = {"command": command, "inputs": to_jsonable(inputs), "result": to_jsonable(result),
           "warnings": list(warnings)}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_form(text: str) -> BinaryForm:
    """Comma-separated rational coefficients ascending in the t0-power."""
    try:
        coeffs = [to_fraction(c) for c in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from None
    return BinaryForm.of(coeffs)


def parse_int_list(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad integer list {text!r} (use '3,4,5' or '3..6')") from None


def k_from_k2(k2: int) -> int:
    if k2 % 2:
        raise DomainError(f"K^2 = 2p_g - 4 requires K^2 even, got K^2={k2}")
    return k2 // 2


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands; each returns (inputs, result, warnings, text)


def cmd_strata(args):
    k = k_from_k2(args.k2)
    rows = strata.strata_for(k)
    warnings: list[str] = []
    comps = None
    if k not in (1, 4):
        cs = strata.component_structure(k)
        comps = {"components": cs.components, "component_dims": cs.component_dims,
                 "trailing": cs.trailing, "trailing_dims": cs.trailing_dims,
                 "index_list": cs.index_list_strata}
        warnings.extend(cs.notes)
    result = {"k": k, "K2": 2 * k, "strata": rows, "structure": comps}
    text = _table(["m", "a", "K2", "pg", "case", "dim", "classical", "pinch"],
                  [(s.m, s.a, s.K2, s.pg, s.branch_case.value, s.dim, s.classical,
                    "-" if s.pinch_points is None else s.pinch_points) for s in rows])
    if comps:
        for name, ms in sorted(comps["components"].items()):
            text += f"component {name}: types {list(ms)}, dim {comps['component_dims'][name]}\n"
    return {"k2": args.k2}, result, warnings, text


def cmd_cohomology(args):
    d = hirzebruch.DivisorClass(args.m, args.sigma, args.gamma)
    c = hirzebruch.cohomology(d)
    result = {"class": d, "h0": c.h0, "h1": c.h1, "h2": c.h2, "euler": c.euler,
              "riemann_roch": hirzebruch.riemann_roch(d)}
    if c.euler != result["riemann_roch"]:
        raise InternalError(f"chi = {c.euler} but Riemann-Roch gives {result['riemann_roch']}")
    text = f"{d}: h0={c.h0} h1={c.h1} h2={c.h2} (chi={c.euler})\n"
    return {"m": args.m, "sigma": args.sigma, "gamma": args.gamma}, result, [], text


def cmd_tangent(args):
    c = hirzebruch.tangent_cohomology(args.m)
    basis = cech.tangent_h1_basis(args.m)
    if len(basis) != c.h1:
        raise InternalError(f"Cech basis size {len(basis)} != h1(T) = {c.h1}")
    result = {"h0": c.h0, "h1": c.h1, "h2": c.h2,
              "h1_basis": [f"tau^{e}*d/dxi" for e in basis]}
    text = f"T_F{args.m}: h0={c.h0} h1={c.h1} h2={c.h2}\nH^1 basis: {', '.join(result['h1_basis']) or '(empty)'}\n"
    return {"m": args.m}, result, [], text


def cmd_multmap(args):
    i_values = parse_int_list(args.i)
    if args.p0 is not None or args.p1 is not None:
        if args.p0 is None or args.p1 is None:
            raise UsageError("multmap needs both --p0 and --p1")
        P = multmap.PencilPair(parse_form(args.p0), parse_form(args.p1))
        rows = []
        for i in i_values:
            M = multmap.mult_map(P, i)
            r = M.rank()
            rows.append({"i": i, "rows": M.rows, "cols": M.cols, "rank": r,
                         "surjective": r == M.rows, "cokernel": M.rows - r})
        result = {"p0": P.p0, "p1": P.p1, "maps": rows}
        inputs = {"p0": args.p0, "p1": args.p1, "i": i_values}
        text = f"p0 = {P.p0}\np1 = {P.p1}\n" + _table(
            ["i", "rows", "cols", "rank", "surjective", "coker"],
            [(r["i"], r["rows"], r["cols"], r["rank"], r["surjective"], r["cokernel"]) for r in rows])
        return inputs, result, [], text
    if args.e is None:
        raise UsageError("multmap needs --e for a seeded sweep, or --p0/--p1")
    rep = multmap.surjectivity_sweep(args.e, i_values, args.trials, args.seed)
    summary = []
    for i in i_values:
        ent = [en for en in rep.entries if en.i == i]
        summary.append({"i": i, "trials": len(ent), "surjective": sum(en.surjective for en in ent),
                        "max_cokernel": max(en.cokernel for en in ent),
                        "min_cokernel": min(en.cokernel for en in ent)})
    result = {"e": args.e, "summary": summary, "failures": rep.failures, "rejections": rep.rejections}
    warnings = [f"i={f['i']} trial {f['trial']}: not surjective" for f in rep.failures]
    text = _table(["i", "trials", "surjective", "coker(min..max)"],
                  [(s["i"], s["trials"], s["surjective"], f"{s['min_cokernel']}..{s['max_cokernel']}")
                   for s in summary])
    return {"e": args.e, "i": i_values, "trials": args.trials, "seed": args.seed}, result, warnings, text


def cmd_alpha(args):
    rng = random.Random(args.seed)
    B = cech.generic_branch_equation(args.m, args.a, args.k, rng)
    M = cech.alpha_matrix(B)
    r = M.rank()
    model = cech.h1_linebundle_model(args.m, args.a)
    pred = cech.predicted_alpha_rank(args.m, args.a, args.k)
    warnings = cech.boundary_warnings(args.m, args.a, args.k, r, model.dim)
    if r != pred:
        warnings.append(f"exact rank {r} differs from closed-form rank {pred}")
    result = {"g": [g for g in B.g], "window0": model.window0, "window1": model.window1,
              "matrix": M, "rank": r, "predicted_rank": pred, "source_dim": max(0, args.m - 1),
              "target_dim": model.dim}
    text = (f"alpha: H1(T) (dim {max(0, args.m - 1)}) -> H1(O_B(B)) (dim {model.dim}), "
            f"rank {r} (closed form {pred})\n")
    for row in M.to_rows():
        text += " ".join(format_rational(v).removesuffix("/1").rjust(4) for v in row) + "\n"
    return {"m": args.m, "a": args.a, "k": args.k, "seed": args.seed}, result, warnings, text


def cmd_deform(args):
    source = deformation.RankSource.FORMULA if args.formula else deformation.RankSource.EXACT
    r = deformation.tangent_report(args.k, args.m, source, vanishing=args.vanishing, seed=args.seed)
    warnings = list(r.warnings)
    text = "\n".join(f"{f.name} = {to_jsonable(getattr(r, f.name))}" for f in dataclasses.fields(r)
                     if f.name != "warnings") + "\n"
    inputs = {"k": args.k, "m": args.m, "rank_source": source.value, "vanishing": args.vanishing, "seed": args.seed}
    return inputs, r, warnings, text


def cmd_family(args):
    kind = families.FamilyKind(args.kind.upper())
    F = families.family(kind, d=args.d, n=args.n, seed=args.seed)
    gen = families.general_fiber(F)
    cen, sub = families.central_fiber(F)
    checks = families.check_fibres(F)
    result: dict[str, Any] = {
        "kind": kind, "d": args.d, "n": args.n, "K2": 2 * F.k,
        "general_type": F.general_type(), "central_type": F.central_type(),
        "pencil": {"p0": F.pencil.p0, "p1": F.pencil.p1},
        "ambient": {"names": F.ambient.names, "degrees": F.ambient.degrees},
        "general": {"names": gen.names, "degrees": gen.degrees},
        "central": {"names": cen.names, "degrees": cen.degrees},
        "y1_degree": sub.y1_degree, "checks": checks,
    }
    warnings = list(F.warnings)
    if args.check_limit:
        if kind in (families.FamilyKind.EVEN, families.FamilyKind.ODD):
            lc = families.product_limit_check(F, seed=args.seed)
            result["limit"] = {"identity_holds": lc.identity_holds, "y1_valuation": lc.y1_valuation,
                               "content_degree": lc.content_degree,
                               "expected_content_degree": lc.expected_content_degree, "ok": lc.ok}
        elif kind is families.FamilyKind.K8:
            result["limit"] = {"z2_plus_p0p1_y0^4_y1^2": families.k8_limit_check(F),
                               "projection": families.k8_projection_check()}
        else:
            result["limit"] = {"divisor_equation_in_span": families.example34_membership(
                args.n, F.pencil, seed=args.seed)}
    key = "verbatim" if kind is not families.FamilyKind.K8 else "gl2z"
    if not (checks[f"general_{key}"] and checks[f"central_{key}"]):
        raise InternalError(f"fibre matrices disagree with the catalogue: {checks}")
    text = (f"ambient:\n{F.ambient}\ngeneral fibre (type {F.general_type()}):\n{gen}\n"
            f"central fibre (type {F.central_type()}):\n{cen}\n"
            f"p0 = {F.pencil.p0}\np1 = {F.pencil.p1}\nchecks: {checks}\n")
    if "limit" in result:
        text += f"limit: {to_jsonable(result['limit'])}\n"
    return {"kind": kind.value, "d": args.d, "n": args.n, "seed": args.seed,
            "check_limit": args.check_limit}, result, warnings, text


# --------------------------------------------------------------------------
# component graph


def component_graph(k: int) -> dict:
    """Nodes are components / trailing strata; edges are the established intersections."""
    if k == 4:
        sp = strata.special_k8()
        nodes = [
            {"id": "m0", "label": "m=0", "dim": sp.dims["0"], "classical": True, "cluster": "I"},
            {"id": "m2", "label": "m=2", "dim": sp.dims["2"], "classical": True, "cluster": "I"},
            {"id": "inf", "label": "inf", "dim": sp.dims["inf"], "classical": True, "cluster": "II"},
            {"id": "4'", "label": "4'", "dim": sp.dims["4'"], "classical": True, "cluster": "II"},
        ]
        edges = [{"source": "m0", "target": "4'", "kind": "intersection_8",
                  "label": f"D (dim {sp.checks['dim_D']})"}]
        return {"k": k, "nodes": nodes, "edges": edges, "clusters": sp.component_dims}
    cs = strata.component_structure(k)
    by_m = {s.m: s for s in strata.strata_for(k)}
    nodes, edges = [], []
    owner = {}
    for name, ms in sorted(cs.components.items()):
        nodes.append({"id": name, "label": f"{name}: m in {{{','.join(map(str, ms))}}}",
                      "dim": cs.component_dims[name], "classical": True, "cluster": None})
        for m in ms:
            owner[m] = name
    if "II" in cs.components:
        special = cs.components["II"][0]
        edges.append({"source": "I", "target": "II", "kind": "component_connection",
                      "label": f"D (dim {by_m[special].dim - 1})"})
    for m in cs.trailing:
        s = by_m[m]
        nodes.append({"id": f"m{m}", "label": f"m={m}", "dim": s.dim, "classical": False, "cluster": None})
        prev = m - 2
        src = owner.get(prev, f"m{prev}")
        kind = "connect_even" if k % 2 == 0 else "connect_odd"
        params = f"EVEN(d={prev // 2}, n={k // 2})" if k % 2 == 0 else f"ODD(d={(m - 1) // 2}, n={(k + 1) // 2})"
        edges.append({"source": src, "target": f"m{m}", "kind": kind, "label": params})
    return {"k": k, "nodes": nodes, "edges": edges, "clusters": None}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: dict) -> str:
    lines = [f"graph H{2 * g['k']} {{", "  node [shape=box];"]

    def node_line(n):
        return (f"{_q(n['id'])} [label={_q(n['label'] + ' dim ' + str(n['dim']))}, "
                f"dim={n['dim']}, classical={str(n['classical']).lower()}];")

    clusters = sorted({n["cluster"] for n in g["nodes"] if n["cluster"]})
    for c in clusters:
        lines.append(f"  subgraph cluster_{c} {{")
        title = f"{c} (dim {g['clusters'][c]})"
        lines.append(f"    label={_q(title)};")
        for n in g["nodes"]:
            if n["cluster"] == c:
                lines.append("    " + node_line(n))
        lines.append("  }")
    for n in g["nodes"]:
        if not n["cluster"]:
            lines.append("  " + node_line(n))
    for e in g["edges"]:
        lines.append(f"  {_q(e['source'])} -- {_q(e['target'])} [label={_q(e['label'])}, kind={_q(e['kind'])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_report(args):
    k = k_from_k2(args.k2)
    g = component_graph(k)
    text = graph_to_dot(g) if args.dot else "".join(
        [f"{n['id']}: dim {n['dim']}{'' if n['classical'] else ' (non-classical)'}\n" for n in g["nodes"]]
        + [f"{e['source']} -- {e['target']}  [{e['kind']}: {e['label']}]\n" for e in g["edges"]])
    return {"k2": args.k2}, g, [], text


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")
    p = _Parser(prog="horikawa", description="Exact computations for stable Horikawa surfaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("strata", parents=[common], help="list standard strata for a given K^2")
    s.add_argument("--k2", type=int, required=True)
    s.set_defaults(func=cmd_strata)

    s = sub.add_parser("cohomology", parents=[common], help="h^i of O(sigma*s_inf + gamma*Gamma) on F_m")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--sigma", type=int, required=True)
    s.add_argument("--gamma", type=int, required=True)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("tangent", parents=[common], help="cohomology of the tangent sheaf of F_m")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_tangent)

    s = sub.add_parser("multmap", parents=[common], help="ranks of Sym^i V (x) R -> R")
    s.add_argument("--e", type=int)
    s.add_argument("--i", default="3..6", help="list '3,4' or range '3..6'")
    s.add_argument("--p0")
    s.add_argument("--p1")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_multmap)

    s = sub.add_parser("alpha", parents=[common], help="matrix and rank of alpha for a generic branch curve")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--k", type=int, choices=(1, 2), required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("deform", parents=[common], help="T1/T2 bookkeeping for a stratum")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="rank alpha from the matrix (default)")
    mode.add_argument("--formula", action="store_true", help="rank alpha from the closed form")
    s.add_argument("--vanishing", type=int, choices=(0, 1, 2))
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_deform)

    s = sub.add_parser("family", parents=[common], help="toric degeneration families")
    s.add_argument("--kind", choices=("even", "odd", "k8", "smoothing"), required=True)
    s.add_argument("--d", type=int, default=0)
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--check-limit", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("report", parents=[common], help="component adjacency graph")
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--dot", action="store_true", help="emit DOT")
    s.set_defaults(func=cmd_report)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        inputs, result, warnings, text = args.func(args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except DomainError as exc:
        err.write(f"domain error: {exc}\n")
        return 2
    except InternalError as exc:
        err.write(f"internal error: {exc}\n")
        return 3
    if args.json and not getattr(args, "dot", False):
        out.write(envelope(args.command, inputs, result, warnings))
    else:
        out.write(text)
        for w in warnings:
            err.write(f"warning: {w}\n")
    return 0


def main() -> None:
    sys.exit(run())
