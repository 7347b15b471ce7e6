"""Command-line front end.

Exit codes: 0 success / verdict true, 1 checked failure (failing axiom,
missing antipode, singular Galois map), 2 input or schema error.

Text goes to stdout; ``--out FILE`` additionally writes the structured JSON
report.  Structured reports carry no timings so that identical inputs give
byte-identical files; elapsed time is printed to stderr instead.

``--float`` switches every comparison and rank computation to double
precision with threshold ``--tol`` (default 1e-9).  Exploratory use only;
the acceptance suite runs exact mode.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import baseobject, bimonad, entwining, exactmat, galois, hopf, hopfmodules
from . import instances as inst
from .bimonad import WeakBraidedBimonad
from .errors import (
    ArityMismatch,
    DimensionMismatch,
    ExprSyntaxError,
    InvalidSpec,
    PrerequisiteAxiomFailed,
    SchemaError,
    WeakHopfError,
)
from .tensorexpr import TensorMap, parse_expr


def _to_float(bim: WeakBraidedBimonad) -> WeakBraidedBimonad:
    def conv(f: TensorMap) -> TensorMap:
        mat = exactmat.Mat(f.mat.rows, f.mat.cols,
                           [[float(v) for v in row] for row in f.mat.data])
        return TensorMap(f.dom, f.cod, mat)

    return WeakBraidedBimonad(
        alg=bimonad.Algebra(bim.n, conv(bim.m), conv(bim.e)),
        coa=bimonad.Coalgebra(bim.n, conv(bim.delta), conv(bim.eps)),
        yb=bimonad.WeakYBPair(conv(bim.tau), conv(bim.tau_prime),
                              conv(bim.nabla)),
        name=bim.name, expected=bim.expected,
    )


def _load_instance(args) -> WeakBraidedBimonad:
    bim = inst.load(args.path)
    if bim.n > args.max_dim:
        raise SchemaError(
            f"dim {bim.n} exceeds --max-dim {args.max_dim}; raise the guard "
            "explicitly for large instances", "dim")
    if args.float:
        bim = _to_float(bim)
    return bim


def _sections_jsonable(sections):
    return {name: report.to_jsonable() for name, report in sections.items()}


def _render_text(doc) -> str:
    lines = [f"instance {doc.get('instance', '?')}  command {doc['command']}"]
    dims = doc.get("dims")
    if dims:
        lines.append("dims: " + " ".join(f"{k}={v}" for k, v in sorted(dims.items())))
    for name in sorted(doc.get("sections", {})):
        lines.append(f"section {name}")
        for entry in doc["sections"][name]:
            mark = "ok" if entry["holds"] else "FAIL"
            if entry.get("informational"):
                mark = "info:" + ("holds" if entry["holds"] else "fails")
            witness = ""
            if entry["witness"] is not None:
                witness = f"  witness={tuple(entry['witness'])}"
            lines.append(f"  [{mark}] {entry['id']}{witness}")
    verdicts = doc.get("verdicts")
    if verdicts:
        lines.append("verdicts: " + " ".join(
            f"{k}={str(v).lower()}" for k, v in sorted(verdicts.items())))
    for extra in doc.get("notes", []):
        lines.append(extra)
    return "\n".join(lines) + "\n"


def _emit(doc, args) -> None:
    sys.stdout.write(_render_text(doc))
    if args.out:
        Path(args.out).write_text(
            json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _axiom_sections(bim):
    sections = dict(bimonad.check_instance(bim))
    ent = entwining.build_entwining(bim, require=False)
    sections["entwining"] = entwining.check_weak_entwining(ent, bim)
    sections["derived"] = entwining.check_derived_identities(ent, bim)
    return sections, ent


def cmd_check(args) -> int:
    bim = _load_instance(args)
    sections, ent = _axiom_sections(bim)
    axioms_pass = all(r.passed for r in sections.values())
    doc = {
        "command": "check",
        "instance": bim.name,
        "dims": {"n": bim.n},
        "sections": _sections_jsonable(sections),
        "verdicts": {"axioms_pass": axioms_pass},
    }
    ok = axioms_pass
    if axioms_pass and bim.expected:
        base = baseobject.build_base(bim, ent)
        acts = baseobject.build_actions(bim, base)
        gal_data = galois.build_galois(bim, ent, base, acts)
        got = {"base_dim": base.r, "tensor_dim": gal_data.tensor_dim,
               "gamma_rank": gal_data.gamma_rank}
        expected_report = bimonad.AxiomReport()
        for key, want in sorted(bim.expected.items()):
            expected_report.add(bimonad.AxiomEntry(
                f"expected.{key}", got[key] == want,
                None if got[key] == want else (got[key], want)))
        doc["sections"]["expected"] = expected_report.to_jsonable()
        doc["verdicts"]["expected_pass"] = expected_report.passed
        ok = ok and expected_report.passed
    _emit(doc, args)
    return 0 if ok else 1


def cmd_derive(args) -> int:
    bim = _load_instance(args)
    try:
        bimonad.require_instance(bim)
    except PrerequisiteAxiomFailed as exc:
        sys.stdout.write(f"prerequisite axioms failed: {exc}\n")
        return 1
    ent = entwining.build_entwining(bim)
    base = baseobject.build_base(bim, ent)
    acts = baseobject.build_actions(bim, base)
    sections = {
        "frobenius": baseobject.check_frobenius_separable(base),
        "actions": acts.report,
        "pi": baseobject.check_pi_splitting(bim, base),
    }
    ok = all(r.passed for r in sections.values())
    doc = {
        "command": "derive",
        "instance": bim.name,
        "dims": {"n": bim.n, "r": base.r,
                 "gbar": ent.gbar_dim, "tbar": ent.tbar_dim},
        "sections": _sections_jsonable(sections),
        "verdicts": {"frobenius_separable": sections["frobenius"].passed,
                     "pi_splitting": sections["pi"].passed},
    }
    _emit(doc, args)
    return 0 if ok else 1


def _sparse_endo_rows(f: TensorMap):
    rows = []
    mat = f.mat
    for i in range(mat.rows):
        for j in range(mat.cols):
            if mat.data[i][j] != 0:
                rows.append([j, i, str(Fraction(mat.data[i][j]))
                             if not isinstance(mat.data[i][j], float)
                             else repr(mat.data[i][j])])
    rows.sort(key=lambda row: row[:2])
    return rows


def cmd_antipode(args) -> int:
    bim = _load_instance(args)
    try:
        bimonad.require_instance(bim)
    except PrerequisiteAxiomFailed as exc:
        sys.stdout.write(f"prerequisite axioms failed: {exc}\n")
        return 1
    ent = entwining.build_entwining(bim)
    base = baseobject.build_base(bim, ent)
    acts = baseobject.build_actions(bim, base)
    gal_data = galois.build_galois(bim, ent, base, acts)
    linear = hopf.solve_antipode_linear(bim, ent)
    doc = {
        "command": "antipode",
        "instance": bim.name,
        "dims": {"n": bim.n, "r": base.r},
        "sections": {},
        "verdicts": {
            "gamma_invertible": gal_data.gamma_invertible,
            "linear_status": linear.status,
        },
        "notes": [],
    }
    if gal_data.gamma_invertible:
        antipode = hopf.construct_antipode_from_galois(bim, ent, base, gal_data)
        doc["sections"]["antipode"] = \
            hopf.check_antipode(bim, ent, antipode.map).to_jsonable()
        doc["antipode"] = {"origin": antipode.origin,
                           "entries": _sparse_endo_rows(antipode.map)}
        if linear.antipode is not None:
            doc["antipode_linear"] = {
                "origin": linear.antipode.origin,
                "entries": _sparse_endo_rows(linear.antipode.map),
            }
        doc["notes"].append(f"antipode origin {antipode.origin}")
        _emit(doc, args)
        return 0
    reason = ("linear system inconsistent" if linear.status == "no_solution"
              else f"linear solve {linear.status}")
    doc["notes"].append(
        f"no weak antipode ({reason}); gamma rank "
        f"{gal_data.gamma_rank}/{gal_data.gamma.mat.rows}")
    _emit(doc, args)
    return 1


def cmd_galois(args) -> int:
    bim = _load_instance(args)
    try:
        bimonad.require_instance(bim)
    except PrerequisiteAxiomFailed as exc:
        sys.stdout.write(f"prerequisite axioms failed: {exc}\n")
        return 1
    ent = entwining.build_entwining(bim)
    base = baseobject.build_base(bim, ent)
    acts = baseobject.build_actions(bim, base)
    gal_data = galois.build_galois(bim, ent, base, acts)
    gm, gp = gal_data.gamma.mat, gal_data.gamma_prime.mat
    doc = {
        "command": "galois",
        "instance": bim.name,
        "dims": {"n": bim.n, "r": base.r, "t": gal_data.tensor_dim,
                 "c": gal_data.cotensor_dim, "gbar": gal_data.gbar_dim,
                 "tbar": gal_data.tbar_dim},
        "sections": {"galois": gal_data.report.to_jsonable()},
        "verdicts": {"gamma_invertible": gal_data.gamma_invertible,
                     "gamma_prime_invertible": gal_data.gamma_prime_invertible},
        "notes": [
            f"gamma: {gm.rows}x{gm.cols} rank {gal_data.gamma_rank} "
            + ("invertible" if gal_data.gamma_invertible else "not invertible"),
            f"gamma_prime: {gp.rows}x{gp.cols} rank {gal_data.gamma_prime_rank} "
            + ("invertible" if gal_data.gamma_prime_invertible
               else "not invertible"),
        ],
    }
    _emit(doc, args)
    return 0 if gal_data.gamma_invertible and gal_data.gamma_prime_invertible else 1


def cmd_hopfmod(args) -> int:
    bim = _load_instance(args)
    try:
        bimonad.require_instance(bim)
    except PrerequisiteAxiomFailed as exc:
        sys.stdout.write(f"prerequisite axioms failed: {exc}\n")
        return 1
    module = inst.load_module(args.modulepath, bim)
    ent = entwining.build_entwining(bim)
    base = baseobject.build_base(bim, ent)
    acts = baseobject.build_actions(bim, base)
    gal_data = galois.build_galois(bim, ent, base, acts)
    sections = {"module": hopfmodules.check_mixed_bimodule(bim, ent, module)}
    doc = {
        "command": "hopfmod",
        "instance": bim.name,
        "module": module.name,
        "dims": {"n": bim.n, "r": base.r, "carrier": module.dim},
        "sections": {},
        "verdicts": {"module_pass": sections["module"].passed,
                     "hopf": gal_data.gamma_invertible},
        "notes": [],
    }
    if not sections["module"].passed:
        doc["sections"] = _sections_jsonable(sections)
        _emit(doc, args)
        return 1
    if not gal_data.gamma_invertible:
        doc["notes"].append("instance is not a weak Hopf monad; "
                            "coinvariants computed without a splitting")
        coin = hopfmodules.coinvariants(bim, ent, None, module)
        doc["dims"]["coinvariants"] = coin.dim
        doc["sections"] = _sections_jsonable(sections)
        _emit(doc, args)
        return 1
    antipode = hopf.construct_antipode_from_galois(bim, ent, base, gal_data)
    coin = hopfmodules.coinvariants(bim, ent, antipode, module)
    rt = hopfmodules.fundamental_roundtrip(bim, ent, base, antipode, module)
    sections["roundtrip"] = rt
    doc["dims"]["coinvariants"] = coin.dim
    doc["sections"] = _sections_jsonable(sections)
    doc["verdicts"]["roundtrip_pass"] = rt.passed
    _emit(doc, args)
    return 0 if rt.passed else 1


def cmd_eval(args) -> int:
    bim = _load_instance(args)
    env = {
        "m": bim.m, "e": bim.e, "delta": bim.delta, "eps": bim.eps,
        "tau": bim.tau, "tau_prime": bim.tau_prime, "nabla": bim.nabla,
    }
    if bimonad.instance_passes(bim):
        ent = entwining.build_entwining(bim)
        env.update({
            "omega": ent.omega, "omegabar": ent.omegabar,
            "sigma": ent.sigma, "sigmabar": ent.sigmabar,
            "xi": ent.xi, "xibar": ent.xibar,
            "chi": ent.chi, "chibar": ent.chibar,
            "kappa": ent.kappa, "kappa_prime": ent.kappa_prime,
        })
    result = parse_expr(args.expr, env, base_dim=bim.n)
    doc = {
        "command": "eval",
        "instance": bim.name,
        "expr": args.expr,
        "dom": list(result.dom),
        "cod": list(result.cod),
        "entries": [[i, j, str(Fraction(v)) if not isinstance(v, float)
                     else repr(v)]
                    for i in range(result.mat.rows)
                    for j in range(result.mat.cols)
                    if (v := result.mat.data[i][j]) != 0],
    }
    sys.stdout.write(f"map {result.dom} -> {result.cod}\n")
    sys.stdout.write(result.mat.pretty() + "\n")
    if args.out:
        Path(args.out).write_text(
            json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return 0


def _parse_arrows(text):
    arrows = []
    if not text:
        return tuple(arrows)
    for part in text.split(","):
        s, _, t = part.partition("-")
        arrows.append((int(s), int(t)))
    return tuple(arrows)


def _parse_table(text):
    return [[int(v) for v in row.split(",")] for row in text.split(";")]


def cmd_gen(args) -> int:
    if args.kind == "groupoid":
        if args.objects is None:
            raise InvalidSpec("gen groupoid needs --objects")
        if args.full:
            spec = inst.full_groupoid(args.objects)
            name = args.name or f"G{args.objects}"
        elif args.arrows:
            spec = inst.GroupoidSpec(args.objects, _parse_arrows(args.arrows))
            name = args.name or f"groupoid{args.objects}"
        else:
            spec = inst.discrete_groupoid(args.objects)
            name = args.name or f"K{args.objects}"
        bim = inst.groupoid_algebra(spec, name=name)
    elif args.kind == "group":
        if args.cyclic is None and not args.table:
            raise InvalidSpec("gen group needs --cyclic N or --table")
        table = (inst.cyclic_group_table(args.cyclic) if args.cyclic is not None
                 else _parse_table(args.table))
        name = args.name or (f"Z{args.cyclic}" if args.cyclic is not None
                             else f"group{len(table)}")
        bim = inst.group_algebra(table, name=name)
    elif args.kind == "monoid":
        if not args.table:
            raise InvalidSpec("gen monoid needs --table \"0,1;1,1\"")
        table = _parse_table(args.table)
        bim = inst.monoid_algebra(table, name=args.name or f"monoid{len(table)}")
    elif args.kind == "superline":
        bim = inst.super_line()
    elif args.kind == "dual":
        if not args.of:
            raise InvalidSpec("gen dual needs --of INSTANCE")
        bim = inst.dual_instance(inst.load(args.of))
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidSpec(f"unknown kind {args.kind}")
    if bim.n > args.max_dim:
        raise SchemaError(f"dim {bim.n} exceeds --max-dim {args.max_dim}", "dim")

    expected = None
    if bimonad.instance_passes(bim):
        ent = entwining.build_entwining(bim)
        base = baseobject.build_base(bim, ent)
        acts = baseobject.build_actions(bim, base)
        gal_data = galois.build_galois(bim, ent, base, acts)
        expected = {"base_dim": base.r, "tensor_dim": gal_data.tensor_dim,
                    "gamma_rank": gal_data.gamma_rank}
    text = inst.to_json_text(bim, expected=expected)
    Path(args.outfile).write_text(text, encoding="utf-8")
    sys.stdout.write(f"wrote {args.outfile} ({bim.name}, dim {bim.n})\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakhopf",
        description="exact verification of weak braided bimonads and "
                    "weak Hopf monads")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the structured JSON report here")
    common.add_argument("--float", action="store_true",
                        help="double-precision mode (exploratory)")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="zero threshold for --float (default 1e-9)")
    common.add_argument("--max-dim", type=int, default=12,
                        help="refuse instances larger than this (default 12)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="run all axiom and identity checks")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", parents=[common],
                       help="base object, Frobenius data, pi-splitting")
    p.add_argument("path")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("antipode", parents=[common],
                       help="construct or refute a weak antipode")
    p.add_argument("path")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("galois", parents=[common],
                       help="Galois maps and invertibility verdicts")
    p.add_argument("path")
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("hopfmod", parents=[common],
                       help="check a module file and run the round trip")
    p.add_argument("path")
    p.add_argument("modulepath")
    p.set_defaults(func=cmd_hopfmod)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate an expression over the instance maps")
    p.add_argument("path")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("kind",
                   choices=["groupoid", "group", "monoid", "superline", "dual"])
    p.add_argument("--objects", type=int)
    p.add_argument("--full", action="store_true")
    p.add_argument("--arrows")
    p.add_argument("--cyclic", type=int)
    p.add_argument("--table")
    p.add_argument("--of")
    p.add_argument("--name")
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--max-dim", type=int, default=12)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if getattr(args, "float", False):
            with exactmat.tolerance(args.tol):
                code = args.func(args)
        else:
            code = args.func(args)
    except (SchemaError, InvalidSpec, ExprSyntaxError, ArityMismatch,
            DimensionMismatch) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except PrerequisiteAxiomFailed as exc:
        sys.stderr.write(f"checked failure: {exc}\n")
        return 1
    except WeakHopfError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    sys.stderr.write(
        f"elapsed {1000 * (time.perf_counter() - start):.1f} ms\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
