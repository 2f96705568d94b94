"""Command-line front end.

Exit codes: 0 all selected checks pass (warnings allowed), 1 a verification
failed, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import pipeline as pl
from .modules import DEFAULT_BUDGET
from .quiver import AlgebraError
from .serialize import InputError, canonical_json

CHECK_NAMES = ("stratify",) + pl.ALL_CHECKS


def _parse_order(text: Optional[str]):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--order expects comma separated integers, got {text!r}") from None


def _parse_checks(text: Optional[str]):
    if text is None:
        return pl.DEFAULT_CHECKS
    items = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in items if x not in CHECK_NAMES]
    if bad:
        raise InputError(f"unknown checks {bad}; choose from {', '.join(CHECK_NAMES)}")
    return tuple(x for x in items if x != "stratify")


# ---------------------------------------------------------------- text rendering


def _fmt_matrix(m: dict) -> List[str]:
    cols = m["cols"]
    width = max([len(c) for c in cols] + [len(str(x)) for r in m["entries"] for x in r])
    rw = max([len(r) for r in m["rows"]] + [1])
    lines = [" " * rw + " | " + " ".join(c.rjust(width) for c in cols)]
    for label, row in zip(m["rows"], m["entries"]):
        lines.append(label.rjust(rw) + " | " + " ".join(str(x).rjust(width) for x in row))
    return lines


def _fmt_dims(d) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def render_stratify(r: dict) -> str:
    out = [f"stratcartan {r['tool']['version']}  schema {r['schema_version']}  seed {r['seed']}  budget {r['budget']}"]
    if "input" in r:
        out.append(f"algebra {r['input']['algebra']} [{r['input']['algebra_digest']}]")
    out.append("summands:")
    for s in r.get("summands", []):
        lab = f"  ~ {s['iso_label']}" if s["iso_label"] else ""
        out.append(f"  {s['name']}: dim {_fmt_dims(s['dims'])}  g {_fmt_dims(s['g_vector'])}  "
                   f"τ {_fmt_dims(s['tau_dims'])}{lab}")
    if "order" in r:
        o = r["order"]
        out.append(f"TF order ({o['source']}): {' < '.join(o['names'])}")
    if "system" in r:
        out.append("system:")
        sysr = r["system"]
        for i in range(len(sysr["delta"])):
            cells = []
            for key in ("delta", "K", "Q", "U"):
                e = sysr[key][i]
                cells.append(f"{'Δ' if key == 'delta' else key}({i + 1}) = {_fmt_dims(e['dims'])}"
                             + (f" {e['iso_label']}" if e["iso_label"] and e["iso_label"] != "0" else ""))
            out.append("  " + "   ".join(cells))
    for key in ("C", "G", "S", "R"):
        if "matrices" in r:
            out.append(f"{key}:")
            out += ["  " + line for line in _fmt_matrix(r["matrices"][key])]
    if "cartan_group" in r:
        g = r["cartan_group"]
        out.append(f"Cartan group: {g['structure']}  order {g['order']}  ∏C_ii = {g['diagonal_product']}  "
                   f"invariant factors {g['invariant_factors']}")
        if g["coker_S"] is not None:
            out.append(f"CoKer(S): {g['coker_S']}")
        out.append(f"  {g['coker_S_note']}")
    if "membership" in r:
        m = r["membership"]
        out.append(f"M ∈ F(Δ): {m['M_in_F']}")
        for s, v in zip(r["order"]["names"], m["summands"]):
            out.append(f"  {s}: {v['verdict']} (stage {v['stage']}) {v['reason']}".rstrip())
    for c in r.get("cartan_checks", []):
        out.append(f"[{c['status']}] {c['clause']}")
    for c in r.get("mtm", []):
        out.append(f"[{c['status']}] {c['clause']}" + (f": {c['detail']}" if c["detail"] else ""))
    for row in r.get("minfd", []):
        out.append(f"[{'pass' if row['consistent'] else 'fail'}] MinFD i={row['i']}: a={row['a']} b={row['b']} "
                   f"c={row['c']} d={row['d']} e={row['e']}" + (f" ({row['warning']})" if row["warning"] else ""))
    for g in r.get("diagonal", []):
        conds = " ".join(f"{k}={v}" for k, v in sorted(g["conditions"].items()))
        out.append(f"[{'pass' if g['consistent'] else 'fail'}] {g['group']}: {conds}")
        for c in g["extras"]:
            out.append(f"    [{c['status']}] {c['clause']}" + (f": {c['detail']}" if c["detail"] else ""))
    if "pairing" in r:
        out.append(f"AR pairing: {r['pairing']['total_pairs']} pairs")
    if "sweep" in r:
        s = r["sweep"]
        out.append(f"sweep: {s['instances']} instances from {s['tau_rigid_sums']} τ-rigid sums, "
                   f"{len(s['failures'])} failures")
    if "golden" in r and isinstance(r["golden"], dict) and "mismatches" in r["golden"]:
        out.append(f"golden {r['golden']['case']}: {len(r['golden']['mismatches'])} mismatches")
    for w in r.get("warnings", []):
        out.append(f"warning: {w}")
    for f in r.get("failures", []):
        out.append(f"FAIL: {f}")
    if "ok" in r:
        out.append("OK" if r["ok"] else "FAILED")
    return "\n".join(out) + "\n"


def render_selftest(r: dict) -> str:
    out = [f"stratcartan {r['tool']['version']} selftest  seed {r['seed']}"]
    for case, sub in sorted(r["golden"].items()):
        n = len(sub["golden_mismatches"])
        out.append(f"golden {case}: {'ok' if n == 0 else f'{n} mismatches'}")
        for m in sub["golden_mismatches"][:1]:
            out.append(f"  first divergence: {m}")
        for w in sub["warnings"]:
            out.append(f"  warning: {w}")
    p = r["pairing"]
    out.append(f"AR pairing: {p['total_pairs']} pairs, "
               f"{sum(len(p[k]['failures']) for k in p if k != 'total_pairs')} failures")
    s = r["sweep"]
    out.append(f"sweep: {s['instances']} instances from {s['tau_rigid_sums']} τ-rigid sums "
               f"({s['candidates']} candidates), membership {s['membership']}, {len(s['failures'])} failures")
    for f in r["failures"]:
        out.append(f"FAIL: {f}")
    out.append("OK" if r["ok"] else "FAILED")
    return "\n".join(out) + "\n"


def render_algebra(r: dict) -> str:
    out = [f"algebra {r['input']['algebra']}: dim A = {r['dim']}, bound L = {r['bound']}, "
           f"minimal admissible L = {r['minimal_bound']}"]
    for kind in ("projectives", "injectives", "simples"):
        for v, row in r[kind].items():
            out.append(f"  {kind[0].upper()}({v}): dim {_fmt_dims(row['dims'])}  Loewy length {row['loewy_length']}")
    return "\n".join(out) + "\n"


def render_modules(r: dict) -> str:
    out = []
    for m in r["modules"]:
        lab = f"  ~ {m['iso_label']}" if m["iso_label"] else ""
        out.append(f"{m['name']}: dim {_fmt_dims(m['dims'])}  top {_fmt_dims(m['top'])}  socle "
                   f"{_fmt_dims(m['socle'])}  Loewy length {m['loewy_length']}  "
                   f"indecomposable {m['indecomposable']}{lab}")
    return "\n".join(out) + "\n"


def render_tau(r: dict) -> str:
    out = []
    for m in r["modules"]:
        out.append(f"{m['name']}: dim {_fmt_dims(m['dims'])}  τ {_fmt_dims(m['tau_dims'])}  g {_fmt_dims(m['g_vector'])}")
    out.append(f"τ-rigid: {'yes' if r['tau_rigid'] else 'no'}")
    if "witness" in r:
        w = r["witness"]
        out.append(f"  witness: dim Hom({w['hom_source']}, τ{w['tau_of']}) = {w['dim']}")
    out.append(f"τ-tilting: {'yes' if r['tau_tilting'] else 'no'}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- commands


def _emit(args, report: dict, renderer) -> None:
    text = canonical_json(report) if args.format == "json" else renderer(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_algebra(args) -> int:
    _emit(args, pl.algebra_summary(args.algebra), render_algebra)
    return 0


def _cmd_module(args) -> int:
    specs = list(args.module) + list(args.modules or [])
    if not specs:
        raise InputError("no modules given")
    _emit(args, pl.module_summary(args.algebra, specs, args.seed, args.budget), render_modules)
    return 0


def _cmd_tau(args) -> int:
    if not args.modules:
        raise InputError("no modules given (use --modules)")
    _emit(args, pl.tau_summary(args.algebra, args.modules, args.seed), render_tau)
    return 0


def _job(args, algebra, modules, golden, order=None) -> pl.JobSpec:
    if args.order and args.auto_order:
        raise InputError("--order and --auto-order are mutually exclusive")
    return pl.JobSpec(
        algebra=algebra,
        modules=tuple(modules),
        order=_parse_order(args.order) if args.order else order,
        auto_order=args.auto_order,
        checks=_parse_checks(args.checks),
        seed=args.seed,
        budget=args.budget,
        workers=args.workers,
        golden=golden,
    )


def _cmd_stratify(args) -> int:
    if not args.modules:
        raise InputError("no modules given (use --modules)")
    out = pl.run_job(_job(args, args.algebra, args.modules, args.golden))
    _emit(args, out.report, render_stratify)
    return 0 if out.ok else 1


def _cmd_verify(args) -> int:
    g = pl._golden_doc(args.case)
    out = pl.run_job(_job(args, g["algebra"], g["summands"], args.case, tuple(g.get("order") or ()) or None))
    _emit(args, out.report, render_stratify)
    return 0 if out.ok else 1


def _cmd_selftest(args) -> int:
    out = pl.selftest(args.seed, args.budget, args.workers, args.golden)
    _emit(args, out.report, render_selftest)
    return 0 if out.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomised subroutines (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search budget for bounded searches")
    common.add_argument("--out", help="write the report to PATH instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--workers", type=int, default=1, help="worker processes for the sweep")

    job = argparse.ArgumentParser(add_help=False)
    job.add_argument("--order", help="TF order as a 1-based permutation, e.g. 2,1,3")
    job.add_argument("--auto-order", action="store_true", help="search for a TF-admissible order")
    job.add_argument("--checks", help=f"comma separated subset of {','.join(CHECK_NAMES)} "
                                      f"(default {','.join(pl.DEFAULT_CHECKS)})")

    p = argparse.ArgumentParser(prog="stratcartan", description="Stratifying systems and Cartan matrices of "
                                "τ-rigid modules over bound quiver algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra documents")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    a = alg_sub.add_parser("check", parents=[common], help="build an algebra and list P(i), I(i), S(i)")
    a.add_argument("algebra", help="fixture name (ex1, ex2) or path to an algebra document")
    a.set_defaults(func=_cmd_algebra)

    mod = sub.add_parser("module", help="module documents")
    mod_sub = mod.add_subparsers(dest="action", required=True)
    m = mod_sub.add_parser("check", parents=[common], help="validate modules against the relations")
    m.add_argument("algebra")
    m.add_argument("module", nargs="*", help="module names, P(i)/I(i)/S(i), or JSON documents")
    m.add_argument("--modules", nargs="+")
    m.set_defaults(func=_cmd_module)

    t = sub.add_parser("tau", parents=[common], help="τ, g-vectors and τ-rigidity of a sum")
    t.add_argument("algebra")
    t.add_argument("--modules", nargs="+")
    t.set_defaults(func=_cmd_tau)

    s = sub.add_parser("stratify", parents=[common, job], help="run the stratification pipeline")
    s.add_argument("algebra")
    s.add_argument("--modules", nargs="+")
    s.add_argument("--golden", help="compare against a golden case (name, or PATH:case)")
    s.set_defaults(func=_cmd_stratify)

    v = sub.add_parser("verify", parents=[common, job], help="replay one golden case")
    v.add_argument("case", help="golden case name (ex1-A, ex1-M, ex2-A) or PATH:case")
    v.set_defaults(func=_cmd_verify)

    st = sub.add_parser("selftest", parents=[common], help="replay all fixtures, the pairing suite and the sweep")
    st.add_argument("--golden", help="alternative golden file")
    st.set_defaults(func=_cmd_selftest)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, AlgebraError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as e:
        print(f"input error: invalid JSON: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
