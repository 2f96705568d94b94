"""End-to-end jobs: stratify a tau-rigid module, run suites, assemble reports.

Reports are plain dicts of ints/strings/lists so that JSON serialisation with
sorted keys is byte-stable.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from . import __version__
from . import fixtures as fx
from .homological import ar_pairing, ar_translate, g_vector, is_tau_rigid, is_tau_tilting, tau_rigidity_witness
from .linalg import Matrix
from .modules import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Representation,
    absolutely_indecomposable,
    hom_dim,
    is_indecomposable,
    is_isomorphic,
    loewy_length,
    socle_dims,
    top_dims,
    validate,
)
from .quiver import BoundQuiverAlgebra, algebra_from_json, injective, minimal_bound, projective, simple
from .serialize import InputError, digest, resolve_module
from .strat import (
    NO,
    UNKNOWN,
    YES,
    StratError,
    all_tf_orders,
    build_system,
    cartan_group,
    diagonality_report,
    find_tf_order,
    is_tf_admissible,
    matrices,
    minfd_report,
    module_in_f,
    verify_main_theorem,
)

SCHEMA_VERSION = 1
ALL_CHECKS = ("mtm", "minfd", "diagonal", "pairing", "sweep")
DEFAULT_CHECKS = ("mtm", "minfd", "diagonal")
FIELD_CAVEAT = ("verdicts are computed over the prime/rational field; the source assumes an "
                "algebraically closed field")


@dataclass(frozen=True)
class JobSpec:
    algebra: str  # fixture name ("ex1", "ex2") or path to an algebra document
    modules: Tuple[str, ...] = ()
    order: Optional[Tuple[int, ...]] = None  # 1-based permutation of the declared summands
    auto_order: bool = False
    checks: Tuple[str, ...] = DEFAULT_CHECKS
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    golden: Optional[str] = None


@dataclass
class Outcome:
    report: dict
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------- inputs


def load_algebra(source: str) -> Tuple[BoundQuiverAlgebra, dict]:
    if source in fx.ALGEBRAS:
        return fx.algebra(source), fx.algebra_doc(source)
    try:
        with open(source) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read algebra document {source!r}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"algebra document is not valid JSON: {e}") from None
    return algebra_from_json(doc), doc


def load_modules(A: BoundQuiverAlgebra, specs: Sequence[str]) -> List[Tuple[str, Representation]]:
    fixtures = fx.fixtures_for(A)
    out = []
    for spec in specs:
        if spec.endswith(".json") and os.path.isfile(spec):
            try:
                with open(spec) as fh:
                    doc = json.load(fh)
            except json.JSONDecodeError as e:
                raise InputError(f"module document {spec!r} is not valid JSON: {e}") from None
            items = doc["summands"] if isinstance(doc, dict) and "summands" in doc else [doc]
            for k, item in enumerate(items):
                name = item if isinstance(item, str) else f"{os.path.basename(spec)}#{k + 1}"
                out.append((name, resolve_module(A, item, fixtures).relabel(name)))
        else:
            out.append((spec, resolve_module(A, spec, fixtures).relabel(spec)))
    for name, X in out:
        v = validate(X)
        if not v.ok:
            raise InputError(f"module {name} violates relation {v.relation} ({v.source}->{v.target})")
    return out


def _iso_label(X: Representation, fixtures: Dict[str, Representation], seed: int) -> str:
    if X.dim == 0:
        return "0"
    for name in sorted(fixtures):
        Y = fixtures[name]
        if Y.dims == X.dims:
            try:
                if is_isomorphic(X, Y, seed=seed):
                    return name
            except BudgetExceeded:
                continue
    return ""


def _labelled(m: Matrix, rows: Sequence[str], cols: Sequence[str]) -> dict:
    return {"rows": list(rows), "cols": list(cols), "entries": [[int(x) for x in r] for r in m.data]}


def _fixture_zoo(A: BoundQuiverAlgebra) -> Dict[str, Representation]:
    aliases = {k for name in fx.ALGEBRAS for k in fx._zoo(name)[2]}
    return {k: v for k, v in fx.fixtures_for(A).items() if k not in aliases}


# ---------------------------------------------------------------- stratify


def analyze(A: BoundQuiverAlgebra, named: Sequence[Tuple[str, Representation]], order: Optional[Sequence[int]],
            auto_order: bool, checks: Sequence[str], seed: int, budget: int) -> Outcome:
    """Run the full pipeline on declared summands; never raises on math failures."""
    zoo = _fixture_zoo(A)
    names = [n for n, _ in named]
    mods = [X for _, X in named]
    rep: dict = {"warnings": []}
    out = Outcome(rep)
    rep["summands"] = [
        {"name": n, "dims": list(X.dims), "g_vector": list(g_vector(X)), "tau_dims": list(ar_translate(X).dims),
         "iso_label": _iso_label(X, zoo, seed)}
        for n, X in named
    ]
    # basic: indecomposable and pairwise non-isomorphic
    for n, X in named:
        try:
            if X.dim == 0 or not is_indecomposable(X, seed=seed, budget=budget):
                out.failures.append(f"summand {n} is not indecomposable")
        except BudgetExceeded:
            rep["warnings"].append(f"indecomposability of {n} UNKNOWN (budget)")
    for (n1, X1), (n2, X2) in itertools.combinations(named, 2):
        if is_isomorphic(X1, X2, seed=seed, budget=budget):
            out.failures.append(f"summands {n1} and {n2} are isomorphic (not basic)")
    rigid = is_tau_rigid(mods)
    rep["tau_rigid"] = rigid
    if not rigid:
        i, j, d = tau_rigidity_witness(mods)
        out.failures.append(f"not tau-rigid: dim Hom({names[i]}, τ{names[j]}) = {d}")
    if out.failures:
        return out
    tilting = is_tau_tilting(mods, seed=seed)
    rep["tau_tilting"] = tilting

    if order is not None:
        if sorted(order) != list(range(1, len(mods) + 1)):
            raise InputError(f"order {list(order)} is not a permutation of 1..{len(mods)}")
        perm = [k - 1 for k in order]
        source = "explicit"
    elif auto_order:
        perm = list(find_tf_order(mods))
        source = "auto"
    else:
        perm = list(range(len(mods)))
        source = "declared"
    ordered = [mods[k] for k in perm]
    ok, bad = is_tf_admissible(ordered)
    rep["order"] = {"source": source, "permutation": [k + 1 for k in perm], "names": [names[k] for k in perm],
                    "tf_admissible": ok}
    if not ok:
        out.failures.append(f"order is not TF-admissible at position {bad} (try --auto-order)")
        return out

    try:
        S = build_system(ordered, seed=seed, budget=budget)
    except StratError as e:
        out.failures.append(f"fatal: {e}")
        return out
    t, n = S.t, A.n
    ii = [str(i + 1) for i in range(t)]
    rep["system"] = {
        "delta": [{"dims": list(D.dims), "iso_label": _iso_label(D, zoo, seed)} for D in S.delta],
        "K": [{"dims": list(K.dims), "iso_label": _iso_label(K, zoo, seed)} for K in S.K],
        "Q": [{"dims": list(Q.dims), "iso_label": _iso_label(Q, zoo, seed)} for Q in S.Q],
        "U": [{"dims": list(U.dims), "iso_label": _iso_label(U, zoo, seed)} for U in S.U],
        "U_filtration": [list(d.multiplicities) for d in S.ext_proj],
    }
    cr = matrices(S)
    verts = list(A.vertices)
    rep["matrices"] = {
        "G": _labelled(cr.G, verts, [f"g(M{i})" for i in ii]),
        "S": _labelled(cr.S, verts, [f"dim Δ({i})" for i in ii]),
        "C": _labelled(cr.C, [f"Q({i})" for i in ii], [f"Δ({i})" for i in ii]),
        "R": _labelled(cr.R, [f"U({i})-K({i})" for i in ii], [f"Δ({i})" for i in ii]),
        "GtS": _labelled(cr.GtS, [f"M{i}" for i in ii], [f"Δ({i})" for i in ii]),
    }
    rep["cartan_checks"] = [{"clause": c, "status": "pass" if ok_ else "fail"} for c, ok_ in cr.checks]
    out.failures += [f"cartan: {c}" for c, ok_ in cr.checks if not ok_]

    in_f, per = module_in_f(S, seed=seed, budget=budget)
    rep["membership"] = {
        "M_in_F": in_f,
        "summands": [{"verdict": r.verdict, "stage": r.stage, "filtration": list(r.witness), "reason": r.reason}
                     for r in per],
    }
    if in_f == UNKNOWN:
        rep["warnings"].append("M ∈ F(Δ_M) is UNKNOWN; dependent clauses report 'unverified'")
    grp = cartan_group(cr, tilting, in_f)
    rep["cartan_group"] = {
        "invariant_factors": list(grp.structure.invariant_factors),
        "torsion": list(grp.structure.torsion),
        "free_rank": grp.structure.free_rank,
        "structure": grp.structure.describe(),
        "order": grp.order,
        "diagonal_product": grp.diagonal_product,
        "coker_S": None if grp.coker_S is None else grp.coker_S.describe(),
        "coker_S_note": grp.coker_S_note,
    }
    if not grp.consistent:
        out.failures.append("cartan group order differs from the diagonal product")
    if grp.coker_S is not None and grp.coker_S.describe() != grp.structure.describe():
        out.failures.append("CoKer(S^M) differs from CoKer(C) although G^M is unimodular")

    if "mtm" in checks:
        clauses = verify_main_theorem(S, cr, in_f)
        rep["mtm"] = [{"clause": c.name, "status": c.status, "detail": c.detail} for c in clauses]
        out.failures += [f"mtm: {c.name}" for c in clauses if c.status == "fail"]
    if "minfd" in checks:
        rows = [minfd_report(S, i, seed, budget, membership=per[i]) for i in range(t)]
        rep["minfd"] = [{"i": r.index, "a": r.a, "b": r.b, "c": r.c, "d": r.d, "e": r.e,
                         "consistent": r.consistent, "warning": r.warning} for r in rows]
        out.failures += [f"minfd: inconsistent at i={r.index}" for r in rows if not r.consistent]
    if "diagonal" in checks:
        groups = diagonality_report(S, cr, in_f, tilting, seed, budget)
        rep["diagonal"] = [
            {"group": g.name, "conditions": {k: v for k, v in g.values}, "consistent": g.consistent,
             "extras": [{"clause": c.name, "status": c.status, "detail": c.detail} for c in g.extras]}
            for g in groups
        ]
        out.failures += [f"diagonal: equivalence mismatch in {g.name}" for g in groups if not g.consistent]

    caveat = not all(absolutely_indecomposable(X) for X in list(S.modules) + list(S.delta) + list(S.Q))
    rep["field_caveat"] = caveat
    if caveat:
        rep["warnings"].append("field caveat: " + FIELD_CAVEAT)
    return out


# ---------------------------------------------------------------- golden


def compare_golden(case: str, g: dict, rep: dict) -> List[str]:
    """Cell-by-cell comparison; returns human-readable mismatches."""
    out = []
    mats = rep.get("matrices")
    if mats is None:
        return [f"{case}: no matrices computed"]
    for key in ("C", "G", "S", "R"):
        got, exp = mats[key]["entries"], g[key]
        if len(got) != len(exp) or any(len(a) != len(b) for a, b in zip(got, exp)):
            out.append(f"{case}: {key} has shape mismatch")
            continue
        for i, (ra, rb) in enumerate(zip(exp, got)):
            for j, (a, b) in enumerate(zip(ra, rb)):
                if a != b:
                    out.append(f"{case}: {key}({i + 1},{j + 1}) expected {a}, got {b}")
    sysrep = rep["system"]
    for key in ("delta", "Q"):
        for i, (exp, got) in enumerate(zip(g[key], sysrep[key])):
            if exp != got["iso_label"]:
                out.append(f"{case}: {key}({i + 1}) expected {exp}, got {got['iso_label'] or got['dims']}")
    for key in ("K", "U"):
        for i, (exp, got) in enumerate(zip(g[key], sysrep[key])):
            if exp != got["dims"]:
                out.append(f"{case}: dim {key}({i + 1}) expected {exp}, got {got['dims']}")
    cg = rep["cartan_group"]
    if cg["invariant_factors"] != g["invariant_factors"]:
        out.append(f"{case}: invariant factors expected {g['invariant_factors']}, got {cg['invariant_factors']}")
    if cg["order"] != g["group_order"]:
        out.append(f"{case}: group order expected {g['group_order']}, got {cg['order']}")
    return out


def printed_matrix_note(g: dict, rep: dict) -> Optional[str]:
    """Flag a printed G that breaks C = GᵗS + R against the printed C, S, R."""
    if "G_printed" not in g:
        return None
    Gp, S, C, R = g["G_printed"], g["S"], g["C"], g["R"]
    t = len(C)
    for i in range(t):
        for j in range(t):
            val = sum(Gp[v][i] * S[v][j] for v in range(len(S))) + R[i][j]
            if val != C[i][j]:
                return (f"printed G^M is inconsistent with C = GᵗS + R: entry ({i + 1},{j + 1}) gives {val}, "
                        f"printed C has {C[i][j]}; derived g-vectors used instead")
    return None


# ---------------------------------------------------------------- suites


def pairing_suite(names: Sequence[str] = fx.ALGEBRAS) -> Tuple[dict, List[str]]:
    summary, failures = {}, []
    total = 0
    for name in names:
        zoo = fx.zoo(name)
        keys = sorted(zoo)
        bad = []
        for a in keys:
            for b in keys:
                r = ar_pairing(zoo[a], zoo[b])
                total += 1
                if not r.holds:
                    bad.append({"M": a, "N": b, "lhs": r.lhs, "hom": r.hom, "hom_tau": r.hom_tau})
        summary[name] = {"modules": len(keys), "pairs": len(keys) ** 2, "failures": bad}
        failures += [f"pairing: {name} {x['M']} vs {x['N']}" for x in bad]
    summary["total_pairs"] = total
    return summary, failures


def _instance(S_mods, names, seed, budget) -> dict:
    rec = {"summands": list(names), "failures": []}
    fails = rec["failures"]
    try:
        S = build_system(S_mods, seed=seed, budget=budget)
    except StratError as e:
        fails.append(f"fatal: {e}")
        return rec
    cr = matrices(S)
    fails += [c for c, ok in cr.checks if not ok]
    t = S.t
    for i in range(t):
        for j in range(i + 1):
            if hom_dim(S.U[i], S.delta[j]) or hom_dim(S.K[i], S.delta[j]):
                fails.append(f"Lemma vanishing fails at ({i + 1},{j + 1})")
    in_f, per = module_in_f(S, seed=seed, budget=budget)
    rec["M_in_F"] = in_f
    rec["R_zero"] = cr.R.is_zero()
    rec["C_diagonal"] = all(not cr.C[i, j] for i in range(t) for j in range(t) if i != j)
    if in_f == YES and not cr.R.is_zero():
        fails.append("R != 0 although M ∈ F(Δ_M)")
    for c in verify_main_theorem(S, cr, in_f):
        if c.status == "fail":
            fails.append(f"mtm: {c.name}")
    for r in (minfd_report(S, i, seed, budget, membership=per[i]) for i in range(t)):
        if not r.consistent:
            fails.append(f"minfd inconsistent at i={r.index}")
    tilting = is_tau_tilting(S_mods, seed=seed)
    for g in diagonality_report(S, cr, in_f, tilting, seed, budget):
        if not g.consistent:
            fails.append(f"equivalence mismatch: {g.name}")
    return rec


def _sweep_task(args):
    alg, names, seed, budget = args
    zoo = fx.zoo(alg)
    mods = [zoo[n] for n in names]
    if not is_tau_rigid(mods):
        return None
    out = []
    for perm in all_tf_orders(mods):
        out.append(_instance([mods[k] for k in perm], [names[k] for k in perm], seed, budget))
    return out


def sweep(alg: str = "ex1", seed: int = 0, budget: int = DEFAULT_BUDGET, workers: int = 1) -> Tuple[dict, List[str]]:
    """Every basic tau-rigid sum of the zoo, in every TF-admissible order."""
    keys = sorted(fx.zoo(alg))
    tasks = [(alg, tuple(c), seed, budget)
             for r in range(1, len(keys) + 1) for c in itertools.combinations(keys, r)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_sweep_task, tasks, chunksize=8))
    else:
        results = [_sweep_task(t) for t in tasks]
    instances = [rec for res in results if res for rec in res]
    rigid = sum(1 for res in results if res is not None)
    failures = [f"sweep {'+'.join(r['summands'])}: {f}" for r in instances for f in r["failures"]]
    verdicts = {v: sum(1 for r in instances if r.get("M_in_F") == v) for v in (YES, NO, UNKNOWN)}
    summary = {
        "algebra": alg,
        "candidates": len(tasks),
        "tau_rigid_sums": rigid,
        "instances": len(instances),
        "membership": verdicts,
        "R_nonzero": sum(1 for r in instances if r.get("R_zero") is False),
        "C_diagonal": sum(1 for r in instances if r.get("C_diagonal")),
        "failures": failures,
        "records": instances,
    }
    return summary, failures


# ---------------------------------------------------------------- top level


def _header(seed: int, budget: int) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool": {"name": "stratcartan", "version": __version__,
                                                       "sympy": sympy.__version__},
            "seed": seed, "budget": budget}


def run_job(job: JobSpec) -> Outcome:
    A, doc = load_algebra(job.algebra)
    named = load_modules(A, job.modules)
    if not named:
        raise InputError("no summands given")
    rep = _header(job.seed, job.budget)
    rep["input"] = {
        "algebra": job.algebra if job.algebra in fx.ALGEBRAS else os.path.basename(job.algebra),
        "algebra_digest": digest(doc),
        "modules": [{"name": n, "digest": digest({"dims": list(X.dims),
                                                   "maps": {k: [[str(x) for x in r] for r in m.data]
                                                            for k, m in sorted(X.maps.items())}})}
                    for n, X in named],
        "checks": sorted(job.checks),
    }
    rep["algebra"] = {"dim": A.dimension, "vertices": list(A.vertices), "bound": A.bound}
    res = analyze(A, named, job.order, job.auto_order, job.checks, job.seed, job.budget)
    rep.update(res.report)
    failures = list(res.failures)
    if job.golden:
        g = _golden_doc(job.golden)
        case = g.get("__case__")
        mism = compare_golden(case, g, rep)
        rep["golden"] = {"case": case, "mismatches": mism}
        failures += mism
        note = printed_matrix_note(g, rep)
        if note:
            rep["warnings"].append(note)
        rep["warnings"] += list(g.get("notes", []))
    if "pairing" in job.checks:
        names = [n for n in fx.ALGEBRAS if fx.algebra(n).describe() == A.describe()]
        summ, f = pairing_suite(names)
        rep["pairing"] = summ
        failures += f
    if "sweep" in job.checks:
        names = [n for n in fx.ALGEBRAS if fx.algebra(n).describe() == A.describe()]
        if names:
            summ, f = sweep(names[0], job.seed, job.budget, job.workers)
            rep["sweep"] = summ
            failures += f
        else:
            rep["warnings"].append("sweep skipped: no bundled module zoo for this algebra")
    rep["failures"] = failures
    rep["ok"] = not failures
    return Outcome(rep, failures)


def _golden_doc(ref: str) -> dict:
    """A golden case by name ("ex1-A"), or "PATH:case" for a custom golden file."""
    if ":" in ref and not ref.startswith(tuple(fx.golden())):
        path, case = ref.rsplit(":", 1)
        with open(path) as fh:
            gold = json.load(fh)
        if case not in gold:
            raise InputError(f"golden file {path!r} has no case {case!r}")
        doc = gold[case]
    else:
        case = ref
        try:
            doc = fx.golden()[case]
        except KeyError:
            raise InputError(f"unknown golden case {ref!r}") from None
    return dict(doc, __case__=case)


def selftest(seed: int = 0, budget: int = DEFAULT_BUDGET, workers: int = 1,
             golden_path: Optional[str] = None) -> Outcome:
    """Replay the golden cases, the AR pairing suite and the Example 1 sweep."""
    rep = _header(seed, budget)
    failures = []
    gold = fx.golden()
    if golden_path:
        with open(golden_path) as fh:
            gold = json.load(fh)
    cases = {}
    for case in sorted(gold):
        g = dict(gold[case], __case__=case)
        A = fx.algebra(g["algebra"])
        mods = fx.named_modules(g["algebra"])
        named = [(s, mods[s]) for s in g["summands"]]
        res = analyze(A, named, g.get("order"), False, DEFAULT_CHECKS, seed, budget)
        sub = res.report
        mism = compare_golden(case, g, sub)
        note = printed_matrix_note(g, sub)
        if note:
            sub["warnings"].append(note)
        sub["warnings"] += list(g.get("notes", []))
        sub["golden_mismatches"] = mism
        cases[case] = sub
        failures += res.failures + mism
    rep["golden"] = cases
    summ, f = pairing_suite()
    rep["pairing"] = summ
    failures += f
    summ, f = sweep("ex1", seed, budget, workers)
    rep["sweep"] = summ
    failures += f
    rep["failures"] = failures
    rep["ok"] = not failures
    return Outcome(rep, failures)


# ---------------------------------------------------------------- small commands


def _module_row(X: Representation) -> dict:
    return {"dims": list(X.dims), "dim": X.dim, "loewy_length": loewy_length(X)}


def algebra_summary(source: str) -> dict:
    A, doc = load_algebra(source)
    rep = _header(0, DEFAULT_BUDGET)
    L = minimal_bound(A.quiver, A.relations, A.ring, stop=A.bound)
    rep.update({
        "input": {"algebra": source if source in fx.ALGEBRAS else os.path.basename(source),
                  "algebra_digest": digest(doc)},
        "dim": A.dimension,
        "bound": A.bound,
        "minimal_bound": L,
        "vertices": list(A.vertices),
        "projectives": {v: _module_row(projective(A, v)) for v in A.vertices},
        "injectives": {v: _module_row(injective(A, v)) for v in A.vertices},
        "simples": {v: _module_row(simple(A, v)) for v in A.vertices},
    })
    return rep


def module_summary(source: str, specs: Sequence[str], seed: int = 0, budget: int = DEFAULT_BUDGET) -> dict:
    A, _ = load_algebra(source)
    zoo = _fixture_zoo(A)
    rows = []
    for name, X in load_modules(A, specs):
        row = dict(_module_row(X), name=name, valid=True, top=list(top_dims(X)), socle=list(socle_dims(X)),
                   iso_label=_iso_label(X, zoo, seed))
        try:
            row["indecomposable"] = YES if is_indecomposable(X, seed=seed, budget=budget) else NO
        except BudgetExceeded:
            row["indecomposable"] = UNKNOWN
        rows.append(row)
    rep = _header(seed, budget)
    rep["modules"] = rows
    return rep


def tau_summary(source: str, specs: Sequence[str], seed: int = 0) -> dict:
    A, _ = load_algebra(source)
    named = load_modules(A, specs)
    mods = [X for _, X in named]
    rep = _header(seed, DEFAULT_BUDGET)
    rep["modules"] = [{"name": n, "dims": list(X.dims), "tau_dims": list(ar_translate(X).dims),
                       "g_vector": list(g_vector(X))} for n, X in named]
    w = tau_rigidity_witness(mods)
    rep["tau_rigid"] = w is None
    rep["tau_tilting"] = w is None and is_tau_tilting(mods, seed=seed)
    if w is not None:
        i, j, d = w
        rep["witness"] = {"hom_source": named[i][0], "tau_of": named[j][0], "dim": d}
    return rep
