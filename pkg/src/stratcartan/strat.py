"""Stratifying systems induced by tau-rigid modules and their Cartan matrices."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .homological import ar_translate, ext1_dim, g_vector, universal_extension
from .linalg import ZZ, CokernelStructure, Matrix, block_diag, cokernel_structure, nullspace_vectors, rank, span
from .modules import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Morphism,
    Representation,
    ShortExactSequence,
    canonical_sequence,
    cokernel,
    combine,
    direct_sum,
    find_invertible_combination,
    hom_basis,
    hom_dim,
    identity,
    in_fac,
    is_indecomposable,
    is_isomorphic,
    kernel,
    power,
    trace_submodule,
)
from .quiver import projective

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"


class StratError(RuntimeError):
    """An internal consistency check failed (a theorem would be violated)."""


# ---------------------------------------------------------------- TF orders


def _sum(mods: Sequence[Representation], algebra) -> Representation:
    return direct_sum(list(mods), algebra=algebra)[0]


def is_tf_admissible(mods: Sequence[Representation]) -> Tuple[bool, Optional[int]]:
    """(ok, first violating 1-based position) for M_i ∉ Fac(⊕_{j>i} M_j)."""
    if not mods:
        return True, None
    A = mods[0].algebra
    for i in range(len(mods) - 1):
        if in_fac(_sum(mods[i + 1:], A), mods[i]):
            return False, i + 1
    return True, None


def find_tf_order(mods: Sequence[Representation]) -> Tuple[int, ...]:
    """Greedy TF order: repeatedly take the lowest-index summand outside Fac of the rest."""
    if not mods:
        return ()
    A = mods[0].algebra
    remaining = list(range(len(mods)))
    order = []
    while remaining:
        for k in remaining:
            rest = [mods[j] for j in remaining if j != k]
            if not in_fac(_sum(rest, A), mods[k]):
                order.append(k)
                remaining.remove(k)
                break
        else:
            raise StratError("no TF order found: summands are not basic and tau-rigid")
    return tuple(order)


def all_tf_orders(mods: Sequence[Representation]) -> List[Tuple[int, ...]]:
    out = []
    for perm in itertools.permutations(range(len(mods))):
        if is_tf_admissible([mods[k] for k in perm])[0]:
            out.append(perm)
    return out


# ---------------------------------------------------------------- the system


@dataclass(frozen=True)
class ExtProjectiveData:
    Q: Representation
    U: Representation
    eta: ShortExactSequence
    multiplicities: Tuple[int, ...]  # [U(i) : Δ(j)] for j = 1..t (by construction)


@dataclass(frozen=True)
class StratSystem:
    modules: Tuple[Representation, ...]  # M_1..M_t in TF order
    delta: Tuple[Representation, ...]
    eps: Tuple[ShortExactSequence, ...]
    ext_proj: Tuple[ExtProjectiveData, ...] = ()

    @property
    def t(self) -> int:
        return len(self.modules)

    @property
    def algebra(self):
        return self.modules[0].algebra

    @property
    def K(self) -> Tuple[Representation, ...]:
        return tuple(e.kernel for e in self.eps)

    @property
    def Q(self) -> Tuple[Representation, ...]:
        return tuple(d.Q for d in self.ext_proj)

    @property
    def U(self) -> Tuple[Representation, ...]:
        return tuple(d.U for d in self.ext_proj)

    @property
    def eta(self) -> Tuple[ShortExactSequence, ...]:
        return tuple(d.eta for d in self.ext_proj)


def standard_modules(mods: Sequence[Representation]) -> StratSystem:
    """Δ(i) = f_{i+1}(M_i) from the canonical sequence of M_i for Fac(⊕_{j>i} M_j)."""
    ok, bad = is_tf_admissible(mods)
    if not ok:
        raise ValueError(f"order is not TF-admissible at position {bad}")
    A = mods[0].algebra
    eps = []
    for i, M in enumerate(mods):
        X = _sum(mods[i + 1:], A)
        eps.append(canonical_sequence(X, M))
    delta = tuple(e.quotient.relabel(f"Δ({i + 1})") for i, e in enumerate(eps))
    eps = tuple(ShortExactSequence(e.kernel, e.inclusion, e.middle, d, _relabel_target(e.projection, d))
                for e, d in zip(eps, delta))
    S = StratSystem(tuple(mods), delta, eps)
    verdict = check_stratifying_system(delta)
    if not verdict.ok:
        raise StratError(f"standard modules violate the stratifying axioms: {verdict.failures}")
    return S


def _relabel_target(f: Morphism, Y: Representation) -> Morphism:
    return Morphism(f.source, Y, f.comps)


def _relabel_source(f: Morphism, X: Representation) -> Morphism:
    return Morphism(X, f.target, f.comps)


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    failures: Tuple[Tuple[str, int, int, int], ...]  # (axiom, i, j, offending dim)


def check_stratifying_system(delta: Sequence[Representation]) -> AxiomVerdict:
    """Hom(Δ(j), Δ(i)) = 0 for j > i and Ext^1(Δ(i), Δ(j)) = 0 for i >= j."""
    fails = []
    t = len(delta)
    for i in range(t):
        for j in range(t):
            if j > i:
                d = hom_dim(delta[j], delta[i])
                if d:
                    fails.append(("hom", j + 1, i + 1, d))
            if i >= j:
                d = ext1_dim(delta[i], delta[j])
                if d:
                    fails.append(("ext", i + 1, j + 1, d))
    return AxiomVerdict(not fails, tuple(fails))


def ext_projective_cover(S: StratSystem, i: int, seed: int = 0, budget: int = DEFAULT_BUDGET) -> ExtProjectiveData:
    """Universal-extension tower over Δ(i) by Δ(i+1), ..., Δ(t) (0-based i)."""
    delta = S.delta
    t = S.t
    E = delta[i]
    to_delta = identity(E)
    mult = [0] * t
    for j in range(i + 1, t):
        ses, e = universal_extension(E, delta[j])
        if e == 0:
            continue
        mult[j] = e
        to_delta = to_delta @ ses.projection
        E = ses.middle
    E = E.relabel(f"Q({i + 1})")
    to_delta = _relabel_source(to_delta, E)
    for l in range(t):
        if ext1_dim(E, delta[l]):
            raise StratError(f"tower verification failed: Ext^1(Q({i + 1}), Δ({l + 1})) != 0")
    try:
        indec = is_indecomposable(E, seed=seed, budget=budget)
    except BudgetExceeded:
        indec = True  # cannot refute; reported upward as a caveat
    if not indec:
        raise StratError(f"tower verification failed: Q({i + 1}) decomposes")
    U, inc = kernel(to_delta, label=f"U({i + 1})")
    eta = ShortExactSequence(U, inc, E, delta[i], to_delta)
    return ExtProjectiveData(E, U, eta, tuple(mult))


def build_system(mods: Sequence[Representation], seed: int = 0, budget: int = DEFAULT_BUDGET) -> StratSystem:
    S = standard_modules(mods)
    data = tuple(ext_projective_cover(S, i, seed, budget) for i in range(S.t))
    return StratSystem(S.modules, S.delta, S.eps, data)


# ---------------------------------------------------------------- matrices


def _intmat(rows: Sequence[Sequence[int]], nrows: int, ncols: int) -> Matrix:
    return Matrix(ZZ, nrows, ncols, [list(r) for r in rows])


@dataclass(frozen=True)
class CartanReport:
    G: Matrix  # n x t, columns g-vectors of M_i
    S: Matrix  # n x t, columns dim Δ(i)
    R: Matrix  # t x t
    C: Matrix  # t x t, C_ij = dim Hom(Q(i), Δ(j))
    GtS: Matrix  # t x t, Gᵗ S
    HomMD: Matrix  # t x t, dim Hom(M_i, Δ(j))
    end_dims: Tuple[int, ...]
    checks: Tuple[Tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)


def _is_upper(m: Matrix, strict: bool = False) -> bool:
    return all(not m[i, j] for i in range(m.rows) for j in range(m.cols) if (j < i or (strict and i == j)))


def _is_diag(m: Matrix) -> bool:
    return all(not m[i, j] for i in range(m.rows) for j in range(m.cols) if i != j)


def _diag_product(m: Matrix) -> int:
    out = 1
    for i in range(min(m.rows, m.cols)):
        out *= m[i, i]
    return out


def matrices(S: StratSystem) -> CartanReport:
    A = S.algebra
    n, t = A.n, S.t
    G = _intmat([[g_vector(M)[v] for M in S.modules] for v in range(n)], n, t)
    Sm = _intmat([[D.dims[v] for D in S.delta] for v in range(n)], n, t)
    C = _intmat([[hom_dim(S.Q[i], S.delta[j]) for j in range(t)] for i in range(t)], t, t)
    R = _intmat([[hom_dim(S.U[i], S.delta[j]) - hom_dim(S.K[i], S.delta[j]) for j in range(t)] for i in range(t)], t, t)
    GtS = G.T @ Sm
    HomMD = _intmat([[hom_dim(S.modules[i], S.delta[j]) for j in range(t)] for i in range(t)], t, t)
    d = tuple(hom_dim(D, D) for D in S.delta)
    coker = cokernel_structure(C)
    checks = (
        ("C upper triangular", _is_upper(C)),
        ("C_ii = dim End Δ(i)", all(C[i, i] == d[i] for i in range(t))),
        ("C = GᵗS + R", C == GtS + R),
        ("R strictly upper triangular", _is_upper(R, strict=True)),
        ("GᵗS upper triangular", _is_upper(GtS)),
        ("(GᵗS)_ij = dim Hom(M_i, Δ(j))", GtS == HomMD),
        ("|CoKer C| = ∏ C_ii", coker.free_rank == 0 and coker.order == _diag_product(C)),
        ("|CoKer C| = ∏ (GᵗS)_ii", coker.free_rank == 0 and coker.order == _diag_product(GtS)),
    )
    return CartanReport(G, Sm, R, C, GtS, HomMD, d, checks)


@dataclass(frozen=True)
class CartanGroup:
    structure: CokernelStructure
    order: int
    diagonal_product: int
    coker_S: Optional[CokernelStructure] = None
    coker_S_note: str = ""

    @property
    def consistent(self) -> bool:
        return self.order == self.diagonal_product


def cartan_group(rep: CartanReport, tau_tilting: bool = False, in_f: Optional[str] = None) -> CartanGroup:
    cs = cokernel_structure(rep.C)
    order = cs.order if not cs.free_rank else 0
    cokS, note = None, ""
    if tau_tilting and in_f == YES:
        cokS = cokernel_structure(rep.S)
        note = "G_B ≅ CoKer(S^M) (τ-tilting, M ∈ F(Δ_M))"
    elif tau_tilting:
        note = "CoKer(S^M) not reported: M ∈ F(Δ_M) " + ("fails" if in_f == NO else "unverified")
    else:
        note = "CoKer(S^M) not reported: M is not τ-tilting"
    return CartanGroup(cs, order, _diag_product(rep.C), cokS, note)


# ---------------------------------------------------------------- F(Δ) membership


@dataclass(frozen=True)
class FilterResult:
    verdict: str
    stage: int
    witness: Tuple[int, ...] = ()  # Δ indices (1-based) from the top layer down
    reason: str = ""


def _feasible(dims: Sequence[int], delta_dims: Sequence[Sequence[int]]) -> bool:
    n = len(dims)

    def rec(k, rest):
        if k == len(delta_dims):
            return not any(rest)
        d = delta_dims[k]
        m = 0
        while all(rest[v] - m * d[v] >= 0 for v in range(n)):
            if rec(k + 1, [rest[v] - m * d[v] for v in range(n)]):
                return True
            if not any(d):
                break
            m += 1
        return False

    return rec(0, list(dims))


def _layer_test(X: Representation, S: StratSystem, seed: int, budget: int):
    A = S.algebra
    t = S.t
    Y = X
    witness = []
    for k in range(t):
        top_gen = _sum(S.modules[k + 1:], A)
        sub, inc = trace_submodule(top_gen, Y)
        layer_dims = [a - b for a, b in zip(Y.dims, sub.dims)]
        D = S.delta[k]
        if any(layer_dims):
            m = None
            for v in range(A.n):
                if D.dims[v]:
                    m = layer_dims[v] // D.dims[v]
                    break
            if m is None or [m * x for x in D.dims] != layer_dims:
                return None
            L, _ = cokernel(inc)
            try:
                if not is_isomorphic(L, power(D, m), seed=seed, budget=budget):
                    return None
            except BudgetExceeded:
                return None
            witness.extend([k + 1] * m)
        Y = sub
    return tuple(witness) if Y.dim == 0 else None


class _Exhausted(Exception):
    pass


def _surjection(Y: Representation, D: Representation, seed: int, budget: int):
    """('found', f) | ('none', None) | ('unknown', None)."""
    basis = hom_basis(Y, D)
    if not basis:
        return "none", None
    ring = Y.ring
    rng = random.Random(seed)
    nv = len(Y.dims)
    good = [D.dims[v] == 0 for v in range(nv)]
    for _ in range(12):
        f = combine(basis, [ring.coerce(rng.randint(-60, 60)) for _ in basis], Y, D)
        ok = [D.dims[v] == 0 or rank(f.comps[v]) == D.dims[v] for v in range(nv)]
        if all(ok):
            return "found", f
        good = [a or b for a, b in zip(good, ok)]
    h = len(basis)
    for v in range(nv):
        if good[v]:
            continue
        r = D.dims[v]
        if ring.characteristic and r >= ring.characteristic:
            return "unknown", None
        if (r + 1) ** h > budget:
            return "unknown", None
        hit = False
        for pt in itertools.product(range(r + 1), repeat=h):
            f = combine(basis, [ring.coerce(c) for c in pt], Y, D)
            if rank(f.comps[v]) == r:
                hit = True
                break
        if not hit:
            return "none", None
    return "unknown", None


def _kernel_unique(Y: Representation, D: Representation, f: Morphism) -> bool:
    vecs = [(g @ f).vector() for g in hom_basis(D, D)]
    n = len(f.vector())
    return span(Y.ring, vecs, n).dim == hom_dim(Y, D)


def in_filtration_category(X: Representation, S: StratSystem, seed: int = 0,
                           budget: int = DEFAULT_BUDGET) -> FilterResult:
    """Three-stage YES/NO/UNKNOWN decision of X ∈ F(Δ)."""
    ddims = [D.dims for D in S.delta]
    if X.dim == 0:
        return FilterResult(YES, 1, (), "zero module")
    if not _feasible(X.dims, ddims):
        return FilterResult(NO, 1, (), "dimension vector is not a nonnegative combination of dim Δ(i)")
    w = _layer_test(X, S, seed, budget)
    if w is not None:
        return FilterResult(YES, 2, w, "trace layers are sums of standard modules")
    nodes = [0]
    memo: Dict[Representation, Tuple[str, tuple]] = {}

    def search(Y):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Exhausted
        if Y.dim == 0:
            return YES, ()
        if not _feasible(Y.dims, ddims):
            return NO, ()
        if Y in memo:
            return memo[Y]
        unknown = False
        for i, D in enumerate(S.delta):
            if any(d > y for d, y in zip(D.dims, Y.dims)):
                continue
            status, f = _surjection(Y, D, seed, budget)
            if status == "none":
                continue
            if status == "unknown":
                unknown = True
                continue
            K, _ = kernel(f)
            r, wit = search(K)
            if r == YES:
                memo[Y] = (YES, (i + 1,) + wit)
                return memo[Y]
            if r == UNKNOWN or not _kernel_unique(Y, D, f):
                unknown = True
        memo[Y] = (UNKNOWN if unknown else NO, ())
        return memo[Y]

    try:
        r, wit = search(X)
    except _Exhausted:
        return FilterResult(UNKNOWN, 3, (), f"search budget of {budget} nodes exhausted")
    reason = {YES: "explicit filtration found by search", NO: "every branch refuted",
              UNKNOWN: "search inconclusive (non-unique kernels or undecided surjections)"}[r]
    return FilterResult(r, 3, wit, reason)


def module_in_f(S: StratSystem, seed: int = 0, budget: int = DEFAULT_BUDGET) -> Tuple[str, Tuple[FilterResult, ...]]:
    """M ∈ F(Δ_M), decided summand by summand (F(Δ) is closed under sums and summands)."""
    res = tuple(in_filtration_category(M, S, seed, budget) for M in S.modules)
    vs = [r.verdict for r in res]
    if NO in vs:
        return NO, res
    if UNKNOWN in vs:
        return UNKNOWN, res
    return YES, res


# ---------------------------------------------------------------- verifiers


@dataclass(frozen=True)
class Clause:
    name: str
    status: str  # "pass" | "fail" | "unverified" | "info"
    detail: str = ""


def _clause(name, ok, detail=""):
    return Clause(name, "pass" if ok else "fail", detail)


def verify_main_theorem(S: StratSystem, rep: CartanReport, in_f: str) -> Tuple[Clause, ...]:
    t = S.t
    out = []
    out.append(_clause("MTM(a) GᵗS upper triangular", _is_upper(rep.GtS)))
    out.append(_clause("MTM(a) (GᵗS)_ij = dim Hom(M_i, Δ(j))", rep.GtS == rep.HomMD,
                       f"GtS={rep.GtS.tolist()} Hom={rep.HomMD.tolist()}"))
    out.append(_clause("MTM(b) R upper triangular, zero diagonal", _is_upper(rep.R, strict=True),
                       f"R={rep.R.tolist()}"))
    r_zero = rep.R.is_zero()
    same = all(rep.HomMD[i, j] == rep.C[i, j] for i in range(t) for j in range(i + 1, t))
    out.append(_clause("MTM(b) R = 0 iff Hom(M_i,Δ(j)) ≅ Hom(Q(i),Δ(j)) for i<j", r_zero == same,
                       f"R=0:{r_zero} dims agree:{same}"))
    out.append(_clause("MTM(c) C = GᵗS + R", rep.C == rep.GtS + rep.R, f"C={rep.C.tolist()}"))
    if in_f == YES:
        out.append(_clause("MTM(d) R = 0 since M ∈ F(Δ_M)", r_zero))
    elif in_f == NO:
        out.append(Clause("MTM(d) R = 0 if M ∈ F(Δ_M)", "pass", f"hypothesis false; R=0:{r_zero}"))
    else:
        out.append(Clause("MTM(d) R = 0 if M ∈ F(Δ_M)", "unverified", "membership UNKNOWN"))
    cs = cokernel_structure(rep.C)
    out.append(_clause("MTM(e) |G_Δ| = ∏ (GᵗS)_ii", cs.free_rank == 0 and cs.order == _diag_product(rep.GtS),
                       f"order={cs.order} product={_diag_product(rep.GtS)}"))
    # Lemma (a), (b), (d)
    la = all(hom_dim(S.U[i], S.delta[j]) == 0 and hom_dim(S.K[i], S.delta[j]) == 0
             for i in range(t) for j in range(t) if i >= j)
    out.append(_clause("Lemma(a) Hom(U(i),Δ(j)) = Hom(K(i),Δ(j)) = 0 for i ≥ j", la))
    lb = all(hom_dim(S.modules[i], S.delta[i]) == rep.C[i, i] == rep.end_dims[i] for i in range(t))
    out.append(_clause("Lemma(b) dim Hom(M_i,Δ(i)) = dim Hom(Q(i),Δ(i)) = dim End Δ(i)", lb))
    taus = [ar_translate(M) for M in S.modules]
    ld = all(hom_dim(S.delta[j], taus[i]) == 0 for i in range(t) for j in range(t))
    ld_ext = all(ext1_dim(S.modules[i], S.delta[j]) == 0 for i in range(t) for j in range(t))
    out.append(_clause("Lemma(d) Hom(Δ(j), τM_i) = 0", ld))
    out.append(_clause("Lemma(d) Ext^1(M_i, Δ(j)) = 0", ld_ext))
    return tuple(out)


@dataclass(frozen=True)
class MinFDReport:
    index: int  # 1-based
    a: str  # YES / NO / UNKNOWN
    b: bool
    c: bool
    d: bool
    e: bool
    consistent: bool
    warning: str = ""


def sequences_isomorphic(eta: ShortExactSequence, eps: ShortExactSequence, seed: int = 0,
                         budget: int = DEFAULT_BUDGET) -> bool:
    """Search (β, γ) with β: Q -> M, γ ∈ End Δ invertible and π∘β = γ∘β_η.

    The kernel component is then induced and invertible by the five lemma.
    """
    Q, M, D = eta.middle, eps.middle, eta.quotient
    if Q.dims != M.dims:
        return False
    B = hom_basis(Q, M)
    Gm = hom_basis(D, D)
    if not B:
        return Q.dim == 0
    ring = Q.ring
    cols = [(eps.projection @ b).vector() for b in B] + [(g @ eta.projection).scale(-1).vector() for g in Gm]
    nrows = len(cols[0])
    rows = [[c[r] for c in cols] for r in range(nrows)]
    sols = nullspace_vectors(ring, rows, len(cols))
    if not sols:
        return False
    src, _, _ = direct_sum([Q, D])
    tgt, _, _ = direct_sum([M, D])
    basis = []
    for s in sols:
        beta = combine(B, s[:len(B)], Q, M)
        gamma = combine(Gm, s[len(B):], D, D)
        comps = []
        for v in range(len(Q.dims)):
            comps.append(block_diag(ring, [beta.comps[v], gamma.comps[v]]))
        basis.append(Morphism(src, tgt, tuple(comps)))
    ok, _ = find_invertible_combination(basis, seed=seed, budget=budget)
    return ok


def minfd_report(S: StratSystem, i: int, seed: int = 0, budget: int = DEFAULT_BUDGET,
                 membership: Optional[FilterResult] = None) -> MinFDReport:
    M, Q, K, U = S.modules[i], S.Q[i], S.K[i], S.U[i]
    fa = membership if membership is not None else in_filtration_category(M, S, seed, budget)
    b = sequences_isomorphic(S.eta[i], S.eps[i], seed, budget)
    c = is_isomorphic(Q, M, seed=seed, budget=budget)
    d = ext1_dim(Q, K) == 0
    e = is_isomorphic(K, U, seed=seed, budget=budget)
    rest_agree = b == c == d == e
    warning = ""
    if fa.verdict == UNKNOWN:
        consistent = rest_agree
        warning = "(a) UNKNOWN; (b)-(e) agree" if rest_agree else ""
    else:
        consistent = rest_agree and (fa.verdict == YES) == b
    return MinFDReport(i + 1, fa.verdict, b, c, d, e, consistent, warning)


@dataclass(frozen=True)
class EquivalenceGroup:
    name: str
    values: Tuple[Tuple[str, Optional[bool]], ...]
    extras: Tuple[Clause, ...] = ()

    @property
    def consistent(self) -> bool:
        vals = {v for _, v in self.values if v is not None}
        return len(vals) <= 1 and all(c.status != "fail" for c in self.extras)


def diagonality_report(S: StratSystem, rep: CartanReport, in_f: str, tau_tilting: bool,
                       seed: int = 0, budget: int = DEFAULT_BUDGET) -> Tuple[EquivalenceGroup, ...]:
    t = S.t
    pairs = [(i, j) for i in range(t) for j in range(t) if i < j]
    D, Q, U, K, M = S.delta, S.Q, S.U, S.K, S.modules
    groups = []

    # equivalent conditions for diagonal C at the level of the Ext-projective system
    a = _is_diag(rep.C)
    b = all(hom_dim(Q[i], Q[j]) == 0 for i, j in pairs)
    c = all(hom_dim(Q[i], D[j]) == 0 for i, j in pairs)
    d = all(hom_dim(D[i], D[j]) == 0 and hom_dim(U[i], D[j]) == ext1_dim(D[i], D[j]) for i, j in pairs)
    extras = []
    if a:
        extras.append(_clause("moreover Hom(Q(i), U(j)) = 0 for i<j", all(hom_dim(Q[i], U[j]) == 0 for i, j in pairs)))
    groups.append(EquivalenceGroup("C diagonal (Q-level)", (("a", a), ("b", b), ("c", c), ("d", d)), tuple(extras)))

    if a:
        ca = all(S.ext_proj[i].multiplicities[j] == 0 for i, j in pairs)
        cb = all(ext1_dim(D[i], D[j]) == 0 for i in range(t) for j in range(t))
        cc = all(is_isomorphic(Q[i], D[i], seed=seed, budget=budget) for i in range(t))
        cd = all(U[i].dim == 0 for i in range(t))
        extras = []
        if cd:
            endQ = hom_dim(_sum(Q, S.algebra), _sum(Q, S.algebra))
            extras.append(_clause("moreover End(Q) ≅ ∏ End(Q(i)) (dimension)", endQ == sum(hom_dim(x, x) for x in Q)))
        groups.append(EquivalenceGroup("diagonal C corollary", (("a", ca), ("b", cb), ("c", cc), ("d", cd)),
                                       tuple(extras)))

    pa = _is_diag(rep.GtS) and all(hom_dim(M[i], K[j]) == 0 for i, j in pairs)
    pb = all(hom_dim(M[i], M[j]) == 0 for i, j in pairs)
    pc = all(hom_dim(D[i], D[j]) == 0 and hom_dim(M[i], K[j]) == 0
             and hom_dim(K[i], D[j]) == ext1_dim(D[i], D[j]) for i, j in pairs)
    extras = []
    if in_f == YES and _is_diag(rep.GtS):
        predicted = sorted(x for x in rep.end_dims if x > 1)
        got = list(cokernel_structure(rep.C).torsion)
        extras.append(_clause("moreover G_B ≅ ⊕ Z/d_i", sorted(got) == predicted, f"d={list(rep.end_dims)}"))
    groups.append(EquivalenceGroup("Hom(M_i, M_j) = 0 for i<j", (("a", pa), ("b", pb), ("c", pc)), tuple(extras)))

    if tau_tilting and in_f == YES:
        ta = a
        tb = pb
        tc = all(hom_dim(M[i], D[j]) == 0 for i, j in pairs)
        td = all(hom_dim(D[i], D[j]) == 0 and hom_dim(K[i], D[j]) == ext1_dim(D[i], D[j]) for i, j in pairs)
        extras = []
        if ta:
            A = S.algebra
            reg = _sum([projective(A, v) for v in A.vertices], A)
            extras.append(_clause("moreover M ≅ A", is_isomorphic(_sum(M, A), reg, seed=seed, budget=budget)))
            extras.append(_clause("moreover Hom(M_i, K(j)) = 0 for i<j",
                                  all(hom_dim(M[i], K[j]) == 0 for i, j in pairs)))
            extras.append(Clause("weakly triangular", "info", "reported only; the notion is not defined in the source"))
        groups.append(EquivalenceGroup("diagonal Cartan theorem (τ-tilting, M ∈ F(Δ_M))",
                                       (("a", ta), ("b", tb), ("c", tc), ("d", td)), tuple(extras)))
    return tuple(groups)
