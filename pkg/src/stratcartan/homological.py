"""Projective presentations, g-vectors, the AR translate and Ext^1."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from .linalg import Matrix, Subspace, span
from .modules import (
    Morphism,
    Representation,
    ShortExactSequence,
    combine,
    count_isoclasses,
    decompose,
    direct_sum,
    hom_basis,
    hom_dim,
    image_spaces,
    induced_from_quotient,
    kernel,
    quotient,
    top_and_radical,
    zero_module,
)
from .quiver import injective, projective


@dataclass(frozen=True)
class ProjectiveCover:
    """P0 = ⊕ P(v_k) ->> X sending the top of P(v_k) to the generator x_k."""

    module: Representation
    cover: Representation
    epi: Morphism
    generators: Tuple[Tuple[str, tuple], ...]  # (vertex, vector in X_vertex)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        A = self.module.algebra
        return tuple(sum(1 for v, _ in self.generators if v == w) for w in A.vertices)


def _top_generators(X: Representation):
    # the standard complement of rad(X)_v lifts a basis of top(X)_v
    A = X.algebra
    R, inc, T, pro = top_and_radical(X)
    gens = []
    for w, v in enumerate(A.vertices):
        rad = span(X.ring, inc.comps[w].columns(), X.dims[w])
        for j in rad.complement_indices():
            vec = [X.ring.zero] * X.dims[w]
            vec[j] = X.ring.one
            gens.append((v, tuple(vec)))
    return gens


def cover_from_generators(X: Representation, gens) -> ProjectiveCover:
    """⊕ P(v) -> X given by generators; surjective iff gens generate X."""
    A = X.algebra
    ring = X.ring
    if not gens:
        Z = zero_module(A)
        return ProjectiveCover(X, Z, Morphism(Z, X, tuple(Matrix.zeros(ring, d, 0) for d in X.dims)), ())
    P0, _, _ = direct_sum([projective(A, v) for v, _ in gens])
    comps = []
    for w in A.vertices:
        cols = []
        for v, x in gens:
            for p in A.basis[(v, w)]:
                cols.append(X.act(v, p, x))
        d = X.dim_at(w)
        comps.append(Matrix.from_columns(ring, cols, d) if cols else Matrix.zeros(ring, d, 0))
    return ProjectiveCover(X, P0, Morphism(P0, X, tuple(comps)), tuple(gens))


@lru_cache(maxsize=None)
def projective_cover(X: Representation) -> ProjectiveCover:
    return cover_from_generators(X, _top_generators(X))


@dataclass(frozen=True)
class MinimalPresentation:
    """P1 --p1--> P0 --p0--> X -> 0 with Ω = ker p0."""

    module: Representation
    cover0: ProjectiveCover
    omega: Representation
    omega_inclusion: Morphism
    cover1: ProjectiveCover
    p1: Morphism

    @property
    def P0(self) -> Representation:
        return self.cover0.cover

    @property
    def P1(self) -> Representation:
        return self.cover1.cover

    @property
    def p0(self) -> Morphism:
        return self.cover0.epi

    @property
    def a0(self) -> Tuple[int, ...]:
        return self.cover0.multiplicities

    @property
    def a1(self) -> Tuple[int, ...]:
        return self.cover1.multiplicities

    def lambdas(self):
        """Algebra-element matrix of p1: entry (l, k) is the component of the
        k-th generator of Ω inside the l-th summand P(a_l) of P0, as a dict
        over basis paths a_l -> b_k."""
        A = self.module.algebra
        heads = [v for v, _ in self.cover0.generators]
        out = []
        for b, vec in self.cover1.generators:
            img = self.omega_inclusion.at(b).apply(vec)
            off = 0
            col = []
            for a in heads:
                paths = A.basis[(a, b)]
                part = img[off:off + len(paths)]
                col.append({p: x for p, x in zip(paths, part) if x})
                off += len(paths)
            out.append(col)
        return out


@lru_cache(maxsize=None)
def minimal_presentation(X: Representation) -> MinimalPresentation:
    c0 = projective_cover(X)
    omega, inc = kernel(c0.epi, label=f"Ω{X.label}" if X.label else "")
    c1 = projective_cover(omega)
    return MinimalPresentation(X, c0, omega, inc, c1, inc @ c1.epi)


def g_vector(X: Representation) -> Tuple[int, ...]:
    pres = minimal_presentation(X)
    return tuple(a - b for a, b in zip(pres.a0, pres.a1))


def nakayama_on_presentation(pres: MinimalPresentation) -> Morphism:
    """ν(p1): ⊕ I(b_k) -> ⊕ I(a_l), where ν(·λ)(φ) = φ(λ ·)."""
    A = pres.module.algebra
    ring = A.ring
    heads = [v for v, _ in pres.cover0.generators]
    tails = [v for v, _ in pres.cover1.generators]
    src, _, _ = direct_sum([injective(A, b) for b in tails], algebra=A)
    tgt, _, _ = direct_sum([injective(A, a) for a in heads], algebra=A)
    lam = pres.lambdas()
    comps = []
    for v in A.vertices:
        rows = []
        for l, a in enumerate(heads):
            ys = A.basis[(v, a)]
            for y in ys:
                row = []
                for k, b in enumerate(tails):
                    ps = A.basis[(v, b)]
                    acc = {}
                    for path, c in lam[k][l].items():
                        for p, x in A.normal_form(v, path + y).items():
                            acc[p] = acc.get(p, ring.zero) + c * x
                    row.extend(acc.get(p, ring.zero) for p in ps)
                rows.append(row)
        comps.append(Matrix(ring, tgt.dim_at(v), src.dim_at(v), rows))
    return Morphism(src, tgt, tuple(comps))


@lru_cache(maxsize=None)
def ar_translate(X: Representation) -> Representation:
    """τX = ker ν(p1) for the minimal presentation of X."""
    pres = minimal_presentation(X)
    if pres.P1.is_zero():
        return zero_module(X.algebra)
    nu = nakayama_on_presentation(pres)
    label = f"τ{X.label}" if X.label else ""
    return kernel(nu, label=label)[0]


def is_tau_rigid(summands: Sequence[Representation]) -> bool:
    taus = [ar_translate(M) for M in summands]
    return all(hom_dim(M, T) == 0 for M in summands for T in taus)


def tau_rigidity_witness(summands: Sequence[Representation]):
    """First pair (i, j) with Hom(M_i, τM_j) != 0, or None."""
    for j, N in enumerate(summands):
        T = ar_translate(N)
        for i, M in enumerate(summands):
            d = hom_dim(M, T)
            if d:
                return i, j, d
    return None


def is_tau_tilting(summands: Sequence[Representation], seed: int = 0) -> bool:
    if not summands or not is_tau_rigid(summands):
        return False
    parts = [P for M in summands for P in decompose(M, seed=seed)]
    return count_isoclasses(parts, seed=seed) == summands[0].algebra.n


# ---------------------------------------------------------------- Ext^1


@dataclass(frozen=True)
class ExtClassSpace:
    source: Representation
    target: Representation
    presentation: MinimalPresentation
    hom_omega: Tuple[Morphism, ...]
    restriction: Subspace
    representatives: Tuple[Morphism, ...]

    @property
    def dim(self) -> int:
        return len(self.representatives)


@lru_cache(maxsize=None)
def ext1(X: Representation, Y: Representation) -> ExtClassSpace:
    """Ext^1(X, Y) = Hom(ΩX, Y) / restrictions of Hom(P0, Y)."""
    pres = minimal_presentation(X)
    H = hom_basis(pres.omega, Y)
    n = sum(d * e for d, e in zip(pres.omega.dims, Y.dims))
    rest = [(g @ pres.omega_inclusion).vector() for g in hom_basis(pres.P0, Y)]
    W = span(X.ring, rest, n)
    reps = []
    cur = list(W.basis)
    r = W.dim
    for h in H:
        trial = span(X.ring, cur + [h.vector()], n)
        if trial.dim > r:
            reps.append(h)
            cur = list(trial.basis)
            r = trial.dim
    return ExtClassSpace(X, Y, pres, tuple(H), W, tuple(reps))


def ext1_dim(X: Representation, Y: Representation) -> int:
    return ext1(X, Y).dim


def pushout_extension(pres: MinimalPresentation, h: Morphism) -> ShortExactSequence:
    """Realise the class of h: ΩX -> Y as 0 -> Y -> E -> X -> 0, E = (Y ⊕ P0)/{(h z, -ι z)}."""
    X, Y = pres.module, h.target
    D, inj, pro = direct_sum([Y, pres.P0])
    phi = (inj[0] @ h) - (inj[1] @ pres.omega_inclusion)
    W = image_spaces(phi)
    E, q = quotient(D, W)
    incl = q @ inj[0]
    down = induced_from_quotient(pres.p0 @ pro[1], W, E)
    return ShortExactSequence(Y, incl, E, X, down)


def realize_extension(space: ExtClassSpace, coeffs: Sequence) -> ShortExactSequence:
    """SES for the class sum_k coeffs[k] * representatives[k]."""
    pres = space.presentation
    h = combine(list(space.representatives), list(coeffs), pres.omega, space.target)
    return pushout_extension(pres, h)


def universal_extension(X: Representation, Y: Representation):
    """0 -> Y^e -> E -> X -> 0 realising a basis of Ext^1(X, Y); returns (ses, e)."""
    space = ext1(X, Y)
    e = space.dim
    if e == 0:
        return None, 0
    pres = space.presentation
    Ye, injs, _ = direct_sum([Y] * e)
    h = injs[0] @ space.representatives[0]
    for k in range(1, e):
        h = h + injs[k] @ space.representatives[k]
    return pushout_extension(pres, h), e


@dataclass(frozen=True)
class PairingResult:
    lhs: int
    hom: int
    hom_tau: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.hom - self.hom_tau


def ar_pairing(M: Representation, N: Representation) -> PairingResult:
    g = g_vector(M)
    lhs = sum(a * b for a, b in zip(g, N.dims))
    return PairingResult(lhs, hom_dim(M, N), hom_dim(N, ar_translate(M)))


def clear_caches():
    for fn in (projective_cover, minimal_presentation, ar_translate, ext1):
        fn.cache_clear()
