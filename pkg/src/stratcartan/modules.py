"""Finite-dimensional modules as quiver representations.

A :class:`Representation` stores one vector space dimension per vertex and a
matrix per arrow (acting on column vectors).  Everything is immutable and
hashable by value, so Hom computations are memoised on the module pair.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (
    Matrix,
    Subspace,
    basis_matrix,
    block_diag,
    nullspace_vectors,
    rank,
    span,
    vstack,
)
from .polys import charpoly_factors, eval_poly


class BudgetExceeded(RuntimeError):
    """A search-based decision ran out of budget; the verdict is UNKNOWN."""


DEFAULT_TRIALS = 12
DEFAULT_BUDGET = 10_000


class Representation:
    """Representation of a bound quiver: dims per vertex, a matrix per arrow."""

    __slots__ = ("algebra", "dims", "maps", "label", "_hash")

    def __init__(self, algebra, dims: Sequence[int], maps: Dict[str, Matrix], label: str = ""):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n or any(d < 0 for d in self.dims):
            raise ValueError(f"dimension vector {self.dims} does not fit {algebra.n} vertices")
        q = algebra.quiver
        full = {}
        for a in q.arrows:
            m = maps.get(a.name)
            r, c = self.dims[q.index[a.tgt]], self.dims[q.index[a.src]]
            if m is None:
                m = Matrix.zeros(algebra.ring, r, c)
            if m.shape != (r, c):
                raise ValueError(f"arrow {a.name}: matrix {m.shape} but dims need {(r, c)}")
            full[a.name] = m
        unknown = set(maps) - set(full)
        if unknown:
            raise ValueError(f"maps given for unknown arrows {sorted(unknown)}")
        self.maps = full
        self.label = label
        self._hash = None

    # value semantics ------------------------------------------------------
    def _key(self):
        return (self.dims, tuple(self.maps[a.name].data for a in self.algebra.quiver.arrows))

    def __eq__(self, o):
        if not isinstance(o, Representation):
            return NotImplemented
        return self.algebra is o.algebra and self._key() == o._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.algebra), self._key()))
        return self._hash

    def __repr__(self):
        lab = f" {self.label}" if self.label else ""
        return f"<Rep{lab} dims={self.dims}>"

    def relabel(self, label: str) -> "Representation":
        return Representation(self.algebra, self.dims, self.maps, label)

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.quiver.index[v]]

    def arrow_matrix(self, name: str) -> Matrix:
        return self.maps[name]

    def path_matrix(self, source: str, path) -> Matrix:
        """Linear map of a path (rightmost arrow applied first)."""
        m = Matrix.identity(self.ring, self.dim_at(source))
        for a in reversed(path):
            m = self.maps[a] @ m
        return m

    def act(self, source: str, path, vec: Sequence) -> tuple:
        v = tuple(vec)
        for a in reversed(path):
            v = self.maps[a].apply(v)
        return v


@dataclass(frozen=True)
class Morphism:
    source: Representation
    target: Representation
    comps: Tuple[Matrix, ...]  # one matrix per vertex, target dim x source dim

    def at(self, v: str) -> Matrix:
        return self.comps[self.source.algebra.quiver.index[v]]

    def vector(self) -> tuple:
        return tuple(x for m in self.comps for x in m.flatten())

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps)

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.comps)

    def is_surjective(self) -> bool:
        return all(rank(m) == m.rows for m in self.comps)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def check(self) -> bool:
        """Commutation with every arrow, exactly."""
        q = self.source.algebra.quiver
        for a in q.arrows:
            fu, fv = self.comps[q.index[a.src]], self.comps[q.index[a.tgt]]
            if fv @ self.source.maps[a.name] != self.target.maps[a.name] @ fu:
                return False
        return True

    def __add__(self, o: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.comps, o.comps)))

    def __sub__(self, o: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a - b for a, b in zip(self.comps, o.comps)))

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, tuple(m.scale(c) for m in self.comps))

    def __matmul__(self, o: "Morphism") -> "Morphism":
        """Composition ``self ∘ o``."""
        if o.target != self.source:
            raise ValueError("morphisms are not composable")
        return Morphism(o.source, self.target, tuple(a @ b for a, b in zip(self.comps, o.comps)))


def identity(X: Representation) -> Morphism:
    return Morphism(X, X, tuple(Matrix.identity(X.ring, d) for d in X.dims))


def zero_morphism(X: Representation, Y: Representation) -> Morphism:
    return Morphism(X, Y, tuple(Matrix.zeros(X.ring, e, d) for d, e in zip(X.dims, Y.dims)))


def combine(basis: Sequence[Morphism], coeffs: Sequence, source=None, target=None) -> Morphism:
    """Linear combination of parallel morphisms."""
    if not basis:
        return zero_morphism(source, target)
    X, Y = basis[0].source, basis[0].target
    ring = X.ring
    comps = []
    for v in range(len(X.dims)):
        r, c = Y.dims[v], X.dims[v]
        acc = [[ring.zero] * c for _ in range(r)]
        for f, k in zip(basis, coeffs):
            if not k:
                continue
            m = f.comps[v].data
            for i in range(r):
                row, mrow = acc[i], m[i]
                for j in range(c):
                    if mrow[j]:
                        row[j] = row[j] + k * mrow[j]
        comps.append(Matrix._raw(ring, r, c, tuple(tuple(row) for row in acc)))
    return Morphism(X, Y, tuple(comps))


def morphism_from_vector(X: Representation, Y: Representation, vec: Sequence) -> Morphism:
    comps, off = [], 0
    for d, e in zip(X.dims, Y.dims):
        n = d * e
        flat = vec[off:off + n]
        comps.append(Matrix._raw(X.ring, e, d, tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(e))))
        off += n
    return Morphism(X, Y, tuple(comps))


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> kernel --inclusion--> middle --projection--> quotient -> 0."""

    kernel: Representation
    inclusion: Morphism
    middle: Representation
    quotient: Representation
    projection: Morphism

    def check(self) -> bool:
        inc, pro = self.inclusion, self.projection
        if not (inc.check() and pro.check()):
            return False
        if not (inc.is_injective() and pro.is_surjective()):
            return False
        if not (pro @ inc).is_zero():
            return False
        for k, m, q in zip(self.kernel.dims, self.middle.dims, self.quotient.dims):
            if k + q != m:
                return False
        # exactness in the middle: im(inc) = ker(pro), given dims add up
        return True

    def is_split(self) -> bool:
        """Split iff the projection admits a section (exact linear test)."""
        return has_section(self.projection)


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class Validation:
    ok: bool
    relation: Optional[str] = None
    source: Optional[str] = None
    target: Optional[str] = None

    def __bool__(self):
        return self.ok


def validate(X: Representation) -> Validation:
    A = X.algebra
    for r in A.relations:
        if not r.terms:
            continue
        s, t = r.endpoints(A.quiver)
        acc = Matrix.zeros(X.ring, X.dim_at(t), X.dim_at(s))
        for c, p in r.terms:
            acc = acc + X.path_matrix(s, p).scale(c)
        if not acc.is_zero():
            return Validation(False, r.describe(), s, t)
    return Validation(True)


# ---------------------------------------------------------------- Hom


def _hom_system(X: Representation, Y: Representation):
    q = X.algebra.quiver
    ring = X.ring
    offsets, off = [], 0
    for d, e in zip(X.dims, Y.dims):
        offsets.append(off)
        off += d * e
    nvars = off
    rows = []
    for a in q.arrows:
        u, v = q.index[a.src], q.index[a.tgt]
        du, dv, eu, ev = X.dims[u], X.dims[v], Y.dims[u], Y.dims[v]
        if ev == 0 or du == 0:
            continue
        Xa, Ya = X.maps[a.name].data, Y.maps[a.name].data
        # (f_v X_a - Y_a f_u)[r, c] = 0 for r < ev, c < du
        for r in range(ev):
            for c in range(du):
                row = {}
                for k in range(dv):
                    x = Xa[k][c]
                    if x:
                        idx = offsets[v] + r * dv + k
                        row[idx] = row.get(idx, ring.zero) + x
                for k in range(eu):
                    y = Ya[r][k]
                    if y:
                        idx = offsets[u] + k * du + c
                        row[idx] = row.get(idx, ring.zero) - y
                row = {k: x for k, x in row.items() if x}
                if row:
                    dense = [ring.zero] * nvars
                    for k, x in row.items():
                        dense[k] = x
                    rows.append(dense)
    return rows, nvars


@lru_cache(maxsize=None)
def _hom_vectors(X: Representation, Y: Representation) -> Tuple[tuple, ...]:
    rows, nvars = _hom_system(X, Y)
    return tuple(nullspace_vectors(X.ring, rows, nvars))


def hom_basis(X: Representation, Y: Representation) -> List[Morphism]:
    """Basis of Hom_A(X, Y) as the nullspace of the commutation equations."""
    if X.algebra is not Y.algebra:
        raise ValueError("modules over different algebras")
    return [morphism_from_vector(X, Y, v) for v in _hom_vectors(X, Y)]


def hom_dim(X: Representation, Y: Representation) -> int:
    if X.algebra is not Y.algebra:
        raise ValueError("modules over different algebras")
    return len(_hom_vectors(X, Y))


def end_basis(X: Representation) -> List[Morphism]:
    return hom_basis(X, X)


# ---------------------------------------------------------------- subquotients


def submodule(X: Representation, spaces: Sequence[Subspace], check: bool = True, label: str = ""):
    """Sub-representation on per-vertex subspaces, with its inclusion."""
    q = X.algebra.quiver
    ring = X.ring
    maps = {}
    for a in q.arrows:
        Wu, Wv = spaces[q.index[a.src]], spaces[q.index[a.tgt]]
        cols = []
        for b in Wu.basis:
            img = X.maps[a.name].apply(b)
            if check and not Wv.contains(img):
                raise ValueError(f"subspaces are not closed under arrow {a.name}")
            cols.append(Wv.coordinates(img))
        maps[a.name] = Matrix.from_columns(ring, cols, Wv.dim) if cols else Matrix.zeros(ring, Wv.dim, 0)
    S = Representation(X.algebra, [W.dim for W in spaces], maps, label)
    inc = Morphism(S, X, tuple(basis_matrix(ring, W) for W in spaces))
    return S, inc


def quotient(X: Representation, spaces: Sequence[Subspace], label: str = ""):
    """X / W with the projection; coordinates follow the standard complement."""
    q = X.algebra.quiver
    ring = X.ring
    projs = [W.complement_projection(ring) for W in spaces]
    sections = [quotient_section(W, ring) for W in spaces]
    maps = {}
    for a in q.arrows:
        u, v = q.index[a.src], q.index[a.tgt]
        maps[a.name] = projs[v] @ X.maps[a.name] @ sections[u]
    Qm = Representation(X.algebra, [p.rows for p in projs], maps, label)
    return Qm, Morphism(X, Qm, tuple(projs))


def _zero_spaces(X: Representation) -> List[Subspace]:
    return [Subspace(d, (), ()) for d in X.dims]


def _full_spaces(X: Representation) -> List[Subspace]:
    return [span(X.ring, [tuple(X.ring.one if i == j else X.ring.zero for j in range(d)) for i in range(d)], d)
            for d in X.dims]


def kernel_spaces(f: Morphism) -> List[Subspace]:
    return [span(f.source.ring, nullspace_vectors(f.source.ring, [list(r) for r in m.data], m.cols), m.cols)
            for m in f.comps]


def image_spaces(f: Morphism) -> List[Subspace]:
    return [span(f.source.ring, m.columns(), m.rows) for m in f.comps]


@dataclass(frozen=True)
class MorphismParts:
    kernel: Representation
    kernel_inclusion: Morphism
    image: Representation
    image_inclusion: Morphism
    cokernel: Representation
    cokernel_projection: Morphism


def kernel(f: Morphism, label: str = ""):
    return submodule(f.source, kernel_spaces(f), check=False, label=label)


def image(f: Morphism, label: str = ""):
    return submodule(f.target, image_spaces(f), check=False, label=label)


def cokernel(f: Morphism, label: str = ""):
    return quotient(f.target, image_spaces(f), label=label)


def morphism_parts(f: Morphism) -> MorphismParts:
    K, ki = kernel(f)
    I, ii = image(f)
    C, cp = cokernel(f)
    return MorphismParts(K, ki, I, ii, C, cp)


def sum_of_images(N: Representation, maps: Sequence[Morphism]) -> List[Subspace]:
    ring = N.ring
    spaces = []
    for v, d in enumerate(N.dims):
        vecs = [c for f in maps for c in f.comps[v].columns()]
        spaces.append(span(ring, vecs, d))
    return spaces


def direct_sum(summands: Sequence[Representation], algebra=None, label: str = ""):
    """Direct sum with its injections and projections."""
    if not summands:
        if algebra is None:
            raise ValueError("empty direct sum needs an explicit algebra")
        Z = Representation(algebra, [0] * algebra.n, {}, label)
        return Z, [], []
    A = summands[0].algebra
    if any(S.algebra is not A for S in summands):
        raise ValueError("direct sum of modules over different algebras")
    ring = A.ring
    dims = [sum(S.dims[v] for S in summands) for v in range(A.n)]
    maps = {a.name: block_diag(ring, [S.maps[a.name] for S in summands]) for a in A.quiver.arrows}
    D = Representation(A, dims, maps, label)
    injections, projections = [], []
    offs = [0] * A.n
    for S in summands:
        inj, pro = [], []
        for v in range(A.n):
            d, tot, o = S.dims[v], dims[v], offs[v]
            inj.append(Matrix(ring, tot, d, [[int(i == o + j) for j in range(d)] for i in range(tot)]))
            pro.append(Matrix(ring, d, tot, [[int(j == o + i) for j in range(tot)] for i in range(d)]))
            offs[v] += d
        injections.append(Morphism(S, D, tuple(inj)))
        projections.append(Morphism(D, S, tuple(pro)))
    return D, injections, projections


def zero_module(algebra) -> Representation:
    return Representation(algebra, [0] * algebra.n, {}, "0")


def power(X: Representation, m: int) -> Representation:
    if m == 0:
        return zero_module(X.algebra)
    if m == 1:
        return X
    return direct_sum([X] * m)[0]


# ---------------------------------------------------------------- torsion pair of Fac(X)


@lru_cache(maxsize=None)
def _trace_spaces(X: Representation, N: Representation) -> Tuple[Subspace, ...]:
    return tuple(sum_of_images(N, hom_basis(X, N)))


def trace_submodule(X: Representation, N: Representation, label: str = ""):
    """t(N) = sum of images of all maps X -> N, with its inclusion."""
    return submodule(N, list(_trace_spaces(X, N)), check=False, label=label)


def canonical_sequence(X: Representation, N: Representation) -> ShortExactSequence:
    """0 -> t(N) -> N -> f(N) -> 0 for the torsion pair (Fac X, X^perp)."""
    spaces = list(_trace_spaces(X, N))
    T, inc = submodule(N, spaces, check=False)
    F, pro = quotient(N, spaces)
    return ShortExactSequence(T, inc, N, F, pro)


def in_fac(X: Representation, N: Representation) -> bool:
    return sum(W.dim for W in _trace_spaces(X, N)) == N.dim


def top_and_radical(X: Representation):
    """(radical, inclusion, top, projection) where rad_v = sum of arrow images into v."""
    q = X.algebra.quiver
    spaces = []
    for v in q.vertices:
        vecs = []
        for a in q.arrows:
            if a.tgt == v:
                vecs.extend(X.maps[a.name].columns())
        spaces.append(span(X.ring, vecs, X.dim_at(v)))
    R, inc = submodule(X, spaces, check=False)
    T, pro = quotient(X, spaces)
    return R, inc, T, pro


def top_dims(X: Representation) -> Tuple[int, ...]:
    return top_and_radical(X)[2].dims


def socle_dims(X: Representation) -> Tuple[int, ...]:
    q = X.algebra.quiver
    out = []
    for v in q.vertices:
        blocks = [X.maps[a.name] for a in q.arrows if a.src == v]
        d = X.dim_at(v)
        if not blocks:
            out.append(d)
            continue
        stacked = vstack(X.ring, d, blocks)
        out.append(d - rank(stacked))
    return tuple(out)


# ---------------------------------------------------------------- section / splitting


def has_section(p: Morphism) -> bool:
    """Does the epimorphism p: E -> X admit s with p∘s = id_X?"""
    E, X = p.source, p.target
    basis = hom_basis(X, E)
    if not basis:
        return X.is_zero()
    # p∘s = id is an affine linear system in the coefficients of s
    target = identity(X).vector()
    cols = [(p @ s).vector() for s in basis]
    from .linalg import solve
    A = Matrix.from_columns(X.ring, cols, len(target)) if target else Matrix.zeros(X.ring, 0, len(cols))
    return solve(A, target).consistent


# ---------------------------------------------------------------- isomorphism


def _nonsingular(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def _random_coeffs(rng: random.Random, n: int, ring):
    return [ring.coerce(rng.randint(-60, 60)) for _ in range(n)]


def find_invertible_combination(basis: Sequence[Morphism], seed: int = 0, trials: int = DEFAULT_TRIALS,
                                budget: int = DEFAULT_BUDGET, offset: Optional[Morphism] = None):
    """Search ``offset + sum c_k basis_k`` for a map invertible at every vertex.

    Returns (verdict, witness).  Seeded random trials first; if some vertex
    never became invertible, an exhaustive grid of size (deg+1)^h decides it
    deterministically (a nonzero polynomial of degree <= deg in each of h
    variables does not vanish on such a grid).  Over Q the product of nonzero
    vertex determinants is a nonzero polynomial, so per-vertex certificates
    suffice for a YES.
    """
    if offset is None and not basis:
        return False, None
    ref = offset if offset is not None else basis[0]
    X, Y = ref.source, ref.target
    if X.dims != Y.dims:
        return False, None
    ring = X.ring
    n = len(basis)
    nverts = len(X.dims)
    rng = random.Random(seed)
    good = [X.dims[v] == 0 for v in range(nverts)]

    def build(coeffs):
        f = combine(basis, coeffs, X, Y)
        return f + offset if offset is not None else f

    for _ in range(trials):
        f = build(_random_coeffs(rng, n, ring))
        ok = [X.dims[v] == 0 or _nonsingular(f.comps[v]) for v in range(nverts)]
        if all(ok):
            return True, f
        good = [g or o for g, o in zip(good, ok)]
    if ring.characteristic:
        deg = sum(X.dims)
        if deg >= ring.characteristic or (deg + 1) ** n > budget:
            raise BudgetExceeded("iso test budget exceeded")
        for pt in itertools.product(range(deg + 1), repeat=n):
            f = build([ring.coerce(c) for c in pt])
            if all(X.dims[v] == 0 or _nonsingular(f.comps[v]) for v in range(nverts)):
                return True, f
        return False, None
    for v in range(nverts):
        if good[v]:
            continue
        deg = X.dims[v]
        if (deg + 1) ** n > budget:
            raise BudgetExceeded("iso test budget exceeded")
        found = False
        for pt in itertools.product(range(deg + 1), repeat=n):
            f = build([ring.coerce(c) for c in pt])
            if _nonsingular(f.comps[v]):
                found = True
                break
        if not found:
            return False, None
    return True, None


@lru_cache(maxsize=None)
def _iso_cached(X: Representation, Y: Representation, seed: int, budget: int) -> bool:
    if X.dims != Y.dims:
        return False
    if X == Y:
        return True
    if hom_dim(X, X) != hom_dim(X, Y) or hom_dim(Y, Y) != hom_dim(Y, X):
        return False
    if top_dims(X) != top_dims(Y) or socle_dims(X) != socle_dims(Y):
        return False
    verdict, _ = find_invertible_combination(hom_basis(X, Y), seed=seed, budget=budget)
    return verdict


def is_isomorphic(X: Representation, Y: Representation, seed: int = 0, budget: int = DEFAULT_BUDGET) -> bool:
    if X.algebra is not Y.algebra:
        raise ValueError("modules over different algebras")
    return _iso_cached(X, Y, seed, budget)


# ---------------------------------------------------------------- indecomposability


def _end_product(f: Morphism, g: Morphism) -> Morphism:
    return f @ g


def _is_local_split(X: Representation) -> bool:
    """Exact test that End(X) = k*1 + N with N generating a nilpotent algebra.

    Holds iff End(X) is local with residue field k, i.e. X is absolutely
    indecomposable.
    """
    basis = end_basis(X)
    ring = X.ring
    D = X.dim
    shifted = []
    for b in basis:
        facs = charpoly_factors([m for m in b.comps if m.rows], ring)
        if len(facs) != 1 or len(facs[0][0]) != 2:
            return False
        lin = facs[0][0]  # monic [1, -lam]
        lam = -lin[1]
        shifted.append(b - identity(X).scale(lam))
    N = [s for s in shifted if not s.is_zero()]
    if not N:
        return True
    nvec = len(N[0].vector())
    cur = N
    for _ in range(D + 1):
        prods = [(a @ b).vector() for a in cur for b in N]
        W = span(ring, prods, nvec)
        if W.dim == 0:
            return True
        cur = [morphism_from_vector(X, X, v) for v in W.basis]
    return False


def _split_by(X: Representation, phi: Morphism) -> Optional[List[Representation]]:
    """Generalised eigenspace summands of phi when its charpoly has >= 2 coprime parts."""
    ring = X.ring
    facs = charpoly_factors([m for m in phi.comps if m.rows], ring)
    if len(facs) < 2:
        return None
    parts = []
    for poly, mult in facs:
        spaces = []
        for v, m in enumerate(phi.comps):
            d = m.rows
            if d == 0:
                spaces.append(Subspace(0, (), ()))
                continue
            pm = eval_poly(poly, m)
            acc = Matrix.identity(ring, d)
            for _ in range(mult):
                acc = acc @ pm
            spaces.append(span(ring, nullspace_vectors(ring, [list(r) for r in acc.data], d), d))
        S, _ = submodule(X, spaces, check=True)
        if S.dim:
            parts.append(S)
    return parts if len(parts) >= 2 else None


def find_splitting(X: Representation, seed: int = 0, trials: int = 24, budget: int = DEFAULT_BUDGET):
    """Return a nontrivial list of summands of X, or None if End(X) is local.

    Raises BudgetExceeded when End(X) is not split-local but no splitting
    element turned up (possible over Q when End(X)/rad is a proper field
    extension; over an algebraically closed field X would split).
    """
    if X.dim == 0 or _is_local_split(X):
        return None
    basis = end_basis(X)
    rng = random.Random(seed)
    ring = X.ring
    for b in basis:
        parts = _split_by(X, b)
        if parts:
            return parts
    for _ in range(trials):
        phi = combine(basis, [ring.coerce(rng.randint(-5, 5)) for _ in basis], X, X)
        parts = _split_by(X, phi)
        if parts:
            return parts
    n = len(basis)
    count = 0
    for pt in itertools.product(range(-2, 3), repeat=n):
        count += 1
        if count > budget:
            break
        phi = combine(basis, [ring.coerce(c) for c in pt], X, X)
        parts = _split_by(X, phi)
        if parts:
            return parts
    raise BudgetExceeded("no splitting endomorphism found; End(X) is not split local (field caveat)")


@lru_cache(maxsize=None)
def _indec_cached(X: Representation, seed: int, budget: int) -> bool:
    return find_splitting(X, seed=seed, budget=budget) is None


def is_indecomposable(X: Representation, seed: int = 0, budget: int = DEFAULT_BUDGET) -> bool:
    if X.dim == 0:
        raise ValueError("the zero module is neither decomposable nor indecomposable")
    return _indec_cached(X, seed, budget)


def _sort_key(X: Representation):
    return (X.dim, X.dims, X._key())


def decompose(X: Representation, seed: int = 0, budget: int = DEFAULT_BUDGET) -> List[Representation]:
    """Indecomposable summands, sorted by (total dim, dim vector)."""
    if X.dim == 0:
        return []
    parts = find_splitting(X, seed=seed, budget=budget)
    if parts is None:
        return [X]
    out = []
    for P in parts:
        out.extend(decompose(P, seed=seed, budget=budget))
    return sorted(out, key=_sort_key)


def count_isoclasses(mods: Sequence[Representation], seed: int = 0) -> int:
    reps: List[Representation] = []
    for M in mods:
        if not any(is_isomorphic(M, R, seed=seed) for R in reps):
            reps.append(M)
    return len(reps)


def clear_caches():
    for fn in (_hom_vectors, _trace_spaces, _iso_cached, _indec_cached):
        fn.cache_clear()


def quotient_section(W: Subspace, ring) -> Matrix:
    """Standard section V/W -> V matching the coordinates used by :func:`quotient`."""
    free = W.complement_indices()
    cols = []
    for j in free:
        e = [ring.zero] * W.dim_ambient
        e[j] = ring.one
        cols.append(e)
    return Matrix.from_columns(ring, cols, W.dim_ambient) if cols else Matrix.zeros(ring, W.dim_ambient, 0)


def induced_from_quotient(f: Morphism, spaces: Sequence[Subspace], Qm: Representation) -> Morphism:
    """The map X/W -> Z induced by f: X -> Z with f(W) = 0."""
    ring = f.source.ring
    comps = tuple(m @ quotient_section(W, ring) for m, W in zip(f.comps, spaces))
    return Morphism(Qm, f.target, comps)


def radical_power_spaces(X: Representation, k: int) -> List[Subspace]:
    """rad^k(X) as per-vertex subspaces of X."""
    cur, inc_total = X, identity(X)
    for _ in range(k):
        R, inc, _, _ = top_and_radical(cur)
        inc_total = inc_total @ inc
        cur = R
    return image_spaces(inc_total)


def truncate(X: Representation, k: int, label: str = "") -> Representation:
    """X / rad^k X."""
    return quotient(X, radical_power_spaces(X, k), label=label)[0]


def loewy_length(X: Representation) -> int:
    k = 0
    while sum(W.dim for W in radical_power_spaces(X, k)):
        k += 1
    return k


def absolutely_indecomposable(X: Representation) -> bool:
    """End(X) local with residue field k: indecomposable over every field extension."""
    return X.dim > 0 and _is_local_split(X)
