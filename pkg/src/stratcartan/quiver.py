"""Bound quiver algebras kQ/I presented by a finite path basis.

Paths are tuples of arrow names written in function order: ``("b1", "a1")``
is the path b1*a1, which applies a1 first.  The trivial path at a vertex is
the empty tuple together with that vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import QQ, Matrix, Ring, _rref_rows, field_from_json, format_scalar


class AlgebraError(ValueError):
    """Malformed or non-admissible algebra presentation."""


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex identifiers must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be distinct")
        for a in self.arrows:
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise AlgebraError(f"arrow {a.name} has an undeclared endpoint")

    @cached_property
    def arrow(self) -> Dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def out_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def path_endpoints(self, path: Sequence[str]) -> Tuple[str, str]:
        """(source, target) of a nontrivial path, or raise if not composable."""
        if not path:
            raise AlgebraError("empty path has no intrinsic endpoints")
        try:
            arrows = [self.arrow[a] for a in path]
        except KeyError as e:
            raise AlgebraError(f"unknown arrow {e.args[0]!r}") from None
        # arrows[-1] is applied first
        for later, earlier in zip(arrows, arrows[1:]):
            if earlier.tgt != later.src:
                raise AlgebraError(f"path {'*'.join(path)} is not composable")
        return arrows[-1].src, arrows[0].tgt


Path = Tuple[str, ...]
PathKey = Tuple[str, Path]  # (source vertex, arrows)


@dataclass(frozen=True)
class Relation:
    """A formal linear combination of parallel paths."""

    terms: Tuple[Tuple[object, Path], ...]

    def endpoints(self, quiver: Quiver) -> Tuple[str, str]:
        ends = {quiver.path_endpoints(p) for _, p in self.terms}
        if len(ends) != 1:
            raise AlgebraError("all paths in one relation must share source and target")
        return ends.pop()

    def describe(self) -> str:
        parts = []
        for c, p in self.terms:
            parts.append(f"{format_scalar(c)}*{'.'.join(p)}")
        return " + ".join(parts)


def _path_sort_key(path: Path):
    return (len(path), path)


class BoundQuiverAlgebra:
    """The finite-dimensional algebra A = kQ/I with I ⊇ R^L.

    ``basis[(i, j)]`` lists the basis paths from vertex i to vertex j (cosets
    spanning e_j A e_i).  Every path of length < L has a stored normal form;
    paths of length >= L are zero.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], bound: int, ring: Ring = QQ):
        if bound < 1:
            raise AlgebraError("nilpotency bound must be at least 1")
        self.quiver = quiver
        self.ring = ring
        self.bound = bound
        self.relations = tuple(
            Relation(tuple((ring.coerce(c), tuple(p)) for c, p in r.terms if ring.coerce(c))) for r in relations
        )
        self._check_relations()
        self._paths = self._enumerate_paths(bound)
        self._check_admissible()
        self.basis, self._nf = self._compute_basis()

    # ------------------------------------------------------------ construction

    def _check_relations(self):
        for r in self.relations:
            if not r.terms:
                continue
            for _, p in r.terms:
                if len(p) < 2:
                    raise AlgebraError(f"relation outside radical square: {r.describe()}")
            r.endpoints(self.quiver)

    def _enumerate_paths(self, max_len: int) -> Dict[Tuple[str, str], List[Path]]:
        """All paths of length <= max_len grouped by (source, target)."""
        out: Dict[Tuple[str, str], List[Path]] = {}
        frontier = []
        for v in self.quiver.vertices:
            out.setdefault((v, v), []).append(())
            frontier.append((v, v, ()))
        for _ in range(max_len):
            nxt = []
            for s, t, p in frontier:
                for a in self.quiver.out_arrows(t):
                    q = (a.name,) + p
                    out.setdefault((s, a.tgt), []).append(q)
                    nxt.append((s, a.tgt, q))
            frontier = nxt
        for k in out:
            out[k].sort(key=_path_sort_key)
        return out

    def _ideal_span(self, max_len: int) -> Dict[Tuple[str, str], List[Dict[Path, object]]]:
        """Spanning vectors u*r*v of the ideal modulo paths longer than max_len."""
        gens: Dict[Tuple[str, str], List[Dict[Path, object]]] = {}
        paths = self._paths if max_len <= self.bound else self._enumerate_paths(max_len)
        for r in self.relations:
            if not r.terms:
                continue
            s, t = r.endpoints(self.quiver)
            shortest = min(len(p) for _, p in r.terms)
            for i in self.quiver.vertices:
                for v in paths.get((i, s), []):
                    if len(v) + shortest > max_len:
                        continue
                    for j in self.quiver.vertices:
                        for u in paths.get((t, j), []):
                            if len(u) + len(v) + shortest > max_len:
                                continue
                            vec: Dict[Path, object] = {}
                            for c, p in r.terms:
                                q = u + p + v
                                if len(q) <= max_len:
                                    vec[q] = vec.get(q, self.ring.zero) + c
                            vec = {k: x for k, x in vec.items() if x}
                            if vec:
                                gens.setdefault((i, j), []).append(vec)
        return gens

    def _check_admissible(self):
        L = self.bound
        long_paths = self._enumerate_paths(L)
        gens = self._ideal_span(L)
        for (i, j), plist in long_paths.items():
            targets = [p for p in plist if len(p) == L]
            if not targets:
                continue
            cols = sorted(plist, key=_path_sort_key, reverse=True)
            idx = {p: k for k, p in enumerate(cols)}
            rows = []
            for vec in gens.get((i, j), []):
                row = [self.ring.zero] * len(cols)
                for p, c in vec.items():
                    row[idx[p]] = c
                rows.append(row)
            _rref_rows(rows, len(cols))
            for p in targets:
                w = [self.ring.zero] * len(cols)
                w[idx[p]] = self.ring.one
                for r in rows:
                    piv = next(k for k, x in enumerate(r) if x)
                    f = w[piv]
                    if f:
                        w = [a - f * b for a, b in zip(w, r)]
                if any(w):
                    raise AlgebraError(
                        f"not admissible at bound L={L}: path {'.'.join(p)} ({i}->{j}) does not lie in the ideal"
                    )

    def _compute_basis(self):
        L = self.bound
        short = {k: [p for p in v if len(p) < L] for k, v in self._paths.items()}
        gens = self._ideal_span(L - 1)
        basis: Dict[Tuple[str, str], Tuple[Path, ...]] = {}
        nf: Dict[PathKey, Dict[Path, object]] = {}
        for (i, j), plist in short.items():
            # largest paths first so pivots eliminate long paths in favour of short ones
            cols = sorted(plist, key=_path_sort_key, reverse=True)
            idx = {p: k for k, p in enumerate(cols)}
            rows = []
            for vec in gens.get((i, j), []):
                row = [self.ring.zero] * len(cols)
                for p, c in vec.items():
                    row[idx[p]] = c
                rows.append(row)
            pivots = _rref_rows(rows, len(cols))
            pivset = set(pivots)
            free = sorted((cols[k] for k in range(len(cols)) if k not in pivset), key=_path_sort_key)
            basis[(i, j)] = tuple(free)
            for k, p in enumerate(cols):
                if k in pivset:
                    r = rows[pivots.index(k)]
                    nf[(i, p)] = {cols[m]: -x for m, x in enumerate(r) if x and m != k}
                else:
                    nf[(i, p)] = {p: self.ring.one}
        for v in self.quiver.vertices:
            for w in self.quiver.vertices:
                basis.setdefault((v, w), ())
        return basis, nf

    # ------------------------------------------------------------ queries

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @cached_property
    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def vertex(self, i) -> str:
        """Accept a vertex name or a 1-based position."""
        if isinstance(i, str) and i in self.quiver.index:
            return i
        if isinstance(i, int) and 1 <= i <= self.n:
            return self.vertices[i - 1]
        if isinstance(i, str) and i.isdigit() and 1 <= int(i) <= self.n:
            return self.vertices[int(i) - 1]
        raise KeyError(f"unknown vertex {i!r}")

    def normal_form(self, source: str, path: Path) -> Dict[Path, object]:
        """Coordinates of a path from ``source`` in the basis (empty dict = 0)."""
        if len(path) >= self.bound:
            return {}
        return self._nf[(source, path)]

    def path_target(self, source: str, path: Path) -> str:
        return self.quiver.arrow[path[0]].tgt if path else source

    def multiply(self, left: Dict[Path, object], left_source: str,
                 right: Dict[Path, object], right_source: str) -> Dict[Path, object]:
        """Product left*right of elements starting at the given vertices."""
        out: Dict[Path, object] = {}
        for q, b in right.items():
            if self.path_target(right_source, q) != left_source:
                continue
            for p, a in left.items():
                for r, c in self.normal_form(right_source, p + q).items():
                    out[r] = out.get(r, self.ring.zero) + a * b * c
        return {k: x for k, x in out.items() if x}

    def element_key(self, source: str, elem: Dict[Path, object]):
        return tuple(sorted(((p, x) for p, x in elem.items() if x), key=lambda t: _path_sort_key(t[0])))

    def describe(self) -> dict:
        return {
            "field": self.ring.to_json(),
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.quiver.arrows],
            "relations": [
                [{"coeff": format_scalar(c), "path": list(p)} for c, p in r.terms] for r in self.relations
            ],
            "bound": self.bound,
        }

    def __repr__(self):
        return f"BoundQuiverAlgebra(n={self.n}, dim={self.dimension}, L={self.bound})"


def build_algebra(quiver: Quiver, relations: Sequence, bound: int, ring: Ring = QQ) -> BoundQuiverAlgebra:
    """Build kQ/I.  ``relations`` may hold :class:`Relation` objects or lists of
    ``(coeff, path)`` pairs."""
    rels = []
    for r in relations:
        if isinstance(r, Relation):
            rels.append(r)
        else:
            rels.append(Relation(tuple((c, tuple(p)) for c, p in r)))
    return BoundQuiverAlgebra(quiver, rels, bound, ring)


def algebra_from_json(doc: dict) -> BoundQuiverAlgebra:
    try:
        ring = field_from_json(doc.get("field", "Q"))
        quiver = Quiver(
            tuple(str(v) for v in doc["vertices"]),
            tuple(Arrow(str(a["name"]), str(a["src"]), str(a["tgt"])) for a in doc.get("arrows", [])),
        )
        relations = [[(t["coeff"], tuple(t["path"])) for t in r] for r in doc.get("relations", [])]
        bound = int(doc["bound"])
    except (KeyError, TypeError) as e:
        raise AlgebraError(f"malformed algebra document: {e}") from None
    return build_algebra(quiver, relations, bound, ring)


def minimal_bound(quiver: Quiver, relations: Sequence, ring: Ring = QQ, start: int = 1, stop: int = 12) -> Optional[int]:
    """Smallest L in [start, stop] at which the presentation is admissible."""
    for L in range(start, stop + 1):
        try:
            build_algebra(quiver, relations, L, ring)
        except AlgebraError as e:
            if "radical square" in str(e):
                raise
            continue
        return L
    return None


# ---------------------------------------------------------------- standard modules


def _modules():
    from . import modules
    return modules


def projective(A: BoundQuiverAlgebra, i):
    """P(i) = A e_i, with basis the basis paths starting at i."""
    i = A.vertex(i)
    R = _modules().Representation
    ring = A.ring
    maps = {}
    for a in A.quiver.arrows:
        src_b, tgt_b = A.basis[(i, a.src)], A.basis[(i, a.tgt)]
        pos = {p: k for k, p in enumerate(tgt_b)}
        data = [[ring.zero] * len(src_b) for _ in tgt_b]
        for c, p in enumerate(src_b):
            for q, x in A.normal_form(i, (a.name,) + p).items():
                data[pos[q]][c] = x
        maps[a.name] = Matrix(ring, len(tgt_b), len(src_b), data)
    dims = [len(A.basis[(i, v)]) for v in A.vertices]
    return R(A, dims, maps, f"P({i})")


def injective(A: BoundQuiverAlgebra, i):
    """I(i) = D(e_i A); the coordinate at vertex j is dual to the paths j -> i."""
    i = A.vertex(i)
    R = _modules().Representation
    ring = A.ring
    maps = {}
    for a in A.quiver.arrows:
        src_b, tgt_b = A.basis[(a.src, i)], A.basis[(a.tgt, i)]
        pos = {p: k for k, p in enumerate(src_b)}
        data = [[ring.zero] * len(src_b) for _ in tgt_b]
        for r, x in enumerate(tgt_b):
            for p, c in A.normal_form(a.src, x + (a.name,)).items():
                data[r][pos[p]] = c
        maps[a.name] = Matrix(ring, len(tgt_b), len(src_b), data)
    dims = [len(A.basis[(v, i)]) for v in A.vertices]
    return R(A, dims, maps, f"I({i})")


def simple(A: BoundQuiverAlgebra, i):
    i = A.vertex(i)
    R = _modules().Representation
    return R(A, [int(v == i) for v in A.vertices], {}, f"S({i})")


def regular_module(A: BoundQuiverAlgebra):
    """A_A as the direct sum of its indecomposable projectives."""
    return _modules().direct_sum([projective(A, v) for v in A.vertices], label="A")[0]
