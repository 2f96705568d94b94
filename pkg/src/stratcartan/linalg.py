"""Exact linear algebra over Q, F_p and Z.

Matrices are immutable :class:`Matrix` values tagged with a :class:`Ring`.
All arithmetic is exact; nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class Ring:
    """Ring descriptor: knows how to coerce literals and name itself."""

    name = "ring"
    is_field = True
    characteristic = 0

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class _Rationals(Ring):
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, FpElt):
            raise TypeError("cannot coerce a prime-field element into QQ")
        return Fraction(x)

    def to_json(self):
        return "Q"

    def __reduce__(self):
        return "QQ"


class _Integers(Ring):
    name = "ZZ"
    is_field = False

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def to_json(self):
        return "Z"

    def __reduce__(self):
        return "ZZ"


QQ = _Rationals()
ZZ = _Integers()


class FpElt:
    """Element of the prime field F_p, always reduced into [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, FpElt):
            if o.p != self.p:
                raise ValueError("mixing different prime fields")
            return o.v
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return int(o)

    def __add__(self, o):
        return FpElt(self.v + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return FpElt(self.v - self._other(o), self.p)

    def __rsub__(self, o):
        return FpElt(self._other(o) - self.v, self.p)

    def __mul__(self, o):
        return FpElt(self.v * self._other(o), self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        d = self._other(o) % self.p
        if d == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElt(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, o):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElt(self._other(o) * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return FpElt(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, o):
        if isinstance(o, FpElt):
            return self.p == o.p and self.v == o.v
        if isinstance(o, (int, Fraction)):
            return self.v == self._other(o) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"

    def __str__(self):
        return str(self.v)


class PrimeField(Ring):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def coerce(self, x):
        if isinstance(x, FpElt):
            if x.p != self.p:
                raise ValueError("mixing different prime fields")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return FpElt(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElt(int(x), self.p)

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, o):
        return isinstance(o, PrimeField) and o.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(doc) -> Ring:
    if doc in (None, "Q", "QQ"):
        return QQ
    if isinstance(doc, dict) and set(doc) == {"Fp"}:
        return GF(int(doc["Fp"]))
    raise ValueError(f"unknown field descriptor {doc!r}")


def format_scalar(x) -> str:
    """Render a scalar as "a" or "a/b"."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, data: Sequence[Sequence] = None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            z = ring.zero
            data = tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        else:
            data = tuple(tuple(ring.coerce(x) for x in row) for row in data)
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"entry grid does not match declared shape {rows}x{cols}")
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, ring, rows, cols, data):
        # trusted constructor: entries already coerced, shape already right
        m = cls.__new__(cls)
        m.ring, m.rows, m.cols, m.data, m._hash = ring, rows, cols, data, None
        return m

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("need explicit column count for an empty row list")
            cols = len(rows[0])
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(ring, rows, len(columns), data)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls._raw(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> tuple:
        return self.data[i]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, o):
        if not isinstance(o, Matrix):
            return NotImplemented
        return self.shape == o.shape and self.data == o.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(",".join(format_scalar(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def tolist(self) -> list:
        return [list(r) for r in self.data]

    def __matmul__(self, o: "Matrix") -> "Matrix":
        if self.cols != o.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {o.shape}")
        z = self.ring.zero
        ocols = o.columns() if o.cols else []
        out = []
        for r in self.data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for c in ocols:
                s = z
                for k, x in nz:
                    y = c[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(self.ring, self.rows, o.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        """Matrix times a column vector given as a sequence."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        z = self.ring.zero
        nz = [(k, x) for k, x in enumerate(v) if x]
        out = []
        for r in self.data:
            s = z
            for k, x in nz:
                y = r[k]
                if y:
                    s = s + y * x
            out.append(s)
        return tuple(out)

    def __add__(self, o: "Matrix") -> "Matrix":
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} + {o.shape}")
        return Matrix._raw(self.ring, self.rows, self.cols,
                           tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, o.data)))

    def __sub__(self, o: "Matrix") -> "Matrix":
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} - {o.shape}")
        return Matrix._raw(self.ring, self.rows, self.cols,
                           tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, o.data)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.ring, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c)
        return Matrix._raw(self.ring, self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.ring, self.cols, self.rows,
                           tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.ring, len(idx), self.cols, tuple(self.data[i] for i in idx))

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.ring, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def flatten(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    def to_ring(self, ring: Ring) -> "Matrix":
        return Matrix(ring, self.rows, self.cols, self.data)


def hstack(ring: Ring, rows: int, blocks: Sequence[Matrix]) -> Matrix:
    data = [[] for _ in range(rows)]
    cols = 0
    for b in blocks:
        if b.rows != rows:
            raise ValueError("hstack row mismatch")
        cols += b.cols
        for i in range(rows):
            data[i].extend(b.data[i])
    return Matrix._raw(ring, rows, cols, tuple(tuple(r) for r in data))


def vstack(ring: Ring, cols: int, blocks: Sequence[Matrix]) -> Matrix:
    data = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("vstack column mismatch")
        data.extend(b.data)
    return Matrix._raw(ring, len(data), cols, tuple(data))


def block_diag(ring: Ring, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = ring.zero
    data = []
    off = 0
    for b in blocks:
        for r in b.data:
            data.append((z,) * off + tuple(r) + (z,) * (cols - off - b.cols))
        off += b.cols
    return Matrix._raw(ring, rows, cols, tuple(data))


# ---------------------------------------------------------------- elimination


def _rref_rows(rows: list, ncols: int):
    """In-place reduced row echelon form of a list of mutable rows.

    Returns the pivot columns; ``rows`` is truncated to the nonzero rows.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j, v in nz:
                    row[j] = row[j] - f * v
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


@dataclass(frozen=True)
class Reduction:
    """Everything :func:`reduce` learns about a matrix."""

    rref: Matrix
    rank: int
    pivots: tuple
    nullspace_basis: Matrix  # columns span ker(A)
    image_basis: Matrix  # columns span col(A)


def rref(A: Matrix):
    rows = [list(r) for r in A.data]
    pivots = _rref_rows(rows, A.cols)
    z = A.ring.zero
    full = rows + [[z] * A.cols for _ in range(A.rows - len(rows))]
    return Matrix._raw(A.ring, A.rows, A.cols, tuple(tuple(r) for r in full)), tuple(pivots)


def rank(A: Matrix) -> int:
    rows = [list(r) for r in A.data]
    return len(_rref_rows(rows, A.cols))


def nullspace_vectors(ring: Ring, rows: list, ncols: int) -> list:
    """Basis of the kernel of the matrix given by ``rows`` (consumed)."""
    pivots = _rref_rows(rows, ncols)
    pivset = set(pivots)
    z, o = ring.zero, ring.one
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [z] * ncols
        v[f] = o
        for k, p in enumerate(pivots):
            x = rows[k][f]
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return basis


def reduce(A: Matrix) -> Reduction:
    R, pivots = rref(A)
    ns = nullspace_vectors(A.ring, [list(r) for r in A.data], A.cols)
    null = Matrix.from_columns(A.ring, ns, A.cols) if ns else Matrix.zeros(A.ring, A.cols, 0)
    image = A.select_columns(list(pivots))
    return Reduction(R, len(pivots), pivots, null, image)


def nullspace(A: Matrix) -> Matrix:
    return reduce(A).nullspace_basis


@dataclass(frozen=True)
class Solution:
    particular: Optional[tuple]
    nullspace_basis: Matrix

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve(A: Matrix, b: Sequence) -> Solution:
    """Solve ``A x = b``; ``particular`` is None when inconsistent."""
    if len(b) != A.rows:
        raise ValueError(f"shape mismatch: A is {A.shape}, b has length {len(b)}")
    ring = A.ring
    aug = [list(r) + [ring.coerce(x)] for r, x in zip(A.data, b)]
    pivots = _rref_rows(aug, A.cols + 1)
    null = nullspace(A)
    if pivots and pivots[-1] == A.cols:
        return Solution(None, null)
    x = [ring.zero] * A.cols
    for k, p in enumerate(pivots):
        x[p] = aug[k][A.cols]
    return Solution(tuple(x), null)


def determinant(A: Matrix):
    if not A.is_square():
        raise ValueError("determinant of a non-square matrix")
    ring = A.ring
    if not ring.is_field:
        return _bareiss_det([list(r) for r in A.data])
    rows = [list(r) for r in A.data]
    n = A.rows
    det = ring.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return ring.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / p
                for j in range(c, n):
                    rows[i][j] = rows[i][j] - f * rows[c][j]
    return det


def _bareiss_det(m: list) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_invertible(A: Matrix) -> bool:
    return A.is_square() and rank(A) == A.rows


def inverse(A: Matrix) -> Matrix:
    n = A.rows
    if not A.is_square():
        raise ValueError("inverse of a non-square matrix")
    ring = A.ring
    o, z = ring.one, ring.zero
    aug = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(A.data)]
    pivots = _rref_rows(aug, 2 * n)
    if len(pivots) < n or (n and pivots[n - 1] != n - 1):
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw(ring, n, n, tuple(tuple(r[n:]) for r in aug))


# ---------------------------------------------------------------- subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of k^dim kept as an rref row basis.

    The coordinates of a member vector with respect to this basis are its
    entries at the pivot positions.
    """

    dim_ambient: int
    basis: tuple  # rref rows
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence) -> tuple:
        return tuple(v[p] for p in self.pivots)

    def contains(self, v: Sequence) -> bool:
        w = list(v)
        for r, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                for j, x in enumerate(r):
                    if x:
                        w[j] = w[j] - f * x
        return not any(w)

    def complement_projection(self, ring: Ring) -> Matrix:
        """Matrix of V -> V/W in the standard complement coordinates."""
        free = [j for j in range(self.dim_ambient) if j not in set(self.pivots)]
        cols = []
        z, o = ring.zero, ring.one
        for i in range(self.dim_ambient):
            w = [z] * self.dim_ambient
            w[i] = o
            for r, p in zip(self.basis, self.pivots):
                f = w[p]
                if f:
                    for j, x in enumerate(r):
                        if x:
                            w[j] = w[j] - f * x
            cols.append([w[j] for j in free])
        return Matrix.from_columns(ring, cols, len(free)) if self.dim_ambient else Matrix.zeros(ring, 0, 0)

    def complement_indices(self) -> tuple:
        ps = set(self.pivots)
        return tuple(j for j in range(self.dim_ambient) if j not in ps)


def span(ring: Ring, vectors: Iterable[Sequence], dim: int) -> Subspace:
    rows = [list(v) for v in vectors]
    pivots = _rref_rows(rows, dim)
    return Subspace(dim, tuple(tuple(r) for r in rows), tuple(pivots))


def basis_matrix(ring: Ring, W: Subspace) -> Matrix:
    """Columns = the rref basis vectors of W."""
    if W.dim == 0:
        return Matrix.zeros(ring, W.dim_ambient, 0)
    return Matrix.from_columns(ring, W.basis, W.dim_ambient)


# ---------------------------------------------------------------- integers


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: Matrix
    D: Matrix
    V: Matrix
    invariant_factors: tuple


def _as_int_rows(A: Matrix) -> list:
    return [[ZZ.coerce(x) for x in r] for r in A.data]


def smith(A: Matrix) -> SnfResult:
    """Smith normal form with deterministic smallest-pivot strategy.

    Pivot choice: smallest absolute nonzero entry of the active block, ties
    broken by lowest row, then lowest column.
    """
    m, n = A.rows, A.cols
    D = _as_int_rows(A)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    k = 0
    while k < min(m, n):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(k, i)
        swap_cols(k, j)
        while True:
            p = D[k][k]
            dirty = False
            for i in range(k + 1, m):
                if D[i][k]:
                    add_row(i, k, -(D[i][k] // p))
                    dirty |= D[i][k] != 0
            for j in range(k + 1, n):
                if D[k][j]:
                    add_col(j, k, -(D[k][j] // p))
                    dirty |= D[k][j] != 0
            if dirty:
                best = None
                for i in range(k, m):
                    if D[i][k] and (best is None or abs(D[i][k]) < best[0]):
                        best = (abs(D[i][k]), i, "r")
                for j in range(k, n):
                    if D[k][j] and (best is None or abs(D[k][j]) < best[0]):
                        best = (abs(D[k][j]), j, "c")
                _, idx, kind = best
                if kind == "r":
                    swap_rows(k, idx)
                else:
                    swap_cols(k, idx)
                continue
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(k, bad[0], 1)
        if D[k][k] < 0:
            D[k] = [-x for x in D[k]]
            U[k] = [-x for x in U[k]]
        k += 1
    factors = tuple(D[i][i] for i in range(min(m, n)) if D[i][i])
    return SnfResult(Matrix(ZZ, m, m, U), Matrix(ZZ, m, n, D), Matrix(ZZ, n, n, V), factors)


@dataclass(frozen=True)
class CokernelStructure:
    """Z^rows / im(A) as torsion invariants plus free rank."""

    invariant_factors: tuple  # all nonzero diagonal entries of the SNF
    torsion: tuple  # the factors > 1
    free_rank: int

    @property
    def order(self):
        if self.free_rank:
            return "infinite"
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def cokernel_structure(A: Matrix) -> CokernelStructure:
    snf = smith(A)
    factors = snf.invariant_factors
    return CokernelStructure(factors, tuple(d for d in factors if d > 1), A.rows - len(factors))
