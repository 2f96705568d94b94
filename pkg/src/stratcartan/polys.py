"""Characteristic polynomials and their factorisation (delegated to sympy)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from sympy.polys.matrices import DomainMatrix

from .linalg import Matrix, QQ

_X = sympy.Symbol("x")


def _domain(ring):
    if ring.characteristic:
        return sympy.GF(ring.characteristic)
    return sympy.QQ


def _to_domain(dom, ring, x):
    if ring.characteristic:
        return dom(int(x.v))
    return dom(x.numerator, x.denominator)


def charpoly(m: Matrix) -> sympy.Poly:
    ring = m.ring
    dom = _domain(ring)
    dm = DomainMatrix([[_to_domain(dom, ring, x) for x in r] for r in m.data], m.shape, dom)
    return sympy.Poly(dm.charpoly(), _X, domain=dom)


def _coeffs_back(p: sympy.Poly, ring) -> Tuple:
    out = []
    for c in p.all_coeffs():
        if ring.characteristic:
            out.append(ring.coerce(int(c)))
        else:
            r = sympy.Rational(c)
            out.append(Fraction(int(r.p), int(r.q)))
    return tuple(out)


def charpoly_factors(blocks: Sequence[Matrix], ring=QQ) -> List[Tuple[tuple, int]]:
    """Monic irreducible factors (coefficients high degree first) of the
    characteristic polynomial of the block diagonal matrix with these blocks."""
    dom = _domain(ring)
    total = sympy.Poly(1, _X, domain=dom)
    for b in blocks:
        total = total * charpoly(b)
    _, facs = total.factor_list()
    out = []
    for f, e in facs:
        f = f.monic()
        out.append((_coeffs_back(f, ring), int(e)))
    return sorted(out, key=lambda t: (len(t[0]), [str(c) for c in t[0]]))


def eval_poly(coeffs: Sequence, m: Matrix) -> Matrix:
    """Horner evaluation of a polynomial at a square matrix."""
    ring = m.ring
    n = m.rows
    acc = Matrix.zeros(ring, n, n)
    ident = Matrix.identity(ring, n)
    for c in coeffs:
        acc = acc @ m + ident.scale(c)
    return acc
