import pytest
from hypothesis import given, settings, strategies as st

from stratcartan import fixtures as fx
from stratcartan.linalg import QQ, Matrix, inverse
from stratcartan.modules import (
    Representation,
    canonical_sequence,
    combine,
    count_isoclasses,
    decompose,
    direct_sum,
    hom_basis,
    hom_dim,
    identity,
    in_fac,
    is_indecomposable,
    is_isomorphic,
    loewy_length,
    morphism_parts,
    socle_dims,
    top_dims,
    trace_submodule,
    validate,
    zero_module,
    zero_morphism,
)
from stratcartan.quiver import projective, regular_module, simple

A1 = fx.algebra("ex1")
A2 = fx.algebra("ex2")
Z1 = fx.zoo("ex1")
Z2 = fx.zoo("ex2")
ZOO = [(k, Z1[k]) for k in sorted(Z1)] + [(k, Z2[k]) for k in sorted(Z2)]


def P(A, i):
    return projective(A, A.vertex(i))


def S(A, i):
    return simple(A, A.vertex(i))


def test_validate_projective_and_zero():
    assert validate(P(A2, 1)).ok
    assert validate(zero_module(A1)).ok


def test_validate_reports_cyclic_violation():
    one = [[1]]
    X = Representation(A1, (1, 1, 1), {a: Matrix(QQ, 1, 1, one) for a in ("a", "b", "c")})
    v = validate(X)
    assert not v.ok and v.relation is not None


def test_hom_dims_from_cartan_entries():
    assert hom_dim(P(A1, 1), S(A1, 1)) == 1
    assert hom_dim(P(A2, 2), P(A2, 2)) == 2


@pytest.mark.parametrize("name,X", ZOO)
def test_yoneda(name, X):
    A = X.algebra
    for k, v in enumerate(A.vertices):
        assert hom_dim(projective(A, v), X) == X.dims[k]


def test_kernel_of_top_projection():
    f = hom_basis(P(A2, 1), S(A2, 1))[0]
    parts = morphism_parts(f)
    assert parts.kernel.dims == (1, 1, 1)
    assert parts.cokernel.dim == 0
    assert validate(parts.kernel).ok


def test_identity_and_zero_parts():
    X = P(A1, 1)
    parts = morphism_parts(identity(X))
    assert parts.kernel.dim == 0 and parts.cokernel.dim == 0
    assert is_isomorphic(parts.image, X)
    parts = morphism_parts(zero_morphism(X, X))
    assert parts.kernel.dims == X.dims and parts.cokernel.dims == X.dims


def test_direct_sum_dims():
    D, inj, pro = direct_sum([P(A1, i) for i in (1, 2, 3)])
    assert D.dims == (3, 3, 3)
    for i, p in zip(inj, pro):
        assert not (p @ i).is_zero()
    assert direct_sum([], algebra=A1)[0].dim == 0


def test_trace_in_cyclic_projective():
    X, _, _ = direct_sum([P(A1, 2), P(A1, 3)])
    T, _ = trace_submodule(X, P(A1, 1))
    assert T.dims == (0, 1, 1)


def test_trace_of_simple_in_uniserial():
    T, _ = trace_submodule(S(A1, 2), Z1["EX1.P1/soc"])
    assert T.dims == (0, 1, 0)


def test_canonical_sequence_two_cycle():
    X, _, _ = direct_sum([P(A2, 2), P(A2, 3)])
    ses = canonical_sequence(X, P(A2, 1))
    assert ses.check()
    assert ses.quotient.dims == (1, 0, 0)
    assert ses.kernel.dims == (1, 1, 1)
    assert hom_dim(X, ses.quotient) == 0


def test_trace_is_idempotent():
    X = Z1["EX1.P2"]
    for N in Z1.values():
        T, _ = trace_submodule(X, N)
        T2, _ = trace_submodule(X, T)
        assert T2.dims == T.dims
        assert in_fac(X, T)


def test_zoo_indecomposable_and_distinct():
    for Z in (Z1, Z2):
        mods = list(Z.values())
        assert all(is_indecomposable(X) for X in mods)
        assert count_isoclasses(mods) == len(mods)


def test_regular_module_decomposes_into_projectives():
    parts = decompose(regular_module(A2))
    assert sorted(X.dims for X in parts) == sorted(P(A2, i).dims for i in (1, 2, 3))


def test_top_socle_loewy():
    X = Z2["EX2.P1"]
    assert top_dims(X) == (1, 0, 0)
    assert socle_dims(X) == (1, 0, 0)
    assert loewy_length(X) == 3


def _conjugate(X, mats):
    A = X.algebra
    maps = {}
    for a in A.quiver.arrows:
        s, t = A.quiver.index[a.src], A.quiver.index[a.tgt]
        maps[a.name] = mats[t] @ X.maps[a.name] @ inverse(mats[s])
    return Representation(A, X.dims, maps)


def _unitriangular(draw, n):
    rows = [[1 if i == j else (draw(st.integers(-3, 3)) if j > i else 0) for j in range(n)] for i in range(n)]
    lower = [[1 if i == j else (draw(st.integers(-2, 2)) if j < i else 0) for j in range(n)] for i in range(n)]
    return Matrix(QQ, n, n, rows) @ Matrix(QQ, n, n, lower)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_isomorphism_survives_change_of_basis(data):
    name, X = data.draw(st.sampled_from(ZOO))
    mats = [_unitriangular(data.draw, d) for d in X.dims]
    Y = _conjugate(X, mats)
    assert validate(Y).ok
    assert is_isomorphic(X, Y)
    assert is_indecomposable(Y)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_morphisms_are_morphisms(data):
    alg = data.draw(st.sampled_from((Z1, Z2)))
    keys = sorted(alg)
    X = alg[data.draw(st.sampled_from(keys))]
    Y = alg[data.draw(st.sampled_from(keys))]
    B = hom_basis(X, Y)
    coeffs = [data.draw(st.integers(-3, 3)) for _ in B]
    f = combine(B, coeffs, X, Y)
    assert f.check()
    parts = morphism_parts(f)
    assert parts.kernel.dim + parts.image.dim == X.dim
    assert parts.image.dim + parts.cokernel.dim == Y.dim
    for M in (parts.kernel, parts.image, parts.cokernel):
        assert validate(M).ok


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_hom_additive_in_sums(data):
    keys = sorted(Z1)
    X, Y, W = (Z1[data.draw(st.sampled_from(keys))] for _ in range(3))
    D, _, _ = direct_sum([X, Y])
    assert hom_dim(D, W) == hom_dim(X, W) + hom_dim(Y, W)
    assert hom_dim(W, D) == hom_dim(W, X) + hom_dim(W, Y)
