import copy
import json
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from stratcartan import fixtures as fx
from stratcartan.linalg import GF
from stratcartan.quiver import (
    AlgebraError,
    Arrow,
    Quiver,
    algebra_from_json,
    build_algebra,
    injective,
    minimal_bound,
    projective,
    regular_module,
)


@pytest.fixture(scope="module")
def A1():
    return fx.algebra("ex1")


@pytest.fixture(scope="module")
def A2():
    return fx.algebra("ex2")


def test_cyclic_cube_zero_dimensions(A1):
    assert A1.dimension == 9
    assert [projective(A1, v).dims for v in A1.vertices] == [(1, 1, 1)] * 3


def test_two_cycle_projectives(A2):
    assert [projective(A2, v).dims for v in A2.vertices] == [(2, 1, 1), (1, 2, 0), (1, 0, 2)]
    assert A2.dimension == 10


def test_injectives_are_dual_sized(A1, A2):
    for A in (A1, A2):
        for v in A.vertices:
            # dim I(v)_w = dim e_v A e_w = number of basis paths w -> v
            assert injective(A, v).dims == tuple(len(A.basis[(w, v)]) for w in A.vertices)


def test_regular_module_total_dimension(A2):
    assert regular_module(A2).dim == A2.dimension


def test_literal_relations_give_larger_projectives():
    doc = json.loads(resources.files("stratcartan").joinpath("data", "ex2_algebra_literal.json").read_text())
    A = algebra_from_json(doc)
    assert A.dimension == 14
    assert projective(A, A.vertex(2)).dims == (1, 2, 1)


def test_minimal_bound_two_cycle(A2):
    assert minimal_bound(A2.quiver, A2.relations, A2.ring) == 3


def test_bound_is_respected(A1):
    for v in A1.vertices:
        for w in A1.vertices:
            assert all(len(p) < A1.bound for p in A1.basis[(v, w)])


def test_long_paths_vanish(A1):
    assert A1.normal_form("1", ("c", "b", "a")) == {}


def test_commutativity_relation_identifies_paths(A2):
    lhs = A2.normal_form("1", ("b1", "a1"))
    rhs = A2.normal_form("1", ("a2", "b2"))
    assert lhs == rhs and lhs


def test_relation_in_arrow_ideal_rejected():
    doc = copy.deepcopy(fx.algebra_doc("ex1"))
    doc["relations"].append([{"coeff": "1", "path": ["a"]}])
    with pytest.raises(AlgebraError, match="radical square"):
        algebra_from_json(doc)


def test_cycle_without_relations_not_admissible():
    doc = copy.deepcopy(fx.algebra_doc("ex1"))
    doc["relations"] = []
    with pytest.raises(AlgebraError):
        algebra_from_json(doc)


def test_malformed_document():
    with pytest.raises(AlgebraError):
        algebra_from_json({"arrows": []})


def test_non_composable_relation():
    doc = copy.deepcopy(fx.algebra_doc("ex1"))
    doc["relations"].append([{"coeff": "1", "path": ["a", "b"]}])
    with pytest.raises(AlgebraError):
        algebra_from_json(doc)


def test_duplicate_arrow_names():
    with pytest.raises(AlgebraError):
        Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("a", "2", "1")))


def test_prime_field_algebra():
    doc = dict(fx.algebra_doc("ex2"), field={"Fp": 3})
    A = algebra_from_json(doc)
    assert A.ring == GF(3)
    assert A.dimension == 10


def test_linear_quiver_path_algebra():
    Q = Quiver(("1", "2", "3"), (Arrow("x", "1", "2"), Arrow("y", "2", "3")))
    A = build_algebra(Q, [], 3)
    # A_3 path algebra: 3 + 2 + 1 paths
    assert A.dimension == 6
    assert projective(A, "1").dims == (1, 1, 1)


def _elements(A):
    keys = [(v, p) for (v, w), ps in sorted(A.basis.items()) for p in ps]
    return st.sampled_from(keys)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_multiplication_associative(data):
    A = fx.algebra(data.draw(st.sampled_from(fx.ALGEBRAS)))
    (s1, p1) = data.draw(_elements(A))
    (s2, p2) = data.draw(_elements(A))
    (s3, p3) = data.draw(_elements(A))
    # (p1 p2) p3 versus p1 (p2 p3); products across mismatched vertices are zero
    one = A.ring.one
    left = A.multiply(A.multiply({p1: one}, s1, {p2: one}, s2), s2, {p3: one}, s3)
    right = A.multiply({p1: one}, s1, A.multiply({p2: one}, s2, {p3: one}, s3), s3)
    assert left == right
