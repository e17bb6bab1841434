import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethenorm.exact import rational_rank
from bethenorm.lie import RootSystemA, Weight, alpha_of, fundamental_weight, is_dominant_integral
from bethenorm.multiplicity import weyl_dimension
from bethenorm.reps import (
    RepresentationError,
    TensorVector,
    contravariance_defects,
    embed_irreducible,
    exterior_rep,
    iterated_singular_vector,
    realization_for,
    relation_defects,
    shapovalov_pair,
    singular_subspace,
    tensor,
    weight_subspace,
)

SL2, SL3, SL4 = RootSystemA(1), RootSystemA(2), RootSystemA(3)


def test_exterior_examples():
    V = exterior_rep(SL2, 1)
    assert V.dim == 2
    assert set(V.weights) == {Weight((1,)), Weight((1,)) - alpha_of(SL2, (1,))}
    assert exterior_rep(SL4, 2).dim == 6
    W = exterior_rep(SL3, 2)
    assert W.dim == 3 and W.highest_weight == Weight((0, 1))
    with pytest.raises(ValueError):
        exterior_rep(SL3, 3)


def test_exterior_gram_is_identity():
    for r in range(1, 5):
        for k in range(1, r + 1):
            V = exterior_rep(RootSystemA(r), k)
            assert np.array_equal(V.dense_gram(exact=True), np.eye(V.dim, dtype=int).astype(object))


def test_tensor_examples():
    V = exterior_rep(SL2, 1)
    VV = tensor([V, V])
    assert VV.dim == 4
    assert len(singular_subspace(VV, Weight((0,)))) == 1
    W = tensor([exterior_rep(SL3, 1), exterior_rep(SL3, 2)])
    assert W.dim == 9
    assert len(singular_subspace(W, Weight((1, 1)))) == 1
    assert len(singular_subspace(W, Weight((0, 0)))) == 1
    assert tensor([V]) is V
    with pytest.raises(ValueError):
        tensor([])


def test_embed_examples():
    A = embed_irreducible(SL3, Weight((1, 0)))
    B = exterior_rep(SL3, 1)
    assert sorted(A.weights) == sorted(B.weights)
    assert A.dim == 3
    # isometric: gram restricted to each weight space has the same determinant (1-dim spaces)
    for mu in set(B.weights):
        ia, ib = weight_subspace(A, mu), weight_subspace(B, mu)
        assert A.dense_gram(exact=True)[ia[0], ia[0]] == B.dense_gram(exact=True)[ib[0], ib[0]]
    V = embed_irreducible(SL2, Weight((2,)))
    assert V.dim == 3
    v = TensorVector.highest((V,))
    f1 = v.apply("F", 1)
    f2 = f1.apply("F", 1)
    assert shapovalov_pair(V, v, v) == 1
    assert shapovalov_pair(V, f1, f1) == 2
    # E^2 F^2 v = (2*2 - 2) * 2 v
    assert shapovalov_pair(V, f2, f2) == 4
    assert embed_irreducible(SL3, Weight((1, 1))).dim == 8


def test_embed_requires_dominant():
    with pytest.raises(ValueError):
        embed_irreducible(SL2, Weight((-1,)))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sl2_shapovalov_recursion(k):
    # S(F^j v, F^j v) = j! k(k-1)...(k-j+1)
    V = realization_for(SL2, Weight((k,)))
    v = TensorVector.highest((V,))
    for j in range(k + 1):
        expected = math.factorial(j) * math.prod(k - i for i in range(j))
        assert shapovalov_pair(V, v, v) == expected
        v = v.apply("F", 1)
    assert v.is_zero()


def test_singular_examples():
    V = exterior_rep(SL2, 1)
    assert len(singular_subspace(tensor([V] * 4), Weight((0,)))) == 2
    W = tensor([exterior_rep(SL3, 1), exterior_rep(SL3, 1), exterior_rep(SL3, 2)])
    top = singular_subspace(W, W.highest_weight)
    assert len(top) == 1
    assert top[0].entries == {(0, 0, 0): 1}


def test_shapovalov_examples():
    V = exterior_rep(SL2, 1)
    VV = tensor([V, V])
    v = TensorVector.highest(VV.factors)
    assert shapovalov_pair(VV, v, v) == 1
    u = v.apply_local(V.dense("F", 1, exact=True), 0) - v.apply_local(V.dense("F", 1, exact=True), 1)
    assert shapovalov_pair(VV, u, u) == 2
    assert shapovalov_pair(VV, u, v) == 0


def test_iterated_singular_vector_examples():
    V = exterior_rep(SL2, 1)
    v = TensorVector.highest((V,))
    # one part: the part itself
    w = iterated_singular_vector({((),): 1}, [v])
    assert w.entries == v.entries
    # downstairs singular vector F v (x) v - v (x) F v
    w = iterated_singular_vector({((1,), ()): 1, ((), (1,)): -1}, [v, v])
    assert w.entries == {(1, 0): 1, (0, 1): -1}
    VV = tensor([V, V])
    assert shapovalov_pair(VV, w, w) == 2
    with pytest.raises(ValueError):
        iterated_singular_vector({((1,),): 1}, [v, v])


def test_iterated_norm_factorizes():
    # parts: the singular weight-0 vector of V(x)V twice; downstairs: the
    # trivial rep tensor trivial, so norm = product of norms
    V = exterior_rep(SL2, 1)
    VV = tensor([V, V])
    s = singular_subspace(VV, Weight((0,)))[0]
    w = iterated_singular_vector({((), ()): 1}, [s, s])
    W = tensor([V] * 4)
    assert shapovalov_pair(W, w, w) == shapovalov_pair(VV, s, s) ** 2
    assert all(w.apply("E", 1).data.flat[k] == 0 for k in range(16))


def test_weight_bookkeeping():
    V = tensor([exterior_rep(SL3, 1), exterior_rep(SL3, 2)])
    v = TensorVector.highest(V.factors)
    assert v.weight == Weight((1, 1))
    assert v.apply("F", 1).weight == Weight((1, 1)) - alpha_of(SL3, (1, 0))
    assert TensorVector.zeros(V.factors).weight is None
    with pytest.raises(RepresentationError):
        (v + v.apply("F", 1)).weight


REALIZATIONS = [
    (1, (1,)), (1, (2,)), (1, (3,)),
    (2, (1, 0)), (2, (0, 1)), (2, (1, 1)), (2, (2, 0)),
    (3, (1, 0, 0)), (3, (0, 1, 0)), (3, (1, 0, 1)),
    (4, (1, 0, 0, 0)), (4, (0, 1, 0, 0)), (4, (0, 0, 1, 0)),
]


@pytest.mark.parametrize("r,lam", REALIZATIONS)
def test_relations_and_contravariance(r, lam):
    sys = RootSystemA(r)
    V = realization_for(sys, Weight(lam))
    assert V.dim == weyl_dimension(sys, lam)
    assert relation_defects(V) == []
    assert contravariance_defects(V) == []
    # E_i raises weights by alpha_i
    for i in range(r):
        a = alpha_of(sys, [int(j == i) for j in range(r)])
        for (row, col) in V.E[i].entries:
            assert V.weights[row] == V.weights[col] + a
    # gram is nondegenerate on each weight space
    G = V.dense_gram(exact=True)
    for mu in set(V.weights):
        idx = weight_subspace(V, mu)
        assert rational_rank([[G[a, b] for b in idx] for a in idx], len(idx)) == len(idx)


def test_relations_on_tensor_product():
    V = tensor([exterior_rep(SL3, 1), realization_for(SL3, Weight((1, 1)))])
    assert relation_defects(V) == []
    assert contravariance_defects(V) == []


@pytest.mark.parametrize("r,lams", [
    (1, [(1,), (1,), (1,)]),
    (1, [(2,), (1,)]),
    (2, [(1, 0), (1, 0), (0, 1)]),
    (2, [(1, 1), (1, 0)]),
    (3, [(0, 1, 0), (0, 1, 0)]),
])
def test_complete_reducibility(r, lams):
    sys = RootSystemA(r)
    V = tensor([realization_for(sys, Weight(l)) for l in lams])
    total = 0
    for mu in {w for w in V.weights if is_dominant_integral(sys, w)}:
        total += len(singular_subspace(V, mu)) * weyl_dimension(sys, mu)
    assert total == V.dim


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_shapovalov_symmetric_bilinear(seed):
    rng = np.random.default_rng(seed)
    V = tensor([exterior_rep(SL3, 1), exterior_rep(SL3, 2), exterior_rep(SL3, 1)])
    u, v, w = (rng.normal(size=V.dim) for _ in range(3))
    c = rng.normal()
    S = lambda a, b: shapovalov_pair(V, a, b)
    assert abs(S(u, v) - S(v, u)) < 1e-12
    assert abs(S(u + c * w, v) - S(u, v) - c * S(w, v)) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_contravariance_on_random_vectors(seed):
    rng = np.random.default_rng(seed)
    V = tensor([exterior_rep(SL3, 1), realization_for(SL3, Weight((1, 1)))])
    u = TensorVector.from_flat(V, rng.normal(size=V.dim).astype(complex))
    v = TensorVector.from_flat(V, rng.normal(size=V.dim).astype(complex))
    for i in (1, 2):
        lhs = shapovalov_pair(V, u.apply("F", i), v)
        rhs = shapovalov_pair(V, u, v.apply("E", i))
        assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))
