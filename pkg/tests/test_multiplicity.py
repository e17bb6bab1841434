import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethenorm.lie import RootSystemA, Weight, fundamental_weight
from bethenorm.multiplicity import RealizationTooLarge, decompose_fundamental, sing_dim, weyl_dimension

SL2, SL3, SL4 = RootSystemA(1), RootSystemA(2), RootSystemA(3)


def w(sys, k):
    return fundamental_weight(sys, k)


def test_examples():
    assert sing_dim(SL2, [w(SL2, 1)] * 4, Weight((0,))) == 2
    assert sing_dim(SL2, [w(SL2, 1)] * 4, Weight((4,))) == 1
    assert sing_dim(SL2, [w(SL2, 1)] * 4, Weight((2,))) == 3
    assert sing_dim(SL3, [w(SL3, 1)] * 3, Weight((0, 0))) == 1
    assert sing_dim(SL3, [w(SL3, 1)] * 3, Weight((1, 1))) == 2
    assert sing_dim(SL4, [w(SL4, 2)] * 2, Weight((0, 0, 0))) == 1


def test_outside_the_cone_is_zero():
    assert sing_dim(SL2, [w(SL2, 1)] * 3, Weight((0,))) == 0  # parity
    assert sing_dim(SL3, [w(SL3, 1)] * 2, Weight((-1, 1))) == 0
    assert sing_dim(SL3, [w(SL3, 1)], Weight((2, 0))) == 0
    assert sing_dim(SL3, [], Weight((0, 0))) == 1


@pytest.mark.parametrize("r,lam", [(1, (1,)), (2, (1, 1)), (3, (0, 1, 0)), (3, (2, 0, 1)), (4, (0, 1, 1, 0))])
def test_weyl_dimension(r, lam):
    expected = {(1, (1,)): 2, (2, (1, 1)): 8, (3, (0, 1, 0)): 6, (3, (2, 0, 1)): 36, (4, (0, 1, 1, 0)): 75}
    assert weyl_dimension(RootSystemA(r), lam) == expected[(r, lam)]


def test_decompose_examples():
    assert sorted(decompose_fundamental(SL2, (1,), 1)) == sorted([Weight((2,)), Weight((0,))])
    assert sorted(decompose_fundamental(SL3, (1, 0), 1)) == sorted([Weight((2, 0)), Weight((0, 1))])
    # V_{w2} (x) V_{w2} for sl4: 2w2, w1+w3, 0
    got = sorted(decompose_fundamental(SL4, (0, 1, 0), 2))
    assert got == sorted([Weight((0, 2, 0)), Weight((1, 0, 1)), Weight((0, 0, 0))])
    with pytest.raises(ValueError):
        decompose_fundamental(SL3, (1, -1), 1)
    with pytest.raises(ValueError):
        decompose_fundamental(SL3, (1, 0), 3)


def _small_cases():
    for r in (1, 2, 3):
        sys = RootSystemA(r)
        for lam in itertools.product(range(3), repeat=r):
            for p in range(1, r + 1):
                # non-fundamental weights live in tensor powers; keep the box count small
                if sum((i + 1) * c for i, c in enumerate(lam)) <= 5:
                    yield sys, lam, p


@pytest.mark.parametrize("sys,lam,p", list(_small_cases()))
def test_decompose_matches_brute_force(sys, lam, p):
    parts = decompose_fundamental(sys, lam, p)
    wp = w(sys, p)
    dim = weyl_dimension(sys, lam) * weyl_dimension(sys, wp)
    assert sum(weyl_dimension(sys, mu) for mu in parts) == dim
    for mu in parts:
        assert sing_dim(sys, [Weight(lam), wp], mu) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_dimension_conservation(r, ks):
    sys = RootSystemA(r)
    ks = [min(k, r) for k in ks]
    weights = [w(sys, k) for k in ks]
    total_dim = math.prod(weyl_dimension(sys, x) for x in weights)
    if total_dim > 100:
        return
    top = Weight.zero(r)
    for x in weights:
        top = top + x
    # every highest weight lies in top - Q+, with coordinates bounded by the top degree
    bound = int(sum(top)) + 1
    acc = 0
    for mu in itertools.product(range(bound + 1), repeat=r):
        m = sing_dim(sys, weights, Weight(mu))
        acc += m * weyl_dimension(sys, mu)
    assert acc == total_dim


def test_symmetric_in_factors():
    a = [w(SL3, 1), w(SL3, 2), w(SL3, 1)]
    b = [w(SL3, 2), w(SL3, 1), w(SL3, 1)]
    for mu in [(0, 0), (1, 1), (3, 0)]:
        assert sing_dim(SL3, a, Weight(mu)) == sing_dim(SL3, b, Weight(mu))


def test_cap():
    with pytest.raises(RealizationTooLarge):
        sing_dim(SL4, [w(SL4, 2)] * 7, Weight((0, 1, 0)))
