import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethenorm.lie import RootSystemA, Weight, alpha_of, fundamental_weight
from bethenorm.multiplicity import sing_dim
from bethenorm.schubert import (
    INFINITY,
    BasePointWarning,
    PolynomialPlane,
    plucker_check,
    plucker_report,
    ramification_at,
    weights_to_ramification,
    wronskian,
)
from bethenorm.solver import SolverOptions, solve_all

F = Fraction


def test_wronskian_examples():
    assert wronskian([[1], [0, 1]]) == [1]
    assert wronskian([[1], [0, 1], [0, 0, 1]]) == [2]
    # x^2, (x-1)^2 -> 2x(x-1)
    assert wronskian([[0, 0, 1], [1, -2, 1]]) == [0, -2, 2]
    assert wronskian([[1, 2], [2, 4]]) == [0]


def test_ramification_examples():
    plane = PolynomialPlane([[1], [0, 1]])
    for z in (0, F(1, 3), -5):
        assert ramification_at(plane, z) == (0, 0)
    plane = PolynomialPlane([[0, 0, 1], [1, -2, 1]])
    assert sum(ramification_at(plane, 0)) == 1
    assert ramification_at(plane, 1) == (1, 0)
    assert sum(ramification_at(plane, INFINITY)) == 0
    assert plucker_check(plane)


@pytest.mark.parametrize("r,d", [(1, 1), (1, 4), (2, 5), (3, 8)])
def test_monomial_plane_concentrates_at_infinity(r, d):
    plane = PolynomialPlane([[0] * k + [1] for k in range(r + 1)], d)
    assert plane.d == d
    rep = plucker_report(plane)
    assert rep["finite"] == [] and sum(rep["infinity"]) == (r + 1) * (d - r) and rep["holds"]


def test_top_degree_plane_at_infinity_is_open():
    # span of x^{d-r}, ..., x^d: everything sits at 0
    r, d = 2, 5
    plane = PolynomialPlane([[0] * k + [1] for k in range(d - r, d + 1)], d)
    assert ramification_at(plane, INFINITY) == (0, 0, 0)
    with pytest.warns(BasePointWarning):
        a0 = ramification_at(plane, 0)
    assert sum(a0) == (r + 1) * (d - r)


def test_irrational_wronskian_roots():
    # W(1, x^3 - 2x) = 3x^2 - 2 has no rational root
    rep = plucker_report(PolynomialPlane([[1], [0, -2, 0, 1]]))
    assert [row["a"] for row in rep["finite"]] == [(1, 0)] and rep["finite"][0]["degree"] == 2
    assert rep["infinity"] == (2, 0) and rep["holds"]


def test_base_point_warning():
    plane = PolynomialPlane([[0, 1], [0, 0, 1]])
    with pytest.warns(BasePointWarning):
        assert ramification_at(plane, 0) == (1, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert plucker_check(plane)


def test_plane_validation():
    with pytest.raises(ValueError):
        PolynomialPlane([[1, 1], [2, 2]])
    with pytest.raises(ValueError):
        PolynomialPlane([[0, 0, 1], [1]], d=1)
    with pytest.raises(ValueError):
        ramification_at(PolynomialPlane([[1], [0, 1]]), "nowhere")
    assert PolynomialPlane.from_text("1 0 # constant\n\n0, 1/2\n").basis == [[1, 0], [0, F(1, 2)]]


def _random_plane(rng, r, d):
    while True:
        basis = [[F(int(c), int(rng.integers(1, 4))) for c in rng.integers(-3, 4, size=d + 1)] for _ in range(r + 1)]
        try:
            return PolynomialPlane(basis, d)
        except ValueError:
            continue


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_plucker_random(r, extra, seed):
    rng = np.random.default_rng(seed)
    rep = plucker_report(_random_plane(rng, r, r + extra))
    assert rep["holds"] and rep["orders_match_wronskian"]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_basis_change_invariance(seed):
    rng = np.random.default_rng(seed)
    r, d = int(rng.integers(1, 3)), 4
    plane = _random_plane(rng, r, d)
    while True:
        M = [[F(int(c)) for c in row] for row in rng.integers(-2, 3, size=(r + 1, r + 1))]
        if round(np.linalg.det(np.array(M, dtype=float))) != 0:
            break
    other = PolynomialPlane([[sum(M[i][j] * plane.basis[j][k] for j in range(r + 1)) for k in range(d + 1)]
                             for i in range(r + 1)], d)
    for z in (0, 1, F(-1, 2), INFINITY):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BasePointWarning)
            assert ramification_at(plane, z) == ramification_at(other, z)


def test_plane_from_a_critical_point():
    # sl2, w1 at z = 0, 1, t = 1/2: y = x - 1/2 and its partner x^2 solve W(y, u) = x(x - 1)
    plane = PolynomialPlane([[F(-1, 2), 1], [0, 0, 1]], 2)
    assert wronskian(plane.basis) == [0, -1, 1]
    sys = RootSystemA(1)
    w1 = fundamental_weight(sys, 1)
    data = weights_to_ramification(sys, [w1, w1], [0, 1], 2 * w1 - alpha_of(sys, (1,)), 2)
    for z, a in data.points:
        assert ramification_at(plane, z) == a


def test_weights_to_ramification_examples():
    sys = RootSystemA(3)
    w1, w3 = fundamental_weight(sys, 1), fundamental_weight(sys, 3)
    lam_inf = w1 + w1 + w3 - alpha_of(sys, (1, 1, 1))
    data = weights_to_ramification(sys, [w1, w1, w3], [0, 1, 2], lam_inf, 6)
    pts = dict(data.points)
    assert pts[0] == pts[1] == (1, 1, 1, 0) and pts[2] == (1, 0, 0, 0)
    # Lambda = k1 w1 + kr wr with k1 = 2, kr = 1, l = (1, 1, 1), d = 6
    assert pts[INFINITY] == (6 - 3 - 1, 6 - 3 - 2, 6 - 3 - 2, 6 - 3 + 1 - 2 - 1)
    assert data.total() == 4 * (6 - 3)
    with pytest.raises(ValueError):
        weights_to_ramification(sys, [w1, w1, w3], [0, 1, 2], lam_inf, 3)
    with pytest.raises(ValueError):
        weights_to_ramification(sys, [w1], [0, 1], w1, 5)


@pytest.mark.parametrize("r,n1,nr,l", [(1, 4, 0, (2,)), (2, 3, 1, (2, 1)), (3, 2, 2, (1, 1, 1)), (2, 4, 0, (2, 1))])
def test_transversality_count(r, n1, nr, l):
    sys = RootSystemA(r)
    ws = [fundamental_weight(sys, 1)] * n1 + [fundamental_weight(sys, r)] * nr
    target = sum(ws, Weight.zero(r)) - alpha_of(sys, l)
    res = solve_all(sys, ws, l, opts=SolverOptions(seed=5))
    assert len(res) == sing_dim(sys, ws, target)
    d = r + len(ws) + sum(l)
    assert weights_to_ramification(sys, ws, list(range(len(ws))), target, d).total() == (r + 1) * (d - r)
