import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethenorm.exact import QuadraticNumber
from bethenorm.lie import RootSystemA, Weight, alpha_of, fundamental_weight, is_dominant_integral
from bethenorm.master import CriticalPoint, MasterProblem, SingularPointError, bethe_residual, hessian_det, log_phi_hessian
from bethenorm.multiplicity import sing_dim
from bethenorm.solver import (
    NewtonError,
    RescalingPlan,
    SolverOptions,
    continue_path,
    dedupe_orbits,
    newton_refine,
    seed_sl4_w2,
    seed_w1,
    seed_wr,
    solve_all,
    track_family,
)

SL2, SL3, SL4, SL5 = (RootSystemA(r) for r in (1, 2, 3, 4))
ZERO_ONE = (Fraction(0), Fraction(1))


def test_seed_w1_examples():
    assert seed_w1((1,), 1) == (Fraction(1, 2),)
    assert seed_w1((1, 1), 2) == (Fraction(3, 4), Fraction(3, 8))
    assert seed_w1((2, 0, 1), 0) == ()
    with pytest.raises(ValueError):
        seed_w1((0, 0), 2)  # w1 - alpha1 - alpha2 is not dominant


def test_seed_wr_examples():
    for lam in range(1, 4):
        assert seed_wr((lam,), 1) == seed_w1((lam,), 1)
    # diagram automorphism: V_(1,1) (x) V_w2 with l = (0,1) mirrors V_(1,1) (x) V_w1 with l = (1,0)
    t = seed_wr((1, 1), 1)
    assert t == seed_w1((1, 1), 1)
    p = MasterProblem(SL3, [Weight((1, 1)), fundamental_weight(SL3, 2)], (0, 1), ZERO_ONE)
    assert bethe_residual(p, t) == (0,)


def test_seed_sl4_w2_examples():
    assert seed_sl4_w2((1, 1, 1), (1, 1, 1)) == (Fraction(5, 12), Fraction(5, 6), Fraction(5, 12))
    t = seed_sl4_w2((1, 1, 1), (1, 2, 1))
    assert t[0] == t[3] == Fraction(5, 8)
    p = MasterProblem(SL4, [Weight((1, 1, 1)), fundamental_weight(SL4, 2)], (1, 2, 1), ZERO_ONE)
    assert all(x == 0 for x in bethe_residual(p, t))
    # delegation for the short deltas
    assert seed_sl4_w2((2, 1, 0), (0, 1, 0)) == seed_w1((1,), 1)
    with pytest.raises(ValueError):
        seed_sl4_w2((1, 1, 1), (1, 0, 0))
    with pytest.raises(ValueError):
        seed_sl4_w2((0, 0, 0), (1, 2, 1))


def test_seed_sl4_quadratic_case_irrational():
    found = False
    for lam in itertools.product(range(4), repeat=3):
        mu = Weight(lam) + fundamental_weight(SL4, 2) - alpha_of(SL4, (1, 2, 1))
        if not is_dominant_integral(SL4, mu):
            continue
        t = seed_sl4_w2(lam, (1, 2, 1))
        found |= isinstance(t[1], QuadraticNumber) and t[1].b != 0
    assert found


def test_newton_examples():
    w = fundamental_weight(SL2, 1)
    p = MasterProblem(SL2, [w, w], (1,), ZERO_ONE)
    cp = newton_refine(p, (Fraction(1, 2),))
    assert cp.exact and cp.t == (Fraction(1, 2),) and cp.iterations == 0
    pf = MasterProblem(SL2, [w, w], (1,), (0.0, 1.0))
    cp = newton_refine(pf, (0.4,))
    assert abs(cp.t[0] - 0.5) < 1e-14 and cp.residual_norm < 1e-12 and cp.nondegenerate
    with pytest.raises(SingularPointError):
        newton_refine(pf, (0.0,))
    with pytest.raises(NewtonError):
        newton_refine(pf, (0.4,), SolverOptions(max_iter=1, tol=1e-300))


def test_options_validation():
    with pytest.raises(ValueError):
        SolverOptions(tol=0)
    with pytest.raises(ValueError):
        SolverOptions(eps0=2.0)
    assert SolverOptions().as_dict()["merge_tol"] == 1e-8


def test_continue_path_single_step_is_newton():
    w = fundamental_weight(SL2, 1)
    plan = RescalingPlan(SL2, (w, w), ((0,), (1,)), (0.0, 1.0), (0.0, 0.0), (1,), ((0,), (0,)))
    p = plan.problem_at(1.0)
    cp = continue_path(p, plan, ((0.45,), [[], []]), SolverOptions(eps0=1.0), eps_start=1.0)
    assert abs(cp.t[0] - 0.5) < 1e-13


def test_continue_path_type_zero():
    # the cluster {z1, z2} carries the variable; it is tracked into z = (0, 1, 3)
    w = fundamental_weight(SL2, 1)
    plan = RescalingPlan(SL2, (w, w, w), ((0, 1), (2,)), (0.5, 3.0), (-0.5, 0.5, 0.0), (0,), ((1,), (0,)))
    target = plan.problem_at(1.0)
    cp = continue_path(target, plan, ((), [[0.0], []]))
    assert cp.residual_norm < 1e-12
    assert abs(bethe_residual(target, cp.t)[0]) < 1e-12


def test_continue_path_type_m_adds_colors():
    # inner cluster: sl3 (w1, w1) with l = (1, 0); outer: V_mu (x) V_w1, mu = w2, with the seed for l = (1, 1)
    w = fundamental_weight(SL3, 1)
    plan = RescalingPlan(SL3, (w, w, w), ((0, 1), (2,)), (0.0, 1.0), (-0.5, 0.5, 0.0), (1, 1), ((1, 0), (0, 0)))
    mu = plan.cluster_weight(0)
    assert mu == Weight((0, 1))
    u0 = seed_w1(mu, 2)
    target = plan.problem_at(1.0)
    assert target.l == (2, 1)
    cp = continue_path(target, plan, (tuple(float(x) for x in u0), [[0.0], []]))
    assert cp.residual_norm < 1e-12 and cp.nondegenerate


def test_solve_two_points_is_the_seed():
    w = fundamental_weight(SL3, 1)
    res = solve_all(SL3, (w, w), (1, 0), ZERO_ONE)
    assert len(res) == 1 and res[0].exact and res[0].t == seed_w1((1, 0), 1)


@pytest.mark.parametrize("sys,k,n,l,expected", [
    (SL2, 1, 4, (2,), 2),
    (SL3, 1, 3, (2, 1), 1),
    (SL2, 1, 5, (2,), 5),
    (SL3, 1, 4, (2, 1), 3),
])
def test_solve_counts(sys, k, n, l, expected):
    w = fundamental_weight(sys, k)
    res = solve_all(sys, (w,) * n, l, opts=SolverOptions(seed=3))
    assert len(res) == expected == res.expected
    for cp in res:
        assert cp.residual_norm < 1e-10 and cp.nondegenerate


SL4_MIXES = [
    ((1, 2), (1, 1, 0)), ((2, 2), (0, 1, 0)), ((2, 2), (1, 2, 1)), ((1, 2, 3), (1, 1, 1)),
    ((2, 2, 2), (1, 2, 1)), ((2, 1, 3, 2), (1, 2, 1)), ((3, 2, 1), (1, 1, 1)),
]


@pytest.mark.parametrize("ks,l", SL4_MIXES)
def test_solve_sl4_with_second_fundamental(ks, l):
    ws = tuple(fundamental_weight(SL4, k) for k in ks)
    res = solve_all(SL4, ws, l, opts=SolverOptions(seed=1))
    assert res.matches
    assert all(cp.residual_norm < 1e-10 for cp in res)


@pytest.mark.parametrize("ks,l", [((1, 1, 4), (1, 1, 1, 1)), ((1, 4, 4), (1, 1, 1, 1)), ((1, 1, 1), (2, 1, 0, 0))])
def test_solve_sl5(ks, l):
    ws = tuple(fundamental_weight(SL5, k) for k in ks)
    res = solve_all(SL5, ws, l, opts=SolverOptions(seed=2))
    assert res.matches


def test_solve_rejects_bad_input():
    w = fundamental_weight(SL2, 1)
    with pytest.raises(ValueError):
        solve_all(SL2, (w, w), (2,))
    with pytest.raises(ValueError):
        solve_all(SL2, (w * 2, w), (1,))
    with pytest.raises(ValueError):
        solve_all(SL5, (fundamental_weight(SL5, 2),) * 2, (0, 1, 0, 0))


def test_solve_is_deterministic():
    w = fundamental_weight(SL3, 1)
    a = solve_all(SL3, (w,) * 4, (2, 1), opts=SolverOptions(seed=11))
    b = solve_all(SL3, (w,) * 4, (2, 1), opts=SolverOptions(seed=11))
    assert a.z == b.z
    assert [cp.canonical for cp in a] == [cp.canonical for cp in b]


def test_orbit_count_never_exceeds_multiplicity():
    # non-generic points: z symmetric under t -> -t can only lose solutions
    w = fundamental_weight(SL2, 1)
    res = solve_all(SL2, (w,) * 4, (2,), (-1.0, 1.0, -2.0, 2.0), SolverOptions(strict=False))
    assert len(res) <= sing_dim(SL2, (w,) * 4, Weight((0,)))


def test_dedupe_merges_orbit_mates():
    w = fundamental_weight(SL2, 1)
    p = MasterProblem(SL2, (w,) * 4, (2,), (0.0, 1.0, 2.5, -1.0 + 1j))
    res = solve_all(SL2, (w,) * 4, (2,), p.z)
    cp = res[0]
    swapped = CriticalPoint.from_point(p, tuple(reversed(cp.t)))
    assert len(dedupe_orbits([cp, swapped], 1e-8)) == 1


@pytest.mark.parametrize("plan_args,subs,exp", [
    # type 0: cluster carries one variable
    (((0, 1), (2,)), ((), [[0.0], []]), 1),
    # type m: two outer variables, one in the cluster
    (((0, 1), (2,)), None, 1),
])
def test_hessian_asymptotic_law(plan_args, subs, exp):
    sys = SL2 if subs is not None else SL3
    w = fundamental_weight(sys, 1)
    if subs is not None:
        plan = RescalingPlan(sys, (w, w, w), plan_args, (0.0, 1.0), (-0.5, 0.5, 0.0), (0,), ((1,), (0,)))
    else:
        plan = RescalingPlan(sys, (w, w, w), plan_args, (0.0, 1.0), (-0.5, 0.5, 0.0), (1, 1), ((1, 0), (0, 0)))
        subs = (tuple(float(x) for x in seed_w1(plan.cluster_weight(0), 2)), [[0.0], []])
    assert plan.exponent == exp
    eps = (1e-2, 1e-3, 1e-4)
    fam = track_family(plan, subs, eps)
    limit = complex(hessian_det(log_phi_hessian(plan.outer_problem(), list(subs[0])))) * \
        complex(hessian_det(log_phi_hessian(plan.inner_problem(0), list(subs[1][0]))))
    scaled = {e: e ** (2 * exp) * complex(hessian_det(log_phi_hessian(prob, list(t)))) for e, prob, t in fam.points}
    assert abs(scaled[1e-4] - scaled[1e-3]) / abs(scaled[1e-4]) < 1e-3
    assert abs(scaled[1e-4] - limit) / abs(limit) < 1e-3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_random_seeds_sl2(seed):
    w = fundamental_weight(SL2, 1)
    res = solve_all(SL2, (w,) * 5, (2,), opts=SolverOptions(seed=seed))
    assert len(res) == 5
    for cp in res:
        assert cp.canonical == tuple(sorted(cp.t, key=lambda x: (x.real, x.imag)))
