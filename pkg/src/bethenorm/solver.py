"""Critical points of master functions by closed-form seeds and rescaling
homotopies.

All critical points for ``Lambda_1, ..., Lambda_n`` are produced
recursively.  The first ``n-1`` points are squeezed into a cluster around a
center ``c``: ``z_s = c + eps*y_s``.  As ``eps -> 0`` a critical point splits
into a critical point ``u^1`` of the clustered problem (variables
``t = c + eps*u^1``) and a critical point ``u^0`` of a two-point problem
``V_mu (x) V_{Lambda_n}`` at ``(c, z_n)``, for which closed forms are known
when ``Lambda_n`` is ``w_1``, ``w_r`` or (for ``sl_4``) ``w_2``.  Every
admissible split is assembled at a small ``eps`` and tracked by Newton's
method to ``eps = 1``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .exact import QuadraticNumber, is_exact, sqrt_rational
from .lie import RootSystem, Weight, alpha_of, fundamental_weight, is_dominant_integral
from .master import (
    CriticalPoint,
    MasterProblem,
    SingularPointError,
    _scale,
    bethe_residual,
    canonical_form,
    is_exact_point,
    log_phi_hessian,
)
from .multiplicity import sing_dim

__all__ = [
    "SolverOptions",
    "RescalingPlan",
    "TrackedFamily",
    "SolveResult",
    "NewtonError",
    "PathError",
    "SolverError",
    "CountMismatchWarning",
    "seed_w1",
    "seed_wr",
    "seed_sl4_w2",
    "SL4_W2_DELTAS",
    "newton_refine",
    "continue_path",
    "track_family",
    "solve_all",
    "two_point_splits",
    "dedupe_orbits",
    "sample_generic_z",
]


class NewtonError(RuntimeError):
    pass


class PathError(RuntimeError):
    pass


class SolverError(RuntimeError):
    pass


class CountMismatchWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SolverOptions:
    tol: float = 1e-12
    max_iter: int = 100
    eps0: float = 1e-3
    eps_steps: int = 40
    merge_tol: float = 1e-8
    seed: int | None = 0
    trust: float = 0.3
    max_halvings: int = 14
    center_retries: int = 4
    resample_attempts: int = 6
    det_threshold: float = 1e-10
    strict: bool = True

    def __post_init__(self):
        for name in ("tol", "eps0", "merge_tol", "trust", "det_threshold"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.eps0 > 1:
            raise ValueError("eps0 must not exceed 1")
        if self.eps_steps < 1 or self.max_iter < 1:
            raise ValueError("eps_steps and max_iter must be positive")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


# ---------------------------------------------------------------------------
# closed-form seeds (points z = (0, 1))
# ---------------------------------------------------------------------------

def _ints(lam) -> list[int]:
    out = []
    for c in lam:
        f = Fraction(c)
        if f.denominator != 1 or f < 0:
            raise ValueError(f"{tuple(lam)} is not dominant integral")
        out.append(int(f))
    return out


def _check_two_point(lam, second: int, l) -> None:
    r = len(lam)
    sys = _type_a(r)
    mu = Weight(lam) + fundamental_weight(sys, second) - alpha_of(sys, l)
    if not is_dominant_integral(sys, mu):
        raise ValueError(f"lam + w_{second} - alpha(l) = {mu.label()} is not dominant")


_SYSTEMS: dict = {}


def _type_a(r: int):
    from .lie import RootSystemA

    if r not in _SYSTEMS:
        _SYSTEMS[r] = RootSystemA(r)
    return _SYSTEMS[r]


def seed_w1(lam, i: int) -> tuple:
    """Critical point for ``V_lam (x) V_{w_1}`` at ``z = (0, 1)`` with
    ``l = (1, ..., 1, 0, ..., 0)`` (``i`` ones); ``t_j`` has color ``j``."""
    lam = _ints(lam)
    r = len(lam)
    if not 0 <= i <= r:
        raise ValueError(f"i must lie in 0..{r}")
    _check_two_point(lam, 1, [1] * i + [0] * (r - i))
    out = []
    t = Fraction(1)
    for m in range(1, i + 1):
        s = sum(lam[m - 1:i]) + i - m
        t *= Fraction(s, s + 1)
        out.append(t)
    return tuple(out)


def seed_wr(lam, i: int) -> tuple:
    """Critical point for ``V_lam (x) V_{w_r}`` at ``z = (0, 1)`` with the
    last ``i`` entries of ``l`` equal to one.  Obtained from :func:`seed_w1`
    through the diagram automorphism ``alpha_j <-> alpha_{r+1-j}``."""
    lam = _ints(lam)
    r = len(lam)
    if not 0 <= i <= r:
        raise ValueError(f"i must lie in 0..{r}")
    _check_two_point(lam, r, [0] * (r - i) + [1] * i)
    return tuple(reversed(seed_w1(list(reversed(lam)), i)))


SL4_W2_DELTAS = ((0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1), (1, 2, 1))


def seed_sl4_w2(lam, delta) -> tuple:
    """Critical point for ``sl_4``, ``V_lam (x) V_{w_2}`` at ``z = (0, 1)``.

    ``delta`` is given by its root coordinates, one of
    :data:`SL4_W2_DELTAS` (or ``(0, 0, 0)``, giving the empty point).
    Coordinates are ordered by color; for ``delta = a1+2a2+a3`` the two
    color-2 coordinates are the roots of a quadratic and may lie in a
    quadratic extension.
    """
    lam = _ints(lam)
    if len(lam) != 3:
        raise ValueError("seed_sl4_w2 needs an sl_4 weight")
    delta = tuple(int(x) for x in delta)
    if delta == (0, 0, 0):
        return ()
    if delta not in SL4_W2_DELTAS:
        raise ValueError(f"delta {delta} is not one of {SL4_W2_DELTAS}")
    _check_two_point(lam, 2, delta)
    l1, l2, l3 = lam
    if delta == (0, 1, 0):
        return seed_w1([l2], 1)
    if delta == (1, 1, 0):
        return seed_wr([l1, l2], 2)
    if delta == (0, 1, 1):
        return seed_w1([l2, l3], 2)
    S = l1 + l2 + l3
    if delta == (1, 1, 1):
        return (
            Fraction(l1 * (S + 2), (l1 + 1) * (S + 3)),
            Fraction(S + 2, S + 3),
            Fraction(l3 * (S + 2), (l3 + 1) * (S + 3)),
        )
    t1 = Fraction((l1 + l2 + 1) * (S + 2), (l1 + l2 + 2) * (S + 3))
    t4 = Fraction((l2 + l3 + 1) * (S + 2), (l2 + l3 + 2) * (S + 3))
    den = (l2 + 1) * (l1 + l2 + 2) * (l2 + l3 + 2) * (S + 3)
    poly = l1 * l3 + 2 * l1 * l2 + 2 * l2 * l3 + 2 * l2 * l2 + 2 * l1 + 6 * l2 + 2 * l3 + 4
    s = 2 - Fraction((l1 + 2 * l2 + l3 + 4) * poly, den)
    p = Fraction(l2 * (l1 + l2 + 1) * (l2 + l3 + 1) * (S + 2), den)
    root = sqrt_rational(s * s - 4 * p)
    return (t1, (s - root) / 2, (s + root) / 2, t4)


def two_point_splits(sys: RootSystem, last: Weight) -> list:
    """``(l0, seed)`` pairs for peeling a factor ``V_last``: ``l0`` runs over
    the root coordinates of the admissible ``delta`` (including 0) and
    ``seed(mu)`` gives the closed-form point of ``V_mu (x) V_last``."""
    r = sys.rank
    last = Weight(last)
    k = next((i + 1 for i, c in enumerate(last) if c != 0), None)
    if k is None or sum(last) != 1:
        raise ValueError(f"{last.label()} is not a fundamental weight")
    if k == 1:
        return [(tuple([1] * m + [0] * (r - m)), (lambda mu, m=m: seed_w1(mu, m))) for m in range(r + 1)]
    if k == r:
        return [(tuple([0] * (r - m) + [1] * m), (lambda mu, m=m: seed_wr(mu, m))) for m in range(r + 1)]
    if r == 3 and k == 2:
        deltas = ((0, 0, 0),) + SL4_W2_DELTAS
        return [(d, (lambda mu, d=d: seed_sl4_w2(mu, d))) for d in deltas]
    raise ValueError(f"no closed-form seeds for w_{k} of sl_{r+1}")


# ---------------------------------------------------------------------------
# Newton
# ---------------------------------------------------------------------------

def _term_scale(p: MasterProblem, t: np.ndarray) -> float:
    z = np.array([complex(x) for x in p.z])
    m = 0.0
    if len(t):
        dz = np.abs(t[:, None] - z[None, :])
        dt = np.abs(t[:, None] - t[None, :])
        np.fill_diagonal(dt, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            m = max(m, float(np.max(np.where(p._Bf != 0, np.abs(p._Bf) / dz, 0.0), initial=0.0)))
            m = max(m, float(np.max(np.where(p._Cf != 0, np.abs(p._Cf) / dt, 0.0), initial=0.0)))
    return m


def _residual_floor(p: MasterProblem, t: np.ndarray) -> float:
    return 64 * np.finfo(float).eps * _term_scale(p, t)


def newton_refine(p: MasterProblem, t0, opts: SolverOptions = SolverOptions(), max_iter: int | None = None) -> CriticalPoint:
    """Damped Newton iteration (step halving on the residual norm).  An
    exact input that already solves the equations is returned exactly."""
    t0 = tuple(t0)
    if is_exact_point(p, t0):
        R = bethe_residual(p, t0)
        if all(x == 0 for x in R):
            return CriticalPoint.from_point(p, t0, opts.det_threshold)
    t = np.array([complex(x) for x in t0], dtype=complex)
    if len(t) == 0:
        return CriticalPoint.from_point(p, (), opts.det_threshold)
    R = bethe_residual(p, t)
    rn = float(np.max(np.abs(R)))
    its = max_iter or opts.max_iter
    for k in range(its + 1):
        if rn < opts.tol or rn <= _residual_floor(p, t):
            cp = CriticalPoint.from_point(p, tuple(t), opts.det_threshold)
            cp.iterations = k
            return cp
        if k == its:
            break
        H = log_phi_hessian(p, t)
        try:
            dt = np.linalg.solve(H, -R)
        except np.linalg.LinAlgError as exc:
            raise NewtonError("singular Hessian during Newton iteration") from exc
        if not np.all(np.isfinite(dt)):
            raise NewtonError("non-finite Newton step")
        lam = 1.0
        while lam > 1e-4:
            tn = t + lam * dt
            try:
                Rn = bethe_residual(p, tn)
            except SingularPointError:
                lam /= 2
                continue
            rnn = float(np.max(np.abs(Rn)))
            if rnn < (1 - 1e-4 * lam) * rn or rnn <= _residual_floor(p, tn):
                break
            lam /= 2
        else:
            if rn <= 1e3 * _residual_floor(p, t):
                cp = CriticalPoint.from_point(p, tuple(t), opts.det_threshold)
                cp.iterations = k
                return cp
            raise NewtonError(f"line search failed at residual {rn:.3e}")
        t, R, rn = tn, Rn, rnn
    raise NewtonError(f"no convergence in {its} iterations (residual {rn:.3e})")


# ---------------------------------------------------------------------------
# rescaling plans and continuation
# ---------------------------------------------------------------------------

@dataclass
class RescalingPlan:
    """Rescaling of type ``(l^0, l^1, ..., l^k)``.

    ``clusters[p]`` lists the (0-based) indices of the points in cluster
    ``p``; cluster ``p`` sits at ``centers[p]`` (the points ``y^0``) and its
    points are ``z_s = centers[p] + eps*offsets[s]``.  Variables split into
    ``l^0`` outer ones, ``t = u^0``, and ``l^p`` ones per cluster,
    ``t = centers[p] + eps*u^p``.  Singleton clusters carry no variables.
    """

    sys: RootSystem
    weights: tuple
    clusters: tuple
    centers: tuple
    offsets: tuple
    l_outer: tuple
    l_clusters: tuple

    def __post_init__(self):
        r = self.sys.rank
        if sorted(s for c in self.clusters for s in c) != list(range(len(self.weights))):
            raise ValueError("clusters must partition the points")
        for c, lp in zip(self.clusters, self.l_clusters):
            if len(c) == 1 and any(lp):
                raise ValueError("a singleton cluster carries no variables")
        self.l_outer = tuple(int(x) for x in self.l_outer)
        self.l_clusters = tuple(tuple(int(x) for x in lp) for lp in self.l_clusters)
        self.l = tuple(self.l_outer[i] + sum(lp[i] for lp in self.l_clusters) for i in range(r))
        # layout: within each color, outer variables first, then cluster by cluster
        self.layout = []
        for i in range(r):
            for k in range(self.l_outer[i]):
                self.layout.append((None, i, k))
            for p, lp in enumerate(self.l_clusters):
                for k in range(lp[i]):
                    self.layout.append((p, i, k))

    @property
    def exponent(self) -> int:
        """``l^1 + ... + l^k`` (total number of clustered variables)."""
        return sum(sum(lp) for lp in self.l_clusters)

    def cluster_of(self, s: int) -> int:
        return next(p for p, c in enumerate(self.clusters) if s in c)

    def cluster_size(self, s: int) -> int:
        return len(self.clusters[self.cluster_of(s)])

    def z_at(self, eps) -> tuple:
        z = [None] * len(self.weights)
        for p, c in enumerate(self.clusters):
            for s in c:
                z[s] = self.centers[p] + eps * self.offsets[s]
        return tuple(z)

    def problem_at(self, eps) -> MasterProblem:
        return MasterProblem(self.sys, self.weights, self.l, self.z_at(eps))

    def cluster_weight(self, p: int) -> Weight:
        w = Weight.zero(self.sys.rank)
        for s in self.clusters[p]:
            w = w + Weight(self.weights[s])
        return w - alpha_of(self.sys, self.l_clusters[p])

    def outer_problem(self) -> MasterProblem:
        """Problem for ``u^0``: weights ``mu_p`` at the centers."""
        ws = [self.cluster_weight(p) for p in range(len(self.clusters))]
        return MasterProblem(self.sys, ws, self.l_outer, self.centers)

    def inner_problem(self, p: int) -> MasterProblem:
        c = self.clusters[p]
        return MasterProblem(self.sys, [self.weights[s] for s in c], self.l_clusters[p], [self.offsets[s] for s in c])

    def _split(self, values) -> tuple:
        """Split a full coordinate list into (outer, [cluster parts])."""
        outer = [[] for _ in range(self.sys.rank)]
        parts = [[[] for _ in range(self.sys.rank)] for _ in self.clusters]
        for (p, i, _), x in zip(self.layout, values):
            (outer if p is None else parts[p])[i].append(x)
        flat = lambda by_color: [x for col in by_color for x in col]
        return flat(outer), [flat(pc) for pc in parts]

    def _join(self, outer, parts) -> list:
        r = self.sys.rank
        it_outer = self._by_color(outer, self.l_outer)
        it_parts = [self._by_color(u, lp) for u, lp in zip(parts, self.l_clusters)]
        out = []
        for p, i, k in self.layout:
            out.append(it_outer[i][k] if p is None else it_parts[p][i][k])
        return out

    @staticmethod
    def _by_color(vals, l):
        out, pos = [], 0
        for k in l:
            out.append(list(vals[pos:pos + k]))
            pos += k
        return out

    def t_at(self, u_outer, u_parts, eps) -> np.ndarray:
        parts = [[self.centers[p] + eps * x for x in u] for p, u in enumerate(u_parts)]
        return np.array([complex(x) for x in self._join(list(u_outer), parts)], dtype=complex)

    def u_of(self, t, eps) -> tuple:
        outer, parts = self._split(list(t))
        return outer, [[(x - self.centers[p]) / eps for x in u] for p, u in enumerate(parts)]


@dataclass
class TrackedFamily:
    """Critical points ``t(eps)`` of one family, with the sub-problem
    critical points it emanates from."""

    plan: RescalingPlan
    u_outer: tuple
    u_parts: tuple
    points: list = field(default_factory=list)  # (eps, problem, t)


def _local_radius(p: MasterProblem, t: np.ndarray) -> np.ndarray:
    z = np.array([complex(x) for x in p.z])
    out = np.full(len(t), np.inf)
    for i in range(len(t)):
        for s in range(p.n):
            if p._Bf[i, s] != 0:
                out[i] = min(out[i], abs(t[i] - z[s]))
        for j in range(len(t)):
            if j != i and p._Cf[i, j] != 0:
                out[i] = min(out[i], abs(t[i] - t[j]))
    return out


def _step(plan: RescalingPlan, t: np.ndarray, eps_from: float, eps_to: float, opts: SolverOptions, max_iter: int):
    outer, parts = plan.u_of(t, eps_from)
    pred = plan.t_at(outer, parts, eps_to)
    prob = plan.problem_at(eps_to)
    try:
        cp = newton_refine(prob, pred, opts, max_iter=max_iter)
    except (NewtonError, SingularPointError):
        return None
    new = cp.as_complex()
    rad = _local_radius(prob, pred)
    if np.any(np.abs(new - pred) > opts.trust * rad):
        return None
    return cp


def continue_path(p_target: MasterProblem, plan: RescalingPlan, sub_solutions, opts: SolverOptions = SolverOptions(),
                  eps_start: float | None = None, eps_end: float = 1.0, record=()) -> CriticalPoint:
    """Track the family emanating from ``sub_solutions = (u^0, [u^1, ...])``
    from ``eps_start`` (default ``opts.eps0``) to ``eps_end``.  The points
    ``z(eps_end)`` must be those of ``p_target``.  ``record`` lists epsilons
    at which the tracked point is stored in ``cp.info['family']``."""
    u_outer, u_parts = sub_solutions
    e0 = opts.eps0 if eps_start is None else eps_start
    zt = plan.z_at(eps_end)
    if any(abs(complex(a) - complex(b)) > 1e-12 * max(1.0, abs(complex(b))) for a, b in zip(zt, p_target.z)):
        raise ValueError("plan does not end at the target points")
    marks = sorted(set(float(e) for e in record) | {e0, eps_end})
    marks = [e for e in marks if min(e0, eps_end) <= e <= max(e0, eps_end)]
    if e0 > eps_end:
        marks = marks[::-1]
    family = []
    t_start = plan.t_at(u_outer, u_parts, e0)
    try:
        cp = newton_refine(plan.problem_at(e0), t_start, opts)
    except (NewtonError, SingularPointError) as exc:
        raise PathError(f"start point does not converge at eps={e0:g}") from exc
    if np.any(np.abs(cp.as_complex() - t_start) > opts.trust * _local_radius(cp.problem, t_start)):
        raise PathError(f"start point jumped at eps={e0:g}")
    t = cp.as_complex()
    if e0 in record:
        family.append((e0, cp.problem, tuple(t)))
    total_log = abs(math.log(eps_end) - math.log(e0))
    h0 = total_log / opts.eps_steps if total_log > 0 else 0.0
    sign = 1.0 if eps_end >= e0 else -1.0
    cur = e0
    for mark in marks[1:]:
        h = h0
        while cur != mark:
            nxt = math.exp(math.log(cur) + sign * h)
            if (sign > 0 and nxt >= mark) or (sign < 0 and nxt <= mark) or h == 0:
                nxt = mark
            res = _step(plan, t, cur, nxt, opts, max_iter=30)
            if res is None:
                h /= 2
                if h < h0 / 2 ** opts.max_halvings:
                    raise PathError(f"path failure near eps={cur:.3e}")
                continue
            cp, t, cur = res, res.as_complex(), nxt
            h = min(h * 1.5, h0) if h0 else 0.0
        if mark in record:
            family.append((mark, cp.problem, tuple(t)))
    # final polish against the target problem itself
    cp = newton_refine(p_target, tuple(t), opts)
    cp.info["family"] = family
    return cp


def track_family(plan: RescalingPlan, sub_solutions, epsilons, opts: SolverOptions = SolverOptions()) -> TrackedFamily:
    """Critical points of one family at each epsilon in ``epsilons`` (the
    path starts at the smallest one)."""
    eps = sorted(float(e) for e in epsilons)
    start = min(eps[0], opts.eps0)
    target = plan.problem_at(eps[-1])
    cp = continue_path(target, plan, sub_solutions, replace(opts, eps0=start), eps_start=start, eps_end=eps[-1], record=eps)
    fam = TrackedFamily(plan, tuple(sub_solutions[0]), tuple(tuple(u) for u in sub_solutions[1]))
    fam.points = sorted(cp.info["family"], key=lambda x: -x[0])
    return fam


# ---------------------------------------------------------------------------
# all critical points
# ---------------------------------------------------------------------------

def dedupe_orbits(cps, merge_tol: float) -> list:
    """Keep one representative per orbit, ordered canonically."""
    out = []
    for cp in cps:
        key = np.array([complex(x) for x in cp.canonical])
        scale = max(1.0, float(np.max(np.abs(key))) if len(key) else 1.0)
        if any(np.max(np.abs(key - np.array([complex(x) for x in o.canonical])), initial=0.0) <= merge_tol * scale for o in out):
            continue
        out.append(cp)
    out.sort(key=lambda cp: tuple((complex(x).real, complex(x).imag) for x in cp.canonical))
    return out


def _solve_level(sys, weights, l, z, opts, rng, stats) -> list:
    weights = tuple(Weight(w) for w in weights)
    p = MasterProblem(sys, weights, l, z)
    if sum(l) == 0:
        return [CriticalPoint.from_point(p, (), opts.det_threshold)]
    if not p.is_admissible or p.n == 1:
        return []
    expected = sing_dim(sys, weights, p.target_weight)
    if expected == 0:
        return []
    n = p.n
    splits = two_point_splits(sys, weights[-1])
    zc = [complex(x) for x in z]
    spread = max((abs(zc[s] - zc[0]) for s in range(n)), default=1.0) or 1.0
    found: list = []
    for attempt in range(opts.center_retries + 1):
        if n == 2 and attempt == 0 and all(is_exact(x) for x in z):
            c = z[0]
        else:
            c = complex(np.mean(zc[:-1]))
            if attempt:
                c += spread * 0.25 * complex(rng.normal(), rng.normal())
        if abs(complex(c) - zc[-1]) < 1e-3 * spread:
            continue
        inner_z = tuple((x - c) for x in z[:-1])
        cands = []
        for l0, seed in splits:
            l1 = tuple(a - b for a, b in zip(l, l0))
            if any(x < 0 for x in l1):
                continue
            head = Weight.zero(sys.rank)
            for w in weights[:-1]:
                head = head + w
            mu = head - alpha_of(sys, l1)
            if not is_dominant_integral(sys, mu):
                continue
            target = mu + weights[-1] - alpha_of(sys, l0)
            if not is_dominant_integral(sys, target):
                continue
            inner = _solve_level(sys, weights[:-1], l1, inner_z, opts, rng, stats)
            if not inner:
                continue
            u0_seed = seed([int(x) for x in mu])
            u0 = tuple(c + (z[-1] - c) * x for x in u0_seed)
            plan = RescalingPlan(sys, weights, (tuple(range(n - 1)), (n - 1,)), (c, z[-1]),
                                 tuple(inner_z) + (0,), l0, (l1, (0,) * sys.rank))
            for icp in inner:
                if n == 2:
                    # nothing to rescale: the mapped seed solves the target
                    try:
                        cands.append(newton_refine(p, tuple(plan._join(list(u0), [[], []])), opts))
                    except (NewtonError, SingularPointError):
                        stats["failures"] += 1
                    continue
                try:
                    cp = continue_path(p, plan, (u0, [list(icp.t), []]), opts)
                    stats["paths"] += 1
                    cands.append(cp)
                except (PathError, NewtonError, SingularPointError):
                    stats["failures"] += 1
        found = dedupe_orbits(found + cands, opts.merge_tol)
        if len(found) >= expected:
            break
    stats.setdefault("levels", []).append((len(found), expected))
    return found


def sample_generic_z(n: int, rng, radius: float = 1.0, min_sep: float = 0.3) -> tuple:
    """``n`` points uniform in a disk with pairwise distance at least
    ``min_sep*radius``."""
    pts: list = []
    for _ in range(100000):
        if len(pts) == n:
            break
        rad = radius * math.sqrt(rng.uniform())
        ang = 2 * math.pi * rng.uniform()
        w = complex(rad * math.cos(ang), rad * math.sin(ang))
        if all(abs(w - q) >= min_sep * radius for q in pts):
            pts.append(w)
    if len(pts) < n:
        raise SolverError("could not sample well-separated points")
    return tuple(pts)


class SolveResult(list):
    """List of orbit representatives with bookkeeping attributes:
    ``z`` (points actually used), ``expected`` multiplicity, ``resamples``
    and ``stats``."""

    def __init__(self, items, z, expected, resamples, stats):
        super().__init__(items)
        self.z = z
        self.expected = expected
        self.resamples = resamples
        self.stats = stats

    @property
    def matches(self) -> bool:
        return len(self) == self.expected


def _check_supported(sys, weights):
    r = sys.rank
    for w in weights:
        w = Weight(w)
        nz = [i for i, c in enumerate(w) if c != 0]
        if len(nz) != 1 or w[nz[0]] != 1:
            raise ValueError(f"{w.label()} is not a fundamental weight")
        k = nz[0] + 1
        if k not in (1, r) and r != 3:
            raise ValueError(f"w_{k} is supported only for sl_4; use w_1 or w_{r}")


def solve_all(sys: RootSystem, weights, l, z=None, opts: SolverOptions = SolverOptions()) -> SolveResult:
    """All critical points (one per orbit of same-color permutations) of
    the master function for fundamental weights ``weights`` at ``z``.

    ``z=None`` samples generic points.  When the number of orbits found
    differs from the multiplicity of ``V_{Lambda - alpha(l)}``, the points are
    resampled (with the seeded generator) and a warning names the points used.
    """
    weights = tuple(Weight(w) for w in weights)
    l = tuple(int(x) for x in l)
    _check_supported(sys, weights)
    rng = np.random.default_rng(opts.seed)
    n = len(weights)
    if z is None:
        z = sample_generic_z(n, rng)
    z = tuple(z)
    p = MasterProblem(sys, weights, l, z)
    if not p.is_admissible:
        raise ValueError(f"Lambda - alpha(l) = {p.target_weight.label()} is not dominant integral")
    expected = sing_dim(sys, weights, p.target_weight)
    stats = {"paths": 0, "failures": 0}
    first_z = z
    for attempt in range(opts.resample_attempts + 1):
        found = _solve_level(sys, weights, l, z, opts, rng, stats)
        found = [cp for cp in found if cp.residual_norm < max(opts.tol, 1e3 * _residual_floor(cp.problem, cp.as_complex()))]
        if len(found) == expected:
            break
        if attempt < opts.resample_attempts:
            z = sample_generic_z(n, rng, radius=max(1.0, max(abs(complex(x)) for x in first_z)))
    if z != first_z:
        warnings.warn(f"points resampled {attempt} time(s); results are for z = {tuple(complex(x) for x in z)}",
                      CountMismatchWarning, stacklevel=2)
    if len(found) != expected:
        msg = f"found {len(found)} orbits, expected {expected}"
        if opts.strict:
            raise SolverError(msg)
        warnings.warn(msg, CountMismatchWarning, stacklevel=2)
    return SolveResult(found, z, expected, attempt, stats)
