"""The universal weight function and Bethe vectors.

``omega(t, z)`` is the sum over ordered distributions of the variables
among the tensor factors: a factor ``s`` receiving the sequence
``a_1, ..., a_j`` contributes

    F_{c(a_1)} ... F_{c(a_j)} v_s / ((t_{a_1}-t_{a_2}) ... (t_{a_{j-1}}-t_{a_j}) (t_{a_j}-z_s)).

:func:`omega_weight_function` evaluates this through a subset recursion per
factor followed by a subset convolution over factors, which avoids the
factorial blow-up of the literal double sum.  The literal sum over index
sequences and color-preserving permutations is available through
:func:`weight_function_coefficients` and is used as an independent check.
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from .exact import is_exact
from .master import (
    COINCIDENCE_TOL,
    CriticalPoint,
    MasterProblem,
    SingularPointError,
    _scale,
    hessian_det,
    is_exact_point,
    log_phi_hessian,
)
from .reps import (
    TensorVector,
    iterated_singular_vector,
    realization_for,
    shapovalov_pair,
    tensor,
)

__all__ = [
    "enumerate_P",
    "omega_weight_function",
    "weight_function_coefficients",
    "bethe_vector",
    "verify_bethe",
    "BetheReport",
    "problem_factors",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 8


def enumerate_P(l, n: int, cap: int = ENUMERATION_CAP) -> list[tuple]:
    """All index sequences ``I``: the color multiset of ``l`` arranged in some
    order and cut into ``n`` consecutive (possibly empty) blocks."""
    l = [int(x) for x in l]
    total = sum(l)
    if total > cap:
        raise ValueError(f"|l| = {total} exceeds the enumeration cap {cap}")
    if n < 1:
        raise ValueError("need at least one block")
    letters = [i + 1 for i, k in enumerate(l) for _ in range(k)]
    words = [tuple(w) for w in multiset_permutations(letters)] if letters else [()]
    cuts = [c for c in itertools.combinations_with_replacement(range(total + 1), n - 1)]
    out = []
    for w in words:
        for c in cuts:
            bounds = (0,) + c + (total,)
            out.append(tuple(w[bounds[k]:bounds[k + 1]] for k in range(n)))
    return out


def problem_factors(p: MasterProblem) -> tuple:
    return tuple(realization_for(p.sys, w) for w in p.weights)


def _inv(x, exact):
    return Fraction(1) / x if exact else 1.0 / x


def _is_zero(arr) -> bool:
    return not np.any(arr != 0)


def _omega_direct(p: MasterProblem, t, factors, exact: bool) -> TensorVector:
    L = p.num_vars
    n = p.n
    z = p.z if exact else tuple(complex(x) for x in p.z)
    t = tuple(t) if exact else tuple(complex(x) for x in t)
    full = (1 << L) - 1
    by_popcount = sorted(range(1, full + 1), key=lambda m: bin(m).count("1"))
    partial = {0: np.array(Fraction(1) if exact else 1.0 + 0j, dtype=object if exact else complex)}
    for s, f in enumerate(factors):
        v = np.empty(f.dim, dtype=object) if exact else np.zeros(f.dim, dtype=complex)
        if exact:
            v.fill(Fraction(0))
        v[f.hw_index] = 1
        # h[(mask, a)]: sum over sequences on `mask` starting with a
        h: dict = {}
        tables = {0: v}
        for mask in by_popcount:
            acc_mask = None
            for a in range(L):
                if not mask >> a & 1:
                    continue
                rest = mask ^ (1 << a)
                Fa = f.dense("F", p.colors[a], exact)
                if rest == 0:
                    u = Fa @ v
                    if _is_zero(u):
                        continue
                    d = t[a] - z[s]
                    if d == 0:
                        raise SingularPointError(f"t_{a+1} hits the pole z_{s+1}")
                    u = u * _inv(d, exact)
                else:
                    inner = None
                    for b in range(L):
                        hb = h.get((rest, b)) if rest >> b & 1 else None
                        if hb is None:
                            continue
                        d = t[a] - t[b]
                        if d == 0:
                            raise SingularPointError(f"t_{a+1} hits t_{b+1}")
                        term = hb * _inv(d, exact)
                        inner = term if inner is None else inner + term
                    if inner is None:
                        continue
                    u = Fa @ inner
                    if _is_zero(u):
                        continue
                h[(mask, a)] = u
                acc_mask = u if acc_mask is None else acc_mask + u
            if acc_mask is not None:
                tables[mask] = acc_mask
        nxt: dict = {}
        last = s == n - 1
        for m_prev, P in partial.items():
            for A, vec in tables.items():
                if m_prev & A:
                    continue
                m = m_prev | A
                if last and m != full:
                    continue
                term = np.multiply.outer(P, vec)
                nxt[m] = term if m not in nxt else nxt[m] + term
        partial = nxt
    data = partial.get(full)
    if data is None:
        return TensorVector.zeros(factors, exact)
    return TensorVector(factors, data)


def _zero_pairing_coincidences(p: MasterProblem, t, exact: bool) -> bool:
    tol = 0.0 if exact else COINCIDENCE_TOL * 100 * _scale(p, t)
    for i in range(p.num_vars):
        for j in range(i):
            if p.C[i][j] == 0:
                d = t[i] - t[j]
                if (d == 0) if exact else abs(complex(d)) <= tol:
                    return True
    return False


def _pole_distance(p: MasterProblem, t) -> float:
    t = [complex(x) for x in t]
    z = [complex(x) for x in p.z]
    out = []
    for i in range(p.num_vars):
        out += [abs(t[i] - z[s]) for s in range(p.n) if p.B[i][s] != 0]
        out += [abs(t[i] - t[j]) for j in range(p.num_vars) if j != i and p.C[i][j] != 0]
    return min(out, default=1.0)


def omega_weight_function(p: MasterProblem, t, factors=None, regularize: bool = True, nodes: int = 24) -> TensorVector:
    """Evaluate the universal weight function at ``t``.

    Exact input (rational or quadratic ``t`` and ``z``) gives an exact
    vector.  If two variables whose colors pair to zero coincide, the
    individual terms are singular but their sum is not; the value is then the
    mean over a small circle around ``t`` (exact for the holomorphic
    extension up to an error geometric in ``nodes``), in floating point.
    """
    t = tuple(t)
    if len(t) != p.num_vars:
        raise ValueError(f"expected {p.num_vars} coordinates, got {len(t)}")
    factors = problem_factors(p) if factors is None else tuple(factors)
    exact = is_exact_point(p, t)
    if not _zero_pairing_coincidences(p, t, exact):
        return _omega_direct(p, t, factors, exact)
    if not regularize:
        raise SingularPointError("variables with zero pairing coincide; pass regularize=True")
    tc = np.array([complex(x) for x in t])
    direction = np.arange(1, p.num_vars + 1, dtype=float)
    span = direction.max() - direction.min() + direction.max()
    rho = 0.05 * _pole_distance(p, tc) / span
    acc = None
    for k in range(nodes):
        w = rho * cmath.exp(2j * cmath.pi * (k + 0.5) / nodes)
        val = _omega_direct(p, tuple(tc + w * direction), factors, False)
        acc = val if acc is None else acc + val
    return acc * (1.0 / nodes)


def weight_function_coefficients(p: MasterProblem, t, cap: int = ENUMERATION_CAP) -> dict:
    """``{I: sum_{sigma in Sigma(I)} omega_{I,sigma}(t, z)}`` by the literal
    double sum; ``Sigma(I)`` is realized as all color-preserving ways of
    placing the variables into the slots of ``I``."""
    exact = is_exact_point(p, t)
    t = tuple(t) if exact else tuple(complex(x) for x in t)
    z = p.z if exact else tuple(complex(x) for x in p.z)
    by_color = {}
    for a, c in enumerate(p.colors):
        by_color.setdefault(c, []).append(a)
    one = Fraction(1) if exact else 1.0 + 0j
    out = {}
    for I in enumerate_P(p.l, p.n, cap):
        slots = {}
        pos = 0
        for s, block in enumerate(I):
            for k, c in enumerate(block):
                slots.setdefault(c, []).append((s, k))
        total = 0 * one
        colors = sorted(by_color)
        for perms in itertools.product(*(itertools.permutations(by_color[c]) for c in colors)):
            seq = [[None] * len(block) for block in I]
            for c, perm in zip(colors, perms):
                for (s, k), a in zip(slots[c], perm):
                    seq[s][k] = a
            term = one
            for s, block in enumerate(seq):
                for k in range(len(block)):
                    nxt = t[block[k + 1]] if k + 1 < len(block) else z[s]
                    term = term * _inv(t[block[k]] - nxt, exact)
            total = total + term
        out[I] = total
    return out


def bethe_vector(p: MasterProblem, t):
    """``(V, omega(t, z))`` with ``V`` the tensor product realization."""
    factors = problem_factors(p)
    return tensor(factors), omega_weight_function(p, t, factors)


@dataclass
class BetheReport:
    """Outcome of checking one critical point: singularity, eigenvector
    property and the norm/Hessian comparison.  Exact fields hold exact numbers when the point is exact."""

    is_zero: bool
    is_singular: bool
    singular_residual: float
    eigenvalues: list
    eigen_residuals: list
    eigenvalue_sum: complex
    norm: object
    hessian_det: object
    ratio: complex | None
    norm_matches_hessian: bool
    degenerate: bool
    exact: bool
    omega: TensorVector = field(repr=False, default=None)

    @property
    def ok(self) -> bool:
        return (not self.is_zero) and self.is_singular and self.norm_matches_hessian


def verify_bethe(p: MasterProblem, cp, V=None, rtol: float = 1e-8, eigen: bool = True) -> BetheReport:
    """Check that ``omega(t)`` is singular, is a common eigenvector of the
    Gaudin Hamiltonians, and that ``S(omega, omega) = det Hess log Phi``."""
    from .gaudin import eigenvalue_estimate, gaudin_apply

    t = cp.t if isinstance(cp, CriticalPoint) else tuple(cp)
    factors = problem_factors(p)
    if V is None:
        V = tensor(factors)
    w = omega_weight_function(p, t, factors)
    exact = w.exact
    wn = w.norm()
    is_zero = w.is_zero() if exact else wn == 0.0
    H = log_phi_hessian(p, t) if exact else log_phi_hessian(p, [complex(x) for x in t])
    det = hessian_det(H)
    if is_zero:
        return BetheReport(True, False, float("nan"), [], [], 0j, Fraction(0) if exact else 0j, det, None, False,
                           det == 0 if exact else abs(det) < 1e-10, exact, w)
    sing = max((w.apply("E", i).norm() / wn for i in range(1, p.sys.rank + 1)), default=0.0)
    is_singular = all(w.apply("E", i).is_zero() for i in range(1, p.sys.rank + 1)) if exact else sing < 1e-10
    norm = shapovalov_pair(V, w, w)
    eigs, eres = [], []
    if eigen:
        for s in range(p.n):
            Kw = gaudin_apply(V, p.z, s, w)
            c = eigenvalue_estimate(V, Kw, w)
            eigs.append(c)
            eres.append((Kw - w * complex(c)).norm() / wn if not exact else (Kw.to_complex() - w.to_complex() * complex(c)).norm() / wn)
    if exact:
        matches = norm == det
        ratio = complex(norm) / complex(det) if det != 0 else None
        degenerate = det == 0
    else:
        ratio = complex(norm) / complex(det) if det != 0 else None
        matches = ratio is not None and abs(ratio - 1) < rtol
        degenerate = abs(det) <= 1e-10 * _scale(p, t) ** (-2 * p.num_vars)
    return BetheReport(False, bool(is_singular), float(sing), eigs, eres, complex(sum(complex(c) for c in eigs)),
                       norm, det, ratio, bool(matches), bool(degenerate), exact, w)
