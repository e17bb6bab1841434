"""Casimir element and Gaudin Hamiltonians acting matrix-free on tensors.

The Casimir element is taken for the trace form of the defining
representation (the invariant form with ``(alpha_i, alpha_i) = 2``):

    Omega = sum_{a != b} e_ab (x) e_ba + sum_{i,j} (A^{-1})_{ij} H_i (x) H_j

where ``e_ab`` are the root vectors of ``gl_{r+1}`` restricted to ``sl_{r+1}``
and ``A`` is the Cartan matrix (the Gram matrix of the ``H_i``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import is_exact, rational_inverse
from .lie import RootSystem
from .reps import ModuleRealization, TensorVector, _apply_axis
from .sparse import SparseMatrix

__all__ = [
    "CasimirElement",
    "casimir",
    "casimir_orthonormal",
    "root_vector",
    "gaudin_apply",
    "gaudin_matrix",
    "casimir_matrix",
    "eigenvalue_estimate",
    "hamiltonian_asymptotics_check",
    "AsymptoticsReport",
]


def root_vector(V: ModuleRealization, a: int, b: int) -> SparseMatrix:
    """Action of the matrix unit ``e_ab`` (``a != b``, 0-based in ``0..r``)
    on ``V``, built from Chevalley generators by commutators."""
    if a == b:
        raise ValueError("root_vector needs a != b")
    key = ("unit", a, b)
    if key in V._cache:
        return V._cache[key]
    if b == a + 1:
        m = V.E[a]
    elif a == b + 1:
        m = V.F[b]
    elif a < b:
        m = root_vector(V, a, b - 1).commutator(V.E[b - 1])
    else:
        m = root_vector(V, a, b + 1).commutator(V.F[b])
    V._cache[key] = m
    return m


def _dense_unit(V: ModuleRealization, label, exact: bool) -> np.ndarray:
    key = ("dense", label, exact)
    if key not in V._cache:
        kind = label[0]
        if kind == "e":
            m = root_vector(V, label[1], label[2])
        elif kind == "H":
            m = V.H[label[1]]
        elif kind == "Hdual":
            inv = rational_inverse(V.sys.cartan)
            m = SparseMatrix.zeros(V.dim)
            for j in range(V.sys.rank):
                m = m + V.H[j].scale(inv[label[1]][j])
        else:
            raise KeyError(label)
        V._cache[key] = m.to_dense(object) if exact else m.to_dense(complex)
    return V._cache[key]


@dataclass
class CasimirElement:
    """``Omega = sum coef * X (x) Y`` with abstract labels: ``('e', a, b)``
    for matrix units and ``('H', i)`` / ``('Hdual', i)`` for the Cartan part
    (``Hdual_i = sum_j (A^{-1})_{ij} H_j``)."""

    sys: RootSystem
    terms: list = field(default_factory=list)

    def pairs_on(self, V: ModuleRealization, W: ModuleRealization, exact: bool = True) -> list:
        """``(left, right)`` dense matrix pairs acting on ``V`` and ``W``."""
        return [(_dense_unit(V, x, exact), _dense_unit(W, y, exact)) for x, y in self.terms]

    @property
    def pairs(self) -> list:
        """Summands as sparse matrix pairs on the defining representation."""
        from .reps import exterior_rep

        V = exterior_rep(self.sys, 1)
        out = []
        for x, y in self.terms:
            out.append((SparseMatrix.from_dense(_dense_unit(V, x, True)), SparseMatrix.from_dense(_dense_unit(V, y, True))))
        return out


def casimir(sys: RootSystem) -> CasimirElement:
    if not sys.is_type_a:
        raise ValueError("casimir() is implemented for type A")
    r = sys.rank
    terms = [(("e", a, b), ("e", b, a)) for a in range(r + 1) for b in range(r + 1) if a != b]
    terms += [(("H", i), ("Hdual", i)) for i in range(r)]
    return CasimirElement(sys, terms)


def casimir_matrix(V: ModuleRealization, W: ModuleRealization, exact: bool = True) -> np.ndarray:
    """``Omega`` as a dense matrix on ``V (x) W`` (``np.kron`` ordering)."""
    om = casimir(V.sys)
    out = None
    for X, Y in om.pairs_on(V, W, exact):
        term = np.kron(X, Y)
        out = term if out is None else out + term
    return out


def casimir_orthonormal(V: ModuleRealization, W: ModuleRealization) -> np.ndarray:
    """``Omega`` on ``V (x) W`` from an explicit orthonormal basis of
    ``sl_{r+1}``: ``(e_ab + e_ba)/sqrt2``, ``i(e_ab - e_ba)/sqrt2`` and an
    orthonormalized Cartan basis.  Floating point; used to confirm that the
    Casimir element does not depend on the basis."""
    sys = V.sys
    r = sys.rank
    basis = []
    s2 = math.sqrt(2.0)

    def unit(M, a, b):
        return root_vector(M, a, b).to_dense(complex)

    for a in range(r + 1):
        for b in range(a + 1, r + 1):
            basis.append(((unit(V, a, b) + unit(V, b, a)) / s2, (unit(W, a, b) + unit(W, b, a)) / s2))
            basis.append((1j * (unit(V, a, b) - unit(V, b, a)) / s2, 1j * (unit(W, a, b) - unit(W, b, a)) / s2))
    # Cartan: tr(H_i H_j) = a_ij; x_k = sum_i (L^{-1})_{ki} H_i with A = L L^T
    A = np.array(sys.cartan, dtype=float)
    Linv = np.linalg.inv(np.linalg.cholesky(A))
    HV = [V.H[i].to_dense(complex) for i in range(r)]
    HW = [W.H[i].to_dense(complex) for i in range(r)]
    for k in range(r):
        basis.append((sum(Linv[k, i] * HV[i] for i in range(r)), sum(Linv[k, i] * HW[i] for i in range(r))))
    return sum(np.kron(x, y) for x, y in basis)


def _omega_pair(v: TensorVector, s: int, j: int, exact: bool):
    om = casimir(v.factors[0].sys)
    out = None
    for X, Y in om.pairs_on(v.factors[s], v.factors[j], exact):
        term = _apply_axis(Y, _apply_axis(X, v.data, s), j)
        out = term if out is None else out + term
    return out


def gaudin_apply(V, z, s: int, v: TensorVector) -> TensorVector:
    """``K_s(z) v = sum_{j != s} Omega^{(s,j)} v / (z_s - z_j)`` (``s``
    0-based).  Exact when ``v`` and ``z`` are exact."""
    factors = v.factors
    n = len(factors)
    if V is not None and [f.dim for f in V.factors] != [f.dim for f in factors]:
        raise ValueError("vector does not live in V")
    if len(z) != n:
        raise ValueError(f"{n} factors but {len(z)} points")
    exact = v.exact and all(is_exact(x) for x in z)
    zz = list(z) if exact else [complex(x) for x in z]
    out = None
    for j in range(n):
        if j == s:
            continue
        d = zz[s] - zz[j]
        if d == 0:
            raise ValueError(f"coincident points z_{s+1} = z_{j+1}")
        inv = (Fraction(1) / d) if exact else 1.0 / d
        term = _omega_pair(v if exact else v.to_complex(), s, j, exact) * inv
        out = term if out is None else out + term
    if out is None:
        return TensorVector.zeros(factors, exact)
    return TensorVector(factors, out)


def gaudin_matrix(V, z, s: int) -> np.ndarray:
    """Dense complex matrix of ``K_s(z)`` (small spaces only)."""
    cols = []
    for b in range(V.dim):
        e = np.zeros(V.dim, dtype=complex)
        e[b] = 1.0
        cols.append(gaudin_apply(V, z, s, TensorVector.from_flat(V, e)).flat())
    return np.array(cols).T


def eigenvalue_estimate(V, Kv: TensorVector, v: TensorVector):
    """Rayleigh quotient ``S(Kv, v)/S(v, v)``; falls back to the Hermitian
    quotient when ``v`` is isotropic for the Shapovalov form."""
    from .reps import shapovalov_pair

    den = shapovalov_pair(V, v, v)
    if den != 0 and abs(complex(den)) > 1e-12 * max(v.norm() ** 2, 1e-300):
        return shapovalov_pair(V, Kv, v) / den
    a = v.to_complex().flat()
    b = Kv.to_complex().flat()
    return complex(np.vdot(a, b) / np.vdot(a, a))


@dataclass
class AsymptoticsReport:
    """Drift of rescaled Gaudin eigenvalues along a tracked family.

    ``values[s]`` lists the rescaled eigenvalue of ``K_s`` at each epsilon;
    ``limits[s]`` is the predicted limit; ``drift[s]`` the change between the
    last two epsilons and ``error[s]`` the distance of the last value from
    the limit, both relative to ``max(|limits[s]|, max_s' |limits[s']|)``.
    """

    epsilons: list
    values: dict
    limits: dict
    drift: dict
    error: dict
    sum_rule: list

    @property
    def max_drift(self) -> float:
        return max(self.drift.values(), default=0.0)

    @property
    def max_error(self) -> float:
        return max(self.error.values(), default=0.0)


def _eigenvalues(prob, t) -> list:
    from .bethe import bethe_vector

    V, w = bethe_vector(prob, t)
    return [complex(eigenvalue_estimate(V, gaudin_apply(V, prob.z, s, w), w)) for s in range(prob.n)]


def hamiltonian_asymptotics_check(plan, family) -> AsymptoticsReport:
    """Compare Gaudin eigenvalues along a tracked family with their limits.

    ``family`` is a :class:`bethenorm.solver.TrackedFamily`.  For a point
    ``z_s`` in a cluster with several points, ``eps * c_s(eps)`` tends to the
    eigenvalue of the internal Hamiltonian of the cluster (points ``y^p``,
    critical point ``u^p``); for a singleton cluster ``p``, ``c_s(eps)``
    tends to the eigenvalue of the ``p``-th Hamiltonian of the outer problem
    (points ``y^0``, critical point ``u^0``).
    """
    points = sorted(family.points, key=lambda x: -x[0])
    epsilons = [e for e, _, _ in points]
    values: dict = {}
    sums = []
    for eps, prob, t in points:
        cs = _eigenvalues(prob, t)
        sums.append(abs(sum(cs)))
        for s, c in enumerate(cs):
            values.setdefault(s, []).append((eps if plan.cluster_size(s) > 1 else 1.0) * c)
    limits = {}
    outer = _eigenvalues(plan.outer_problem(), family.u_outer)
    for p, cluster in enumerate(plan.clusters):
        if len(cluster) == 1:
            limits[cluster[0]] = outer[p]
        else:
            inner = _eigenvalues(plan.inner_problem(p), family.u_parts[p])
            for k, s in enumerate(cluster):
                limits[s] = inner[k]
    # a limit can vanish (trivial outer weight); measure against the family scale then
    scale = max((abs(v) for v in limits.values()), default=0.0)
    drift, error = {}, {}
    for s, seq in values.items():
        ref = max(abs(limits[s]), scale, 1e-300)
        drift[s] = abs(seq[-1] - seq[-2]) / ref if len(seq) > 1 else 0.0
        error[s] = abs(seq[-1] - limits[s]) / ref
    return AsymptoticsReport(epsilons, values, limits, drift, error, sums)
