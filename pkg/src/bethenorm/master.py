"""Master functions: log value, Bethe residuals (log-gradient), log-Hessian.

For weights ``Lambda_1..Lambda_n`` at points ``z`` and a color vector ``l``
the master function is

    Phi = prod_{a<b} (z_a-z_b)^{(L_a,L_b)}
          prod_{i,s} (t_i-z_s)^{-(alpha_c(i),L_s)}
          prod_{i<j} (t_i-t_j)^{(alpha_c(i),alpha_c(j))}.

Every function accepts exact input (``int``, ``Fraction``,
:class:`~bethenorm.exact.QuadraticNumber`) and then computes exactly;
anything else is evaluated in complex floating point.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import det_exact, is_exact
from .lie import RootSystem, Weight, alpha_of, is_dominant_integral, pair, simple_root

__all__ = [
    "MasterProblem",
    "CriticalPoint",
    "SingularPointError",
    "bethe_residual",
    "log_phi_hessian",
    "hessian_det",
    "log_phi",
    "canonical_form",
    "is_exact_point",
    "COINCIDENCE_TOL",
]

COINCIDENCE_TOL = 1e-10


class SingularPointError(ValueError):
    """A coordinate sits (numerically) on a pole of the master function."""


def _as_point(x):
    if is_exact(x):
        return x
    return complex(x)


class MasterProblem:
    """Data ``(sys, Lambda, l, z)`` of a master function.

    ``colors`` is the non-decreasing color map ``c`` (1-based colors, one per
    variable); ``B[i][s] = (alpha_c(i), Lambda_s)`` and
    ``C[i][j] = (alpha_c(i), alpha_c(j))``.
    """

    def __init__(self, sys: RootSystem, weights, l, z, min_separation: float = 0.0):
        self.sys = sys
        self.weights = tuple(Weight(w) for w in weights)
        self.l = tuple(int(x) for x in l)
        if len(self.l) != sys.rank or any(x < 0 for x in self.l):
            raise ValueError(f"l must be {sys.rank} non-negative integers")
        if any(len(w) != sys.rank for w in self.weights):
            raise ValueError("weight rank mismatch")
        self.z = tuple(_as_point(x) for x in z)
        if len(self.z) != len(self.weights):
            raise ValueError(f"{len(self.weights)} weights but {len(self.z)} points")
        for a in range(len(self.z)):
            for b in range(a):
                if self.z[a] == self.z[b] or abs(complex(self.z[a]) - complex(self.z[b])) <= min_separation:
                    raise ValueError(f"points z_{b+1} and z_{a+1} coincide")
        self.colors = tuple(i + 1 for i, k in enumerate(self.l) for _ in range(k))
        roots = [simple_root(sys, i) for i in range(1, sys.rank + 1)]
        self.B = tuple(tuple(pair(sys, roots[c - 1], w) for w in self.weights) for c in self.colors)
        self.C = tuple(tuple(Fraction(sys.root_form(a, b)) for b in self.colors) for a in self.colors)
        self._Bf = np.array([[float(x) for x in row] for row in self.B], dtype=float).reshape(len(self.colors), len(self.z))
        self._Cf = np.array([[float(x) for x in row] for row in self.C], dtype=float).reshape(len(self.colors), len(self.colors))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def num_vars(self) -> int:
        return len(self.colors)

    @property
    def total_weight(self) -> Weight:
        out = Weight.zero(self.sys.rank)
        for w in self.weights:
            out = out + w
        return out

    @property
    def target_weight(self) -> Weight:
        """``Lambda - alpha(l)``, the weight of the Bethe vector."""
        return self.total_weight - alpha_of(self.sys, self.l)

    @property
    def is_admissible(self) -> bool:
        return is_dominant_integral(self.sys, self.target_weight)

    def with_z(self, z) -> "MasterProblem":
        return MasterProblem(self.sys, self.weights, self.l, z)

    def color_blocks(self) -> list[range]:
        """Index ranges of the variables of each color."""
        out, start = [], 0
        for k in self.l:
            out.append(range(start, start + k))
            start += k
        return out

    def __repr__(self):
        ws = ",".join(w.label() for w in self.weights)
        return f"MasterProblem(weights=[{ws}], l={self.l}, z={self.z})"


def is_exact_point(p: MasterProblem, t) -> bool:
    return all(is_exact(x) for x in t) and all(is_exact(x) for x in p.z)


def _scale(p: MasterProblem, t) -> float:
    vals = [abs(complex(x)) for x in tuple(t) + p.z]
    m = max(vals, default=0.0)
    return m if m > 0 else 1.0


def _check_poles(p: MasterProblem, t, exact: bool):
    tol = 0.0 if exact else COINCIDENCE_TOL * _scale(p, t)
    for i, ti in enumerate(t):
        for s, zs in enumerate(p.z):
            if p.B[i][s] != 0:
                d = ti - zs
                if (d == 0) if exact else abs(complex(d)) < tol:
                    raise SingularPointError(f"t_{i+1} hits the pole z_{s+1}")
        for j in range(i):
            if p.C[i][j] != 0:
                d = ti - t[j]
                if (d == 0) if exact else abs(complex(d)) < tol:
                    raise SingularPointError(f"t_{i+1} hits the pole t_{j+1}")


def _prepare(p: MasterProblem, t):
    t = tuple(t)
    if len(t) != p.num_vars:
        raise ValueError(f"expected {p.num_vars} coordinates, got {len(t)}")
    exact = is_exact_point(p, t)
    if not exact:
        t = tuple(complex(x) for x in t)
    _check_poles(p, t, exact)
    return t, exact


def bethe_residual(p: MasterProblem, t):
    """``d log Phi / d t_i`` for every ``i``: a tuple of exact values or a
    complex ``numpy`` array."""
    t, exact = _prepare(p, t)
    m = p.num_vars
    if exact:
        out = []
        for i in range(m):
            v = Fraction(0)
            for s, zs in enumerate(p.z):
                if p.B[i][s]:
                    v = v - p.B[i][s] / (t[i] - zs)
            for j in range(m):
                if j != i and p.C[i][j]:
                    v = v + p.C[i][j] / (t[i] - t[j])
            out.append(v)
        return tuple(out)
    if m == 0:
        return np.zeros(0, dtype=complex)
    tv = np.array(t, dtype=complex)
    zv = np.array([complex(x) for x in p.z], dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        dz = tv[:, None] - zv[None, :]
        tz = np.where(p._Bf != 0, p._Bf / np.where(p._Bf != 0, dz, 1.0), 0.0)
        dt = tv[:, None] - tv[None, :]
        np.fill_diagonal(dt, 1.0)
        tt = np.where(p._Cf != 0, p._Cf / np.where(p._Cf != 0, dt, 1.0), 0.0)
    np.fill_diagonal(tt, 0.0)
    return -tz.sum(axis=1) + tt.sum(axis=1)


def log_phi_hessian(p: MasterProblem, t):
    """Matrix of second partials of ``log Phi`` in ``t``.  Exact input gives
    an object array of exact entries, otherwise a complex array."""
    t, exact = _prepare(p, t)
    m = p.num_vars
    if exact:
        H = np.empty((m, m), dtype=object)
        for i in range(m):
            diag = Fraction(0)
            for s, zs in enumerate(p.z):
                if p.B[i][s]:
                    diag = diag + p.B[i][s] / (t[i] - zs) ** 2
            for j in range(m):
                if j == i:
                    continue
                if p.C[i][j]:
                    v = p.C[i][j] / (t[i] - t[j]) ** 2
                    diag = diag - v
                    H[i, j] = v
                else:
                    H[i, j] = Fraction(0)
            H[i, i] = diag
        return H
    if m == 0:
        return np.zeros((0, 0), dtype=complex)
    tv = np.array(t, dtype=complex)
    zv = np.array([complex(x) for x in p.z], dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        dz = tv[:, None] - zv[None, :]
        tz = np.where(p._Bf != 0, p._Bf / np.where(p._Bf != 0, dz, 1.0) ** 2, 0.0)
        dt = tv[:, None] - tv[None, :]
        np.fill_diagonal(dt, 1.0)
        tt = np.where(p._Cf != 0, p._Cf / np.where(p._Cf != 0, dt, 1.0) ** 2, 0.0)
    np.fill_diagonal(tt, 0.0)
    H = tt.astype(complex)
    H[np.diag_indices(m)] = tz.sum(axis=1) - tt.sum(axis=1)
    return H


def hessian_det(H):
    """Determinant of a Hessian from :func:`log_phi_hessian`; exact for
    object arrays, 1 for the empty matrix."""
    H = np.asarray(H)
    if H.size == 0:
        return Fraction(1) if H.dtype == object else 1.0 + 0j
    if H.dtype == object:
        return det_exact(H.tolist())
    return complex(np.linalg.det(H))


def log_phi(p: MasterProblem, t) -> complex:
    """Principal-branch ``log Phi``: the sum of ``exponent * Log(factor)``.
    Only defined up to the branch choice of each factor."""
    t = tuple(complex(x) for x in t)
    if len(t) != p.num_vars:
        raise ValueError(f"expected {p.num_vars} coordinates, got {len(t)}")
    z = [complex(x) for x in p.z]
    terms = []
    for a in range(p.n):
        for b in range(a + 1, p.n):
            terms.append((pair(p.sys, p.weights[a], p.weights[b]), z[a] - z[b]))
    for i in range(p.num_vars):
        for s in range(p.n):
            terms.append((-p.B[i][s], t[i] - z[s]))
        for j in range(i + 1, p.num_vars):
            terms.append((p.C[i][j], t[i] - t[j]))
    out = 0j
    for e, base in terms:
        if e == 0:
            continue
        if base == 0:
            raise SingularPointError("a factor of the master function vanishes")
        out += float(e) * cmath.log(base)
    return out


def canonical_form(p: MasterProblem, t) -> tuple:
    """Orbit representative: within each color block coordinates are sorted
    by ``(real, imag)``."""
    t = tuple(t)
    out = []
    for block in p.color_blocks():
        vals = [t[k] for k in block]
        vals.sort(key=lambda x: (complex(x).real, complex(x).imag))
        out.extend(vals)
    return tuple(out)


@dataclass
class CriticalPoint:
    """A solution of the Bethe equations with its Hessian data."""

    problem: MasterProblem
    t: tuple
    residual_norm: float
    hessian: np.ndarray
    hessian_det: complex
    nondegenerate: bool
    iterations: int = 0
    exact: bool = False
    info: dict = field(default_factory=dict)

    @property
    def canonical(self) -> tuple:
        return canonical_form(self.problem, self.t)

    @classmethod
    def from_point(cls, p: MasterProblem, t, det_threshold: float = 1e-10) -> "CriticalPoint":
        """Evaluate residual and Hessian at ``t`` (exactly if possible)."""
        t = tuple(t)
        exact = is_exact_point(p, t)
        R = bethe_residual(p, t)
        H = log_phi_hessian(p, t)
        det = hessian_det(H)
        if exact:
            res = max((abs(complex(x)) for x in R), default=0.0)
            nondeg = det != 0
        else:
            res = float(np.max(np.abs(R))) if len(R) else 0.0
            nondeg = abs(det) > det_threshold * _scale(p, t) ** (-2 * p.num_vars)
        return cls(p, t, res, H, det, bool(nondeg), exact=exact)

    def as_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.t], dtype=complex)
