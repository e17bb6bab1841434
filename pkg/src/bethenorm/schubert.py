"""Wronskians, ramification sequences and the Plücker formula.

A plane is an ``(r+1)``-dimensional space of polynomials of degree ``<= d``.
At a finite point ``z`` its ramification sequence comes from the distinct
vanishing orders ``o_1 < ... < o_{r+1}`` of the plane at ``z``:
``a_i = o_{r+2-i} - (r+1-i)``.  At infinity it comes from the distinct
degrees ``e_1 < ... < e_{r+1}``: ``a_i = d - r + i - 1 - e_i``.  Both are
non-increasing, and ``|a(z)|`` is the order of ``z`` as a root of the
Wronskian.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import QQ, Poly

from .exact import to_fraction
from .lie import RootSystem, Weight, alpha_of, fundamental_weight, pair, simple_root

__all__ = [
    "PolynomialPlane",
    "RamificationData",
    "BasePointWarning",
    "wronskian",
    "ramification_at",
    "plucker_check",
    "plucker_report",
    "weights_to_ramification",
    "INFINITY",
]

INFINITY = "inf"
_x = sympy.Symbol("x")


class BasePointWarning(UserWarning):
    """All polynomials of the plane vanish at the point."""


def _poly(coeffs) -> Poly:
    """Coefficients low-to-high degree as a ``Poly`` over ``QQ``."""
    cs = [to_fraction(c) for c in coeffs]
    return Poly([QQ(c.numerator, c.denominator) for c in reversed(cs)] or [QQ(0)], _x, domain=QQ)


def _coeffs(P: Poly) -> list:
    cs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(P.all_coeffs())]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return cs


@dataclass
class PolynomialPlane:
    """Basis polynomials (coefficient lists, low-to-high) of a plane in the
    space of polynomials of degree ``<= d``."""

    basis: list
    d: int | None = None

    def __post_init__(self):
        self.basis = [[to_fraction(c) for c in b] for b in self.basis]
        deg = max((len(b) - 1 for b in self.basis), default=0)
        if self.d is None:
            self.d = deg
        if deg > self.d:
            raise ValueError(f"basis polynomial of degree {deg} exceeds d = {self.d}")
        if len(self.basis) - 1 > self.d:
            raise ValueError("more basis polynomials than the ambient dimension")
        if all(c == 0 for c in wronskian(self.basis)):
            raise ValueError("basis polynomials are linearly dependent")

    @property
    def r(self) -> int:
        return len(self.basis) - 1

    @property
    def polys(self) -> list:
        return [_poly(b) for b in self.basis]

    @classmethod
    def from_text(cls, text: str, d: int | None = None) -> "PolynomialPlane":
        """One polynomial per nonempty line, coefficients low-to-high as
        integers or ``p/q`` tokens (comma or whitespace separated)."""
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([Fraction(tok) for tok in line.replace(",", " ").split()])
        return cls(rows, d)


def wronskian(polys) -> list:
    """Wronskian ``det (p_j^{(i)})`` as a coefficient list (low-to-high)."""
    ps = [(_poly(p) if not isinstance(p, Poly) else p).as_expr() for p in polys]
    if not ps:
        return [Fraction(1)]
    W = sympy.wronskian(ps, _x)
    return _coeffs(Poly(sympy.expand(W), _x, domain=QQ))


def _echelon_orders(rows: list, lowest: bool, field_ops) -> list:
    """Distinct pivot positions after row reduction.  ``lowest`` picks the
    first nonzero column as pivot (vanishing orders), otherwise the last
    (degrees).  ``field_ops`` = (is_zero, sub_mul, div)."""
    is_zero, sub_mul, div = field_ops
    rows = [list(r) for r in rows]
    orders = []
    ncols = max((len(r) for r in rows), default=0)
    cols = range(ncols) if lowest else range(ncols - 1, -1, -1)
    remaining = rows
    for c in cols:
        piv = next((r for r in remaining if c < len(r) and not is_zero(r[c])), None)
        if piv is None:
            continue
        remaining = [r for r in remaining if r is not piv]
        orders.append(c)
        new = []
        for r in remaining:
            if c < len(r) and not is_zero(r[c]):
                f = div(r[c], piv[c])
                r = [sub_mul(a, f, piv[k] if k < len(piv) else None) for k, a in enumerate(r)]
            new.append(r)
        remaining = new
    return sorted(orders)


_RATIONAL_OPS = (
    lambda a: a == 0,
    lambda a, f, b: a if b is None else a - f * b,
    lambda a, b: a / b,
)


def _taylor_rows(plane: PolynomialPlane, z) -> list:
    z = to_fraction(z)
    rows = []
    for P in plane.polys:
        Q = P.compose(Poly(_x + sympy.Rational(z.numerator, z.denominator), _x, domain=QQ))
        rows.append(_coeffs(Q) + [Fraction(0)] * (plane.d + 1))
    return [r[: plane.d + 1] for r in rows]


def _field_ops(q: Poly):
    """Arithmetic in ``QQ[x]/(q)`` on ``Poly`` residues."""
    return (
        lambda a: a.is_zero,
        lambda a, f, b: a if b is None else (a - f * b).rem(q),
        lambda a, b: (a * b.invert(q)).rem(q),
    )


def _orders_at_root(plane: PolynomialPlane, q: Poly) -> list:
    """Vanishing orders at a root of the irreducible ``q``: Taylor
    coefficients ``p^{(k)}/k!`` reduced modulo ``q``."""
    rows = []
    for P in plane.polys:
        row, D, fact = [], P, 1
        for k in range(plane.d + 1):
            if k:
                D = D.diff(_x)
                fact *= k
            row.append((D * sympy.Rational(1, fact)).rem(q))
        rows.append(row)
    return _echelon_orders(rows, True, _field_ops(q))


def _from_orders(orders: list, r: int) -> tuple:
    return tuple(orders[r + 1 - i] - (r + 1 - i) for i in range(1, r + 2))


def ramification_at(plane: PolynomialPlane, z) -> tuple:
    """Ramification sequence ``(a_1 >= ... >= a_{r+1})`` at a rational point
    ``z`` or at ``"inf"``.  A base point (``a_{r+1} > 0``) triggers a
    :class:`BasePointWarning`."""
    r = plane.r
    if isinstance(z, str):
        if z.lower() not in ("inf", "infinity", "oo"):
            raise ValueError(f"unknown point {z!r}")
        rows = [b + [Fraction(0)] * (plane.d + 1 - len(b)) for b in plane.basis]
        degs = _echelon_orders(rows, False, _RATIONAL_OPS)
        return tuple(plane.d - r + i - 1 - degs[i - 1] for i in range(1, r + 2))
    orders = _echelon_orders(_taylor_rows(plane, z), True, _RATIONAL_OPS)
    a = _from_orders(orders, r)
    if a[-1] > 0:
        warnings.warn(f"base point at z = {z}", BasePointWarning, stacklevel=2)
    return a


@dataclass
class RamificationData:
    """Points (a number or ``"inf"``) with their ramification sequences."""

    points: list

    def total(self) -> int:
        return sum(sum(a) for _, a in self.points)

    def check(self, d: int) -> None:
        for z, a in self.points:
            if any(a[i] < a[i + 1] for i in range(len(a) - 1)) or a[-1] < 0:
                raise ValueError(f"sequence {a} at {z} is not a non-increasing non-negative sequence")
            if a[0] > d - (len(a) - 1):
                raise ValueError(f"sequence {a} at {z} exceeds d - r")


def plucker_report(plane: PolynomialPlane) -> dict:
    """Ramification at every root of the Wronskian (irrational roots handled
    through their minimal polynomial) and at infinity, with both sides of
    the Plücker identity."""
    r, d = plane.r, plane.d
    W = _poly(wronskian(plane.basis))
    rows = []
    finite = 0
    _, factors = W.factor_list()
    for q, mult in factors:
        if q.degree() < 1:
            continue
        if q.degree() == 1:
            c1, c0 = q.all_coeffs()
            root = Fraction(int((-c0 / c1).numerator), int((-c0 / c1).denominator))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BasePointWarning)
                a = ramification_at(plane, root)
            label = str(root)
        else:
            a = _from_orders(_orders_at_root(plane, q), r)
            label = f"root of {q.as_expr()}"
        rows.append({"point": label, "degree": q.degree(), "wronskian_order": mult, "a": a})
        finite += q.degree() * sum(a)
    a_inf = ramification_at(plane, INFINITY)
    total = finite + sum(a_inf)
    dim = (r + 1) * (d - r)
    return {
        "r": r,
        "d": d,
        "wronskian": _coeffs(W),
        "finite": rows,
        "infinity": a_inf,
        "total": total,
        "dim_grassmannian": dim,
        "holds": total == dim,
        "orders_match_wronskian": all(sum(row["a"]) == row["wronskian_order"] for row in rows),
    }


def plucker_check(plane: PolynomialPlane) -> bool:
    """``sum_z |a(z)| + |a(inf)| = (r+1)(d-r)``, computed exactly."""
    return plucker_report(plane)["holds"]


def weights_to_ramification(sys: RootSystem, weights, z, lam_inf, d: int) -> RamificationData:
    """Ramification data attached to weights ``Lambda_s`` at ``z_s`` and
    ``Lambda_inf`` at infinity:

    ``a_i(z_s) = (Lambda_s, alpha_1 + ... + alpha_{r+1-i})``,
    ``a_i(inf) = d - r - l_1 - (Lambda_inf, alpha_1 + ... + alpha_{i-1})``

    with ``l_1 = (sum Lambda_s - Lambda_inf, w_1)``.
    """
    r = sys.rank
    weights = [Weight(w) for w in weights]
    lam_inf = Weight(lam_inf)
    if len(z) != len(weights):
        raise ValueError("one point per weight")
    roots = [simple_root(sys, i) for i in range(1, r + 1)]

    def partial(k):
        out = Weight.zero(r)
        for j in range(k):
            out = out + roots[j]
        return out

    points = []
    for w, zs in zip(weights, z):
        points.append((zs, tuple(int(pair(sys, w, partial(r + 1 - i))) for i in range(1, r + 2))))
    total = Weight.zero(r)
    for w in weights:
        total = total + w
    l1 = pair(sys, total - lam_inf, fundamental_weight(sys, 1))
    a_inf = tuple(d - r - l1 - pair(sys, lam_inf, partial(i - 1)) for i in range(1, r + 2))
    if any(x < 0 for x in a_inf):
        raise ValueError(f"d = {d} is too small: a(inf) = {tuple(int(x) for x in a_inf)}")
    points.append((INFINITY, tuple(int(x) for x in a_inf)))
    data = RamificationData(points)
    data.check(d)
    return data
