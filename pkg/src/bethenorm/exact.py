"""Exact scalars and exact linear algebra over the rationals.

Two pieces live here:

* :class:`QuadraticNumber`, elements ``a + b*sqrt(d)`` of a quadratic field
  with rational ``a, b``.  These carry the closed-form critical points whose
  coordinates involve a square root, and the cube roots of unity.
* Kernel / rank / determinant helpers.  Rational kernels are delegated to
  ``sympy.polys.matrices.DomainMatrix`` over ``QQ``; determinants of small
  matrices over arbitrary exact fields use plain Gaussian elimination.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

__all__ = [
    "QuadraticNumber",
    "sqrt_rational",
    "cube_root_of_unity",
    "is_exact",
    "to_complex",
    "to_fraction",
    "rational_nullspace",
    "rational_rank",
    "rational_inverse",
    "independent_columns",
    "det_exact",
]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * m`` with ``m`` squarefree; return ``(s, m)``."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    s, m = 1, sign
    for p, e in sympy.factorint(abs(n)).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def _inexact(x) -> bool:
    return isinstance(x, (float, complex)) and not isinstance(x, bool)


class QuadraticNumber:
    """``a + b*sqrt(d)`` with rational ``a, b`` and squarefree integer ``d``.

    Arithmetic mixes freely with ``int`` and ``Fraction``; mixing two
    different radicands raises ``ValueError``.  Mixing with ``float`` or
    ``complex`` degrades to ``complex``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        d = int(d)
        s, m = _squarefree_split(d)
        if m == 1:
            a, b, m = to_fraction(a) + to_fraction(b) * s, 0, 1
        else:
            b = to_fraction(b) * s
        self.a = to_fraction(a)
        self.b = to_fraction(b)
        self.d = m

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.b == 0:
                return other.a, Fraction(0)
            if self.b != 0 and other.d != self.d:
                raise ValueError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return to_fraction(other), Fraction(0)
        return None

    def _radicand(self, other):
        if isinstance(other, QuadraticNumber) and other.b != 0:
            return other.d
        return self.d

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if _inexact(other):
            return complex(self) + other
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticNumber(self.a + c[0], self.b + c[1], self._radicand(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if _inexact(other):
            return complex(self) - other
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticNumber(self.a - c[0], self.b - c[1], self._radicand(other))

    def __rsub__(self, other):
        if _inexact(other):
            return other - complex(self)
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticNumber(c[0] - self.a, c[1] - self.b, self._radicand(other))

    def __mul__(self, other):
        if _inexact(other):
            return complex(self) * other
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        d = self._radicand(other)
        a, b = self.a, self.b
        return QuadraticNumber(a * c[0] + b * c[1] * d, a * c[1] + b * c[0], d)

    __rmul__ = __mul__

    def conjugate_radical(self) -> "QuadraticNumber":
        """Galois conjugate ``a - b*sqrt(d)``."""
        return QuadraticNumber(self.a, -self.b, self.d)

    def field_norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadraticNumber":
        nrm = self.field_norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadraticNumber(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        if _inexact(other):
            return complex(self) / other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return QuadraticNumber(self.a / other, self.b / other, self.d)
        if isinstance(other, QuadraticNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if _inexact(other):
            return other / complex(self)
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadraticNumber(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons / conversion ---------------------------------------
    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            try:
                return complex(self) == complex(other)
            except TypeError:
                return NotImplemented
        if self.b != 0 and c[1] != 0 and isinstance(other, QuadraticNumber) and other.d != self.d:
            return False
        return self.a == c[0] and self.b == c[1]

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __complex__(self):
        if self.d < 0:
            return complex(float(self.a), float(self.b) * (-self.d) ** 0.5)
        return complex(float(self.a) + float(self.b) * self.d ** 0.5, 0.0)

    def __float__(self):
        if self.d < 0 and self.b != 0:
            raise TypeError("non-real quadratic number")
        return complex(self).real

    def __repr__(self):
        if self.b == 0:
            return f"QuadraticNumber({self.a})"
        return f"QuadraticNumber({self.a} + {self.b}*sqrt({self.d}))"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


def sqrt_rational(q):
    """Exact square root of a rational: ``Fraction`` if it is a perfect
    square, else a :class:`QuadraticNumber`."""
    q = to_fraction(q)
    # sqrt(p/r) = sqrt(p*r)/r
    n = q.numerator * q.denominator
    s, m = _squarefree_split(n)
    if m in (0, 1):
        return Fraction(s, q.denominator)
    return QuadraticNumber(0, Fraction(s, q.denominator), m)


def cube_root_of_unity() -> QuadraticNumber:
    """``exp(2*pi*i/3) = -1/2 + sqrt(-3)/2``."""
    return QuadraticNumber(Fraction(-1, 2), Fraction(1, 2), -3)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadraticNumber)) and not isinstance(x, bool)


def to_complex(x) -> complex:
    return complex(x)


# ---------------------------------------------------------------------------
# rational linear algebra
# ---------------------------------------------------------------------------

def _qq(x):
    x = to_fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _domain_matrix(rows, ncols=None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_qq(v) for v in r] for r in rows], (len(rows), ncols), QQ)


def rational_nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : M x = 0}`` for the rational matrix with the given rows.

    Each basis vector is scaled so its last nonzero entry is 1.  With no rows
    the full standard basis is returned.
    """
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _domain_matrix(rows, ncols).nullspace().to_list()
    out = []
    for vec in ns:
        fv = [_from_qq(v) for v in vec]
        last = next(v for v in reversed(fv) if v != 0)
        out.append([v / last for v in fv])
    return out


def rational_rank(rows, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return _domain_matrix(rows, ncols).rank()


def rational_inverse(rows) -> list[list[Fraction]]:
    M = _domain_matrix(rows)
    inv = M.inv()
    return [[_from_qq(v) for v in r] for r in inv.to_list()]


def independent_columns(rows, ncols: int) -> list[int]:
    """Pivot columns of the reduced row echelon form (a maximal independent
    set of columns, chosen greedily left to right)."""
    if not rows:
        return []
    _, pivots = _domain_matrix(rows, ncols).rref()
    return list(pivots)


def det_exact(rows):
    """Determinant by Gaussian elimination over any exact field whose
    elements support ``+ - * /`` and exact ``== 0``.  The empty matrix has
    determinant 1."""
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det
