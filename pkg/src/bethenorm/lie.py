"""Root-system arithmetic: Cartan data, weights, the invariant pairing.

Weights are stored in fundamental-weight coordinates with exact rationals.
Simple roots are converted into those coordinates through the Cartan matrix
(``alpha_i = sum_j a_{j,i} w_j``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .exact import rational_inverse, to_fraction

__all__ = [
    "Weight",
    "RootSystem",
    "RootSystemA",
    "pair",
    "alpha_of",
    "is_dominant_integral",
    "fundamental_weight",
    "simple_root",
    "parse_weight",
]


class Weight(tuple):
    """Coordinates ``(c_1, ..., c_r)`` of ``sum c_i w_i``; exact rationals.

    Addition, subtraction, negation and scalar multiplication act
    coordinatewise (unlike plain tuples).
    """

    def __new__(cls, coords):
        return super().__new__(cls, (to_fraction(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self)

    def _check(self, other):
        if len(other) != len(self):
            raise ValueError(f"rank mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Weight(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return Weight(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, c):
        return Weight(c * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return "Weight(" + ", ".join(str(c) for c in self) + ")"

    def label(self) -> str:
        """Compact text form, e.g. ``w1+2w3`` (``0`` for the zero weight)."""
        parts = []
        for i, c in enumerate(self, start=1):
            if c == 0:
                continue
            coef = "" if c == 1 else ("-" if c == -1 else str(c))
            parts.append(f"{coef}w{i}")
        return "+".join(parts).replace("+-", "-") or "0"


class RootSystem:
    """Symmetrizable Cartan data ``A`` with symmetrizer ``D`` (``B = D A``).

    ``(alpha_i, alpha_j) = d_i a_{i,j}``.  Only type A is used on the
    representation side; general data is accepted for master functions.
    """

    def __init__(self, cartan, symmetrizer=None):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        r = len(cartan)
        if r == 0 or any(len(row) != r for row in cartan):
            raise ValueError("cartan matrix must be square and nonempty")
        d = tuple(int(x) for x in (symmetrizer or [1] * r))
        if len(d) != r or any(x <= 0 for x in d):
            raise ValueError("symmetrizer must have positive entries")
        for i in range(r):
            for j in range(r):
                if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                    raise ValueError("D*A is not symmetric")
        self.cartan = cartan
        self.symmetrizer = d

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def _form_on_weights(self):
        # (lam, mu) = lam^T D A^{-1} mu in fundamental-weight coordinates
        inv = rational_inverse(self.cartan)
        r = self.rank
        return tuple(tuple(self.symmetrizer[i] * inv[i][j] for j in range(r)) for i in range(r))

    def root_form(self, i: int, j: int) -> int:
        """``(alpha_i, alpha_j)`` for 1-based indices."""
        return self.symmetrizer[i - 1] * self.cartan[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.cartan, self.symmetrizer) == (other.cartan, other.symmetrizer)

    def __hash__(self):
        return hash((self.cartan, self.symmetrizer))

    def __repr__(self):
        return f"RootSystem(cartan={self.cartan}, symmetrizer={self.symmetrizer})"

    @property
    def is_type_a(self) -> bool:
        r = self.rank
        return self.symmetrizer == (1,) * r and all(
            self.cartan[i][j] == (2 if i == j else (-1 if abs(i - j) == 1 else 0))
            for i in range(r)
            for j in range(r)
        )


class RootSystemA(RootSystem):
    """Type ``A_r`` (the Lie algebra ``sl_{r+1}``)."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be positive")
        cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)] for i in range(rank)]
        super().__init__(cartan)

    def __repr__(self):
        return f"RootSystemA({self.rank})"


def simple_root(sys: RootSystem, i: int) -> Weight:
    """``alpha_i`` (1-based) in fundamental-weight coordinates."""
    return Weight(sys.cartan[j][i - 1] for j in range(sys.rank))


def fundamental_weight(sys: RootSystem, i: int) -> Weight:
    """``w_i`` (1-based)."""
    if not 1 <= i <= sys.rank:
        raise ValueError(f"fundamental weight index {i} out of range 1..{sys.rank}")
    return Weight(int(j == i - 1) for j in range(sys.rank))


def pair(sys: RootSystem, x, y) -> Fraction:
    """Invariant form ``(x, y)`` of two weights given in fundamental-weight
    coordinates (roots enter through :func:`simple_root` / :func:`alpha_of`)."""
    if len(x) != sys.rank or len(y) != sys.rank:
        raise ValueError(f"rank mismatch: expected {sys.rank}, got {len(x)} and {len(y)}")
    g = sys._form_on_weights
    x = [to_fraction(a) for a in x]
    y = [to_fraction(b) for b in y]
    return sum((x[i] * g[i][j] * y[j] for i in range(sys.rank) for j in range(sys.rank) if x[i] and y[j]), Fraction(0))


def alpha_of(sys: RootSystem, l) -> Weight:
    """``l_1 alpha_1 + ... + l_r alpha_r`` as a weight."""
    l = list(l)
    if len(l) != sys.rank:
        raise ValueError(f"l has length {len(l)}, expected {sys.rank}")
    return Weight(sum(sys.cartan[j][i] * l[i] for i in range(sys.rank)) for j in range(sys.rank))


def is_dominant_integral(sys: RootSystem, mu) -> bool:
    return len(mu) == sys.rank and all(to_fraction(c) >= 0 and to_fraction(c).denominator == 1 for c in mu)


def parse_weight(sys: RootSystem, text: str) -> Weight:
    """Parse ``"w1"``, ``"2w1+w3"``, ``"0"`` or a coordinate list ``"(1,0,2)"``."""
    text = text.strip().replace(" ", "")
    if text in ("0", ""):
        return Weight.zero(sys.rank)
    if text.startswith("(") or text.startswith("["):
        coords = [c for c in text.strip("()[]").split(",") if c]
        return Weight(coords)
    out = Weight.zero(sys.rank)
    for term in text.replace("-", "+-").split("+"):
        if not term:
            continue
        coef, _, idx = term.partition("w")
        if not idx:
            raise ValueError(f"cannot parse weight term {term!r}")
        c = Fraction(-1 if coef == "-" else (coef or 1))
        out = out + fundamental_weight(sys, int(idx)) * c
    return out
