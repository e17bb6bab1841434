"""Multiplicities of irreducibles in tensor products, by brute force.

``sing_dim`` is the dimension of the joint kernel of the raising operators
on a weight space of an explicit tensor product realization; everything is
exact.  ``decompose_fundamental`` is the rule for tensoring with an exterior
power of the defining representation, cross-checked against ``sing_dim``.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .lie import RootSystem, Weight, is_dominant_integral
from .reps import _eps_weight, realization_for, singular_subspace, tensor

__all__ = ["sing_dim", "decompose_fundamental", "weyl_dimension", "DIMENSION_CAP", "RealizationTooLarge"]

DIMENSION_CAP = 20000


class RealizationTooLarge(ValueError):
    pass


def weyl_dimension(sys: RootSystem, lam) -> int:
    """``prod_{alpha > 0} (lam + rho, alpha) / (rho, alpha)`` for type A."""
    lam = [int(c) for c in Weight(lam)]
    r = sys.rank
    num, den = 1, 1
    for a in range(r):
        for b in range(a + 1, r + 1):
            num *= sum(lam[a:b]) + (b - a)
            den *= b - a
    return num // den


@lru_cache(maxsize=4096)
def _sing_dim_cached(sys: RootSystem, weights: tuple, mu: Weight) -> int:
    dims = [weyl_dimension(sys, w) for w in weights]
    if math.prod(dims) > DIMENSION_CAP:
        raise RealizationTooLarge(f"tensor product of dimension {math.prod(dims)} exceeds {DIMENSION_CAP}")
    V = tensor([realization_for(sys, w) for w in weights])
    return len(singular_subspace(V, mu))


def sing_dim(sys: RootSystem, weights, mu) -> int:
    """``dim Sing (V_{L_1} (x) ... (x) V_{L_n})[mu]``, the multiplicity of
    ``V_mu`` in the tensor product."""
    weights = tuple(sorted(Weight(w) for w in weights))
    mu = Weight(mu)
    if not weights:
        return int(all(c == 0 for c in mu))
    total = Weight.zero(sys.rank)
    for w in weights:
        total = total + w
    if not is_dominant_integral(sys, mu):
        return 0
    # the difference must lie in the nonnegative root cone
    from .exact import rational_inverse

    inv = rational_inverse(sys.cartan)
    diff = total - mu
    l = [sum(inv[i][j] * diff[j] for j in range(sys.rank)) for i in range(sys.rank)]
    if any(x < 0 or Fraction(x).denominator != 1 for x in l):
        return 0
    return _sing_dim_cached(sys, weights, mu)


def decompose_fundamental(sys: RootSystem, lam, p: int) -> list[Weight]:
    """Highest weights of ``V_lam (x) V_{w_p}``: every dominant
    ``lam + e_{i_1} + ... + e_{i_p}`` with ``i_1 < ... < i_p``, where
    ``e_1 = w_1``, ``e_j = w_j - w_{j-1}``, ``e_{r+1} = -w_r``.  Each occurs
    with multiplicity one."""
    lam = Weight(lam)
    if not is_dominant_integral(sys, lam):
        raise ValueError(f"{lam} is not dominant integral")
    r = sys.rank
    if not 1 <= p <= r:
        raise ValueError(f"p must lie in 1..{r}")
    out = []
    for idx in itertools.combinations(range(r + 1), p):
        mu = lam
        for j in idx:
            mu = mu + _eps_weight(sys, j)
        if is_dominant_integral(sys, mu):
            out.append(mu)
    return out
