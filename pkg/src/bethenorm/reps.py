"""Finite-dimensional sl_{r+1} module realizations and the Shapovalov form.

A :class:`ModuleRealization` carries exact sparse matrices for the Chevalley
generators ``E_i, F_i, H_i`` in a weight basis, the index of the highest
weight vector, and the Gram matrix of the (tensor) Shapovalov form.

Vectors in a tensor product are :class:`TensorVector` objects: a dense
``numpy`` array with one axis per factor.  Generators act factor-locally, so
operators on the full product are never materialized.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from .exact import independent_columns, rational_inverse, rational_nullspace
from .lie import (
    RootSystem,
    Weight,
    alpha_of,
    fundamental_weight,
    is_dominant_integral,
    simple_root,
)
from .sparse import SparseMatrix

__all__ = [
    "ModuleRealization",
    "TensorRealization",
    "TensorVector",
    "RepresentationError",
    "exterior_rep",
    "trivial_rep",
    "tensor",
    "embed_irreducible",
    "realization_for",
    "weight_subspace",
    "singular_subspace",
    "shapovalov_pair",
    "shapovalov_gram",
    "iterated_singular_vector",
    "relation_defects",
    "contravariance_defects",
]


class RepresentationError(RuntimeError):
    pass


def _require_type_a(sys: RootSystem):
    if not sys.is_type_a:
        raise ValueError("representation-side constructions require type A Cartan data")


class ModuleRealization:
    """A weight-graded module with exact generator matrices.

    ``weights[b]`` is the weight of basis vector ``b``; ``E[i-1]``, ``F[i-1]``,
    ``H[i-1]`` are the generator matrices for the simple root ``i``.
    """

    def __init__(self, sys, weights, E, F, H, hw_index, gram, name=""):
        self.sys = sys
        self._weights = tuple(Weight(w) for w in weights)
        self._E = tuple(E)
        self._F = tuple(F)
        self._H = tuple(H)
        self.hw_index = int(hw_index)
        self._gram = gram
        self.name = name
        self._cache: dict = {}

    # tensor realizations override these lazily
    @property
    def weights(self) -> tuple:
        return self._weights

    @property
    def E(self) -> tuple:
        return self._E

    @property
    def F(self) -> tuple:
        return self._F

    @property
    def H(self) -> tuple:
        return self._H

    @property
    def gram(self) -> SparseMatrix:
        return self._gram

    @property
    def factors(self) -> tuple:
        return (self,)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def highest_weight(self) -> Weight:
        return self.weights[self.hw_index]

    @cached_property
    def weight_array(self) -> np.ndarray:
        arr = np.array([[int(c) for c in w] for w in self.weights], dtype=np.int64)
        return arr.reshape(self.dim, self.sys.rank)

    def generator(self, kind: str, i: int) -> SparseMatrix:
        """``kind`` in ``'E', 'F', 'H'``; ``i`` is 1-based."""
        return {"E": self.E, "F": self.F, "H": self.H}[kind][i - 1]

    def dense(self, kind: str, i: int, exact: bool = False) -> np.ndarray:
        key = (kind, i, exact)
        if key not in self._cache:
            m = self.generator(kind, i)
            self._cache[key] = m.to_dense(object) if exact else m.to_dense(complex)
        return self._cache[key]

    def dense_gram(self, exact: bool = False) -> np.ndarray:
        key = ("gram", exact)
        if key not in self._cache:
            self._cache[key] = self.gram.to_dense(object) if exact else self.gram.to_dense(complex)
        return self._cache[key]

    def __repr__(self):
        return f"<ModuleRealization {self.name or self.highest_weight.label()} dim={self.dim}>"


class TensorRealization(ModuleRealization):
    """Tensor product of realizations with the Leibniz (coproduct) action and
    the tensor Shapovalov form.  Flat indices follow ``numpy`` C order, i.e.
    ``np.kron`` conventions; matrices are built only on first access."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("tensor() needs at least one factor")
        sys = factors[0].sys
        if any(f.sys != sys for f in factors):
            raise ValueError("all tensor factors must share the root system")
        self.sys = sys
        self._factors = factors
        self.dims = tuple(f.dim for f in factors)
        self.hw_index = int(np.ravel_multi_index(tuple(f.hw_index for f in factors), self.dims))
        self.name = " x ".join(f.name or f.highest_weight.label() for f in factors)
        self._cache = {}

    @property
    def factors(self) -> tuple:
        return self._factors

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    @cached_property
    def weight_array(self) -> np.ndarray:
        arr = np.zeros(self.dims + (self.sys.rank,), dtype=np.int64)
        n = len(self.factors)
        for p, f in enumerate(self.factors):
            shape = [1] * n + [self.sys.rank]
            shape[p] = f.dim
            arr = arr + f.weight_array.reshape(shape)
        return arr.reshape(self.dim, self.sys.rank)

    @cached_property
    def weights(self) -> tuple:
        return tuple(Weight(row) for row in self.weight_array)

    @property
    def highest_weight(self) -> Weight:
        return Weight(self.weight_array[self.hw_index])

    def _leibniz(self, kind: str) -> tuple:
        out = []
        for i in range(1, self.sys.rank + 1):
            total = SparseMatrix.zeros(self.dim)
            for p in range(len(self.factors)):
                term = None
                for q, f in enumerate(self.factors):
                    m = f.generator(kind, i) if q == p else SparseMatrix.identity(f.dim)
                    term = m if term is None else term.kron(m)
                total = total + term
            out.append(total)
        return tuple(out)

    @cached_property
    def E(self) -> tuple:
        return self._leibniz("E")

    @cached_property
    def F(self) -> tuple:
        return self._leibniz("F")

    @cached_property
    def H(self) -> tuple:
        return self._leibniz("H")

    @cached_property
    def gram(self) -> SparseMatrix:
        g = None
        for f in self.factors:
            g = f.gram if g is None else g.kron(f.gram)
        return g

    def multi_index(self, flat: int) -> tuple:
        return tuple(int(x) for x in np.unravel_index(flat, self.dims))

    def flat_index(self, multi) -> int:
        return int(np.ravel_multi_index(tuple(multi), self.dims))

    def __repr__(self):
        return f"<TensorRealization {self.name} dim={self.dim}>"


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def _apply_axis(mat: np.ndarray, arr: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(mat, arr, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape, dtype=complex)


class TensorVector:
    """A vector in ``V_1 (x) ... (x) V_n``, stored as an array with one axis
    per factor.  ``dtype=object`` arrays hold exact coefficients."""

    __array_priority__ = 1000

    def __init__(self, factors, data):
        self.factors = tuple(factors)
        dims = tuple(f.dim for f in self.factors)
        data = np.asarray(data)
        if data.shape != dims:
            data = data.reshape(dims)
        self.data = data

    # -- constructors --------------------------------------------------------
    @classmethod
    def zeros(cls, factors, exact: bool = False) -> "TensorVector":
        return cls(factors, _zeros(tuple(f.dim for f in factors), exact))

    @classmethod
    def basis(cls, factors, multi_index, exact: bool = True) -> "TensorVector":
        v = cls.zeros(factors, exact)
        v.data[tuple(multi_index)] = Fraction(1) if exact else 1.0
        return v

    @classmethod
    def highest(cls, factors, exact: bool = True) -> "TensorVector":
        """``v_{Lambda_1} (x) ... (x) v_{Lambda_n}``."""
        return cls.basis(factors, [f.hw_index for f in factors], exact)

    @classmethod
    def from_flat(cls, V: ModuleRealization, flat) -> "TensorVector":
        return cls(V.factors, np.asarray(flat).reshape(tuple(f.dim for f in V.factors)))

    # -- properties ------------------------------------------------------------
    @property
    def shape(self) -> tuple:
        """The factor realizations (not the array shape; see ``dims``)."""
        return self.factors

    @property
    def dims(self) -> tuple:
        return self.data.shape

    @property
    def exact(self) -> bool:
        return self.data.dtype == object

    @property
    def entries(self) -> dict:
        """Sparse view ``{multi_index: coefficient}`` of the nonzero entries."""
        nz = np.argwhere(self.data != 0)
        return {tuple(int(x) for x in idx): self.data[tuple(idx)] for idx in nz}

    @property
    def weight(self):
        """Common weight of all nonzero entries; ``None`` for the zero vector.
        Raises ``RepresentationError`` if the vector is not weight-homogeneous."""
        ws = set()
        for idx in self.entries:
            w = sum((f.weight_array[i] for f, i in zip(self.factors, idx)), np.zeros(self.factors[0].sys.rank, dtype=np.int64))
            ws.add(tuple(int(c) for c in w))
            if len(ws) > 1:
                raise RepresentationError("vector is not weight-homogeneous")
        return Weight(ws.pop()) if ws else None

    def flat(self) -> np.ndarray:
        return self.data.reshape(-1)

    def to_complex(self) -> "TensorVector":
        if not self.exact:
            return self
        return TensorVector(self.factors, np.vectorize(complex, otypes=[complex])(self.data))

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_complex().flat()))

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact and tol == 0.0:
            return not np.any(self.data != 0)
        return self.norm() <= tol

    # -- arithmetic ------------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, TensorVector) or [f.dim for f in other.factors] != [f.dim for f in self.factors]:
            raise ValueError("tensor vectors live in different spaces")

    def __add__(self, other):
        self._same(other)
        return TensorVector(self.factors, self.data + other.data)

    def __sub__(self, other):
        self._same(other)
        return TensorVector(self.factors, self.data - other.data)

    def __neg__(self):
        return TensorVector(self.factors, -self.data)

    def __mul__(self, c):
        return TensorVector(self.factors, self.data * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return TensorVector(self.factors, self.data / c)

    # -- actions ---------------------------------------------------------------
    def apply_local(self, mat: np.ndarray, axis: int) -> "TensorVector":
        return TensorVector(self.factors, _apply_axis(mat, self.data, axis))

    def apply(self, kind: str, i: int) -> "TensorVector":
        """Coproduct action of the generator ``kind_i`` (1-based ``i``)."""
        out = None
        for p, f in enumerate(self.factors):
            term = _apply_axis(f.dense(kind, i, exact=self.exact), self.data, p)
            out = term if out is None else out + term
        return TensorVector(self.factors, out)

    def apply_word(self, colors) -> "TensorVector":
        """``F_{c_1} F_{c_2} ... F_{c_j}`` applied to this vector (rightmost
        first)."""
        v = self
        for c in reversed(tuple(colors)):
            v = v.apply("F", c)
        return v

    def tensor(self, other: "TensorVector") -> "TensorVector":
        return TensorVector(self.factors + other.factors, np.multiply.outer(self.data, other.data))

    def __repr__(self):
        return f"<TensorVector dims={self.dims} nnz={len(self.entries)}>"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def _weight_depths(sys: RootSystem, top: Weight, weights) -> dict:
    """``sum(l)`` for ``top - mu = alpha(l)``, per distinct weight ``mu``."""
    inv = rational_inverse(sys.cartan)
    out = {}
    for mu in set(weights):
        diff = [top[j] - mu[j] for j in range(sys.rank)]
        l = [sum(inv[i][j] * diff[j] for j in range(sys.rank)) for i in range(sys.rank)]
        out[mu] = sum(l)
    return out


def shapovalov_gram(sys, weights, E, F, hw_index) -> SparseMatrix:
    """Shapovalov Gram matrix of a cyclic (highest weight) module, computed
    from ``S(v, v) = 1`` and ``S(F_i u, x) = S(u, E_i x)`` weight by weight
    going down from the top."""
    weights = [Weight(w) for w in weights]
    top = weights[hw_index]
    by_weight: dict = {}
    for b, w in enumerate(weights):
        by_weight.setdefault(w, []).append(b)
    if len(by_weight[top]) != 1:
        raise RepresentationError("highest weight space must be one-dimensional")
    depth = _weight_depths(sys, top, weights)
    order = sorted(by_weight, key=lambda w: (depth[w], tuple(-c for c in w)))
    G: dict = {(hw_index, hw_index): Fraction(1)}
    roots = [simple_root(sys, i) for i in range(1, sys.rank + 1)]
    for mu in order:
        if mu == top:
            continue
        idx = by_weight[mu]
        pos = {b: k for k, b in enumerate(idx)}
        cols = []  # (i, u, image restricted to V[mu])
        for i in range(sys.rank):
            above = mu + roots[i]
            for u in by_weight.get(above, []):
                img = F[i].column(u)
                vec = [img.get(b, 0) for b in idx]
                if any(vec):
                    cols.append((i, u, vec))
        rows = [[c[2][k] for c in cols] for k in range(len(idx))]
        piv = independent_columns(rows, len(cols))
        if len(piv) != len(idx):
            raise RepresentationError(f"weight space {mu} is not spanned by F-images; module not cyclic")
        A = [[cols[c][2][k] for c in piv] for k in range(len(idx))]
        Ainv = rational_inverse(A)
        # y[k][b] = S(u_k, E_{i_k} e_b)
        y = []
        for c in piv:
            i, u, _ = cols[c]
            row = []
            for b in idx:
                img = E[i].column(b)
                row.append(sum((G.get((u, x), 0) * val for x, val in img.items()), Fraction(0)))
            y.append(row)
        for a in idx:
            for b in idx:
                val = sum((Ainv[k][pos[a]] * y[k][pos[b]] for k in range(len(piv))), Fraction(0))
                if val != 0:
                    G[(a, b)] = val
    return SparseMatrix((len(weights), len(weights)), G)


def _eps_weight(sys: RootSystem, j: int) -> Weight:
    """Weight of the standard basis vector ``e_j`` (0-based) of ``C^{r+1}``."""
    r = sys.rank
    coords = [0] * r
    if j < r:
        coords[j] += 1
    if j >= 1:
        coords[j - 1] -= 1
    return Weight(coords)


@lru_cache(maxsize=None)
def exterior_rep(sys: RootSystem, k: int) -> ModuleRealization:
    """``V_{w_k}`` realized as the ``k``-th exterior power of ``C^{r+1}``.

    Basis: increasing ``k``-subsets of ``{0..r}`` in lexicographic order; the
    highest weight vector ``e_0 ^ ... ^ e_{k-1}`` has index 0.
    """
    _require_type_a(sys)
    r = sys.rank
    if not 1 <= k <= r:
        raise ValueError(f"exterior power index {k} out of range 1..{r}")
    subsets = list(itertools.combinations(range(r + 1), k))
    index = {s: b for b, s in enumerate(subsets)}
    weights = [sum((_eps_weight(sys, j) for j in s), Weight.zero(r)) for s in subsets]
    E, F, H = [], [], []
    for i in range(1, r + 1):
        e, f, h = {}, {}, {}
        for s, b in index.items():
            ss = set(s)
            # E_i = e_{i-1,i}: e_i -> e_{i-1}; the sorted position is unchanged
            if i in ss and (i - 1) not in ss:
                e[(index[tuple(sorted(ss - {i} | {i - 1}))], b)] = Fraction(1)
            if (i - 1) in ss and i not in ss:
                f[(index[tuple(sorted(ss - {i - 1} | {i}))], b)] = Fraction(1)
            hv = int((i - 1) in ss) - int(i in ss)
            if hv:
                h[(b, b)] = Fraction(hv)
        n = len(subsets)
        E.append(SparseMatrix((n, n), e))
        F.append(SparseMatrix((n, n), f))
        H.append(SparseMatrix((n, n), h))
    gram = shapovalov_gram(sys, weights, E, F, 0)
    return ModuleRealization(sys, weights, E, F, H, 0, gram, name=f"w{k}")


@lru_cache(maxsize=None)
def trivial_rep(sys: RootSystem) -> ModuleRealization:
    z = SparseMatrix.zeros(1)
    r = sys.rank
    return ModuleRealization(sys, [Weight.zero(r)], [z] * r, [z] * r, [z] * r, 0, SparseMatrix.identity(1), name="0")


def tensor(factors) -> ModuleRealization:
    factors = list(factors)
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    return TensorRealization(factors)


class _Echelon:
    """Incrementally maintained reduced row echelon basis of sparse vectors."""

    def __init__(self):
        self.rows: list[dict] = []
        self.pivots: list = []

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for p, row in zip(self.pivots, self.rows):
            c = v.get(p, 0)
            if c != 0:
                for key, val in row.items():
                    nv = v.get(key, 0) - c * val
                    if nv == 0:
                        v.pop(key, None)
                    else:
                        v[key] = nv
        return v

    def add(self, v: dict) -> bool:
        w = self.reduce(v)
        if not w:
            return False
        p = min(w)
        c = w[p]
        w = {k: x / c for k, x in w.items()}
        for idx, row in enumerate(self.rows):
            a = row.get(p, 0)
            if a != 0:
                new = dict(row)
                for key, val in w.items():
                    nv = new.get(key, 0) - a * val
                    if nv == 0:
                        new.pop(key, None)
                    else:
                        new[key] = nv
                self.rows[idx] = new
        self.rows.append(w)
        self.pivots.append(p)
        return True

    def coords(self, v: dict) -> list:
        out = [v.get(p, 0) for p in self.pivots]
        rest = dict(v)
        for c, row in zip(out, self.rows):
            if c != 0:
                for key, val in row.items():
                    nv = rest.get(key, 0) - c * val
                    if nv == 0:
                        rest.pop(key, None)
                    else:
                        rest[key] = nv
        if rest:
            raise RepresentationError("vector is not in the span")
        return out


def _host_action(kind: str, i: int, vec: dict) -> dict:
    """Generator action on ``C^{r+1}``-tensor-power vectors keyed by tuples."""
    src, dst = (i, i - 1) if kind == "E" else (i - 1, i)
    out: dict = {}
    for key, c in vec.items():
        for p, j in enumerate(key):
            if j == src:
                nk = key[:p] + (dst,) + key[p + 1:]
                nv = out.get(nk, 0) + c
                if nv == 0:
                    out.pop(nk, None)
                else:
                    out[nk] = nv
    return out


@lru_cache(maxsize=None)
def embed_irreducible(sys: RootSystem, lam) -> ModuleRealization:
    """Realize the irreducible module ``V_lam`` inside ``V_{w_1}^{(x)N}``,
    ``N = sum_i i*lam_i``.

    A singular vector of weight ``lam`` is found by exact kernel computation;
    its cyclic ``F``-span is the realization.  The tensor Shapovalov form of
    the host restricts to a multiple of the Shapovalov form of ``V_lam`` and is
    rescaled so the highest weight vector has norm 1.
    """
    _require_type_a(sys)
    lam = Weight(lam)
    r = sys.rank
    if not is_dominant_integral(sys, lam):
        raise ValueError(f"{lam} is not dominant integral")
    if all(c == 0 for c in lam):
        return trivial_rep(sys)
    N = sum((i + 1) * int(c) for i, c in enumerate(lam))
    counts = [sum(int(c) for c in lam)]
    for i in range(r):
        counts.append(counts[-1] - int(lam[i]))
    letters = [j for j, c in enumerate(counts) for _ in range(c)]
    top_basis = [tuple(p) for p in multiset_permutations(letters)]
    col = {key: k for k, key in enumerate(top_basis)}
    row_index: dict = {}
    rows_raw: list = []
    for i in range(1, r + 1):
        for key, k in col.items():
            for img, c in _host_action("E", i, {key: Fraction(1)}).items():
                rk = row_index.setdefault((i, img), len(rows_raw))
                if rk == len(rows_raw):
                    rows_raw.append({})
                rows_raw[rk][k] = rows_raw[rk].get(k, 0) + c
    rows = [[rw.get(k, 0) for k in range(len(top_basis))] for rw in rows_raw]
    kernel = rational_nullspace(rows, len(top_basis))
    if not kernel:
        raise RepresentationError(f"no singular vector of weight {lam} found in V_w1^{N}")
    top = {top_basis[k]: c for k, c in enumerate(kernel[0]) if c != 0}

    # cyclic F-span, weight by weight
    spaces: dict = {lam: _Echelon()}
    spaces[lam].add(top)
    order = [lam]
    frontier = [lam]
    roots = [simple_root(sys, i) for i in range(1, r + 1)]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(1, r + 1):
                low = mu - roots[i - 1]
                for row in list(spaces[mu].rows):
                    img = _host_action("F", i, row)
                    if not img:
                        continue
                    if low not in spaces:
                        spaces[low] = _Echelon()
                        order.append(low)
                        nxt.append(low)
                    spaces[low].add(img)
        frontier = nxt
    basis = []
    weights = []
    offsets = {}
    for mu in order:
        offsets[mu] = len(basis)
        basis.extend(spaces[mu].rows)
        weights.extend([mu] * len(spaces[mu].rows))
    n = len(basis)
    E, F, H = [], [], []
    for i in range(1, r + 1):
        e, f, h = {}, {}, {}
        for b, (vec, mu) in enumerate(zip(basis, weights)):
            for kind, store, target in (("E", e, mu + roots[i - 1]), ("F", f, mu - roots[i - 1])):
                img = _host_action(kind, i, vec)
                if img:
                    for k, c in enumerate(spaces[target].coords(img)):
                        if c != 0:
                            store[(offsets[target] + k, b)] = c
            hv = mu[i - 1]
            if hv:
                h[(b, b)] = Fraction(hv)
        E.append(SparseMatrix((n, n), e))
        F.append(SparseMatrix((n, n), f))
        H.append(SparseMatrix((n, n), h))
    # host Shapovalov form is the standard dot product on C^{r+1} tensor powers
    norm_top = sum((c * c for c in basis[0].values()), Fraction(0))
    g = {}
    for a in range(n):
        for b in range(a, n):
            if weights[a] != weights[b]:
                continue
            small, big = (basis[a], basis[b]) if len(basis[a]) <= len(basis[b]) else (basis[b], basis[a])
            val = sum((c * big.get(k, 0) for k, c in small.items()), Fraction(0)) / norm_top
            if val != 0:
                g[(a, b)] = val
                g[(b, a)] = val
    gram = SparseMatrix((n, n), g)
    return ModuleRealization(sys, weights, E, F, H, 0, gram, name=lam.label())


def realization_for(sys: RootSystem, lam) -> ModuleRealization:
    """Fundamental weights use exterior powers; other dominant weights are
    embedded in tensor powers of the defining representation."""
    lam = Weight(lam)
    nz = [i for i, c in enumerate(lam) if c != 0]
    if len(nz) == 1 and lam[nz[0]] == 1:
        return exterior_rep(sys, nz[0] + 1)
    return embed_irreducible(sys, lam)


# ---------------------------------------------------------------------------
# weight and singular subspaces, forms
# ---------------------------------------------------------------------------

def weight_subspace(V: ModuleRealization, mu) -> list[int]:
    """Flat indices of the basis vectors of weight ``mu``."""
    mu = np.array([int(c) for c in Weight(mu)], dtype=np.int64)
    return [int(b) for b in np.nonzero(np.all(V.weight_array == mu, axis=1))[0]]


def singular_subspace(V: ModuleRealization, mu) -> list[TensorVector]:
    """Exact basis of ``Sing V[mu]`` (joint kernel of all ``E_i`` on ``V[mu]``)."""
    idx = weight_subspace(V, mu)
    if not idx:
        return []
    row_index: dict = {}
    rows_raw: list = []
    for i in range(V.sys.rank):
        Ei = V.E[i]
        for k, b in enumerate(idx):
            for a, c in Ei.column(b).items():
                rk = row_index.setdefault((i, a), len(rows_raw))
                if rk == len(rows_raw):
                    rows_raw.append({})
                rows_raw[rk][k] = c
    rows = [[rw.get(k, 0) for k in range(len(idx))] for rw in rows_raw]
    kernel = rational_nullspace(rows, len(idx))
    out = []
    for vec in kernel:
        flat = np.empty(V.dim, dtype=object)
        flat.fill(Fraction(0))
        for b, c in zip(idx, vec):
            flat[b] = c
        out.append(TensorVector.from_flat(V, flat))
    return out


def _as_tensor_vector(V: ModuleRealization, u) -> TensorVector:
    if isinstance(u, TensorVector):
        if [f.dim for f in u.factors] != [f.dim for f in V.factors]:
            raise ValueError("vector shape does not match the realization")
        return u
    u = np.asarray(u)
    if u.size != V.dim:
        raise ValueError(f"vector of size {u.size} in a space of dimension {V.dim}")
    return TensorVector.from_flat(V, u)


def shapovalov_pair(V: ModuleRealization, u, v):
    """Tensor Shapovalov form ``S(u, v)`` (bilinear, no complex conjugation)."""
    u = _as_tensor_vector(V, u)
    v = _as_tensor_vector(V, v)
    exact = u.exact and v.exact
    data = u.data
    for p, f in enumerate(V.factors):
        data = _apply_axis(f.dense_gram(exact=exact), data, p)
    if exact:
        return sum((a * b for a, b in zip(data.reshape(-1), v.data.reshape(-1)) if a != 0 and b != 0), Fraction(0))
    return complex(np.sum(data.astype(complex) * v.data.astype(complex)))


def iterated_singular_vector(w0_coeffs: dict, parts) -> TensorVector:
    """Iterated singular vector ``sum_I a_I  F_{I_1} w_1 (x) ... (x) F_{I_k} w_k``.

    ``w0_coeffs`` maps index sequences ``I`` (a tuple of ``k`` blocks, each a
    tuple of 1-based colors) to the coefficients ``a_I`` of the downstairs
    singular vector; ``parts`` are the singular vectors ``w_p``.
    """
    parts = list(parts)
    k = len(parts)
    if not w0_coeffs:
        raise ValueError("empty coefficient table")
    color_counts = None
    for I in w0_coeffs:
        if len(I) != k:
            raise ValueError(f"index sequence {I} has {len(I)} blocks, expected {k}")
        cc = sorted(c for block in I for c in block)
        if color_counts is None:
            color_counts = cc
        elif cc != color_counts:
            raise ValueError("index sequences do not share one color multiset")
    factors = tuple(f for w in parts for f in w.factors)
    exact = all(w.exact for w in parts) and all(
        not isinstance(a, (complex, float, np.complexfloating, np.floating)) for a in w0_coeffs.values()
    )
    total = TensorVector.zeros(factors, exact=exact)
    # F-words applied to each part are shared between many I
    cache: dict = {}

    def word(p, block):
        key = (p, block)
        if key not in cache:
            w = parts[p] if exact else parts[p].to_complex()
            cache[key] = w.apply_word(block)
        return cache[key]

    for I, a in w0_coeffs.items():
        if a == 0:
            continue
        vecs = [word(p, tuple(block)) for p, block in enumerate(I)]
        if any(v.is_zero() for v in vecs):
            continue
        data = vecs[0].data
        for v in vecs[1:]:
            data = np.multiply.outer(data, v.data)
        total = total + TensorVector(factors, data) * a
    return total


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------

def relation_defects(V: ModuleRealization) -> list[str]:
    """Names of violated Chevalley/Serre relations (empty list if all hold)."""
    sys = V.sys
    r = sys.rank
    bad = []
    for i in range(r):
        for j in range(r):
            a = sys.cartan[i][j]
            if not (V.E[i].commutator(V.F[j]) == (V.H[i] if i == j else SparseMatrix.zeros(V.dim))):
                bad.append(f"[E{i+1},F{j+1}]")
            if not (V.H[i].commutator(V.E[j]) == V.E[j].scale(a)):
                bad.append(f"[H{i+1},E{j+1}]")
            if not (V.H[i].commutator(V.F[j]) == V.F[j].scale(-a)):
                bad.append(f"[H{i+1},F{j+1}]")
            if not V.H[i].commutator(V.H[j]).is_zero():
                bad.append(f"[H{i+1},H{j+1}]")
            if i != j:
                for X, name in ((V.E, "E"), (V.F, "F")):
                    m = X[j]
                    for _ in range(1 - a):
                        m = X[i].commutator(m)
                    if not m.is_zero():
                        bad.append(f"serre ad{name}{i+1}^{1-a} {name}{j+1}")
    return bad


def contravariance_defects(V: ModuleRealization) -> list[str]:
    """Check ``S(F_i u, v) = S(u, E_i v)`` and symmetry of the Gram matrix."""
    G = V.gram
    bad = []
    if not (G == G.T):
        bad.append("gram not symmetric")
    for i in range(V.sys.rank):
        if not (V.F[i].T @ G == G @ V.E[i]):
            bad.append(f"contravariance F{i+1}")
    return bad
