"""Sparse matrices with exact entries, keyed by ``(row, column)``."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.sparse as sp

__all__ = ["SparseMatrix"]


class SparseMatrix:
    """Immutable sparse matrix; entries are stored only when nonzero."""

    __slots__ = ("shape", "entries", "_cols", "_rows")

    def __init__(self, shape, entries=None):
        self.shape = (int(shape[0]), int(shape[1]))
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if v != 0:
                    clean[(int(i), int(j))] = v
        self.entries = clean
        self._cols = None
        self._rows = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls((n, n), {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "SparseMatrix":
        return cls((m, m if n is None else n))

    @classmethod
    def from_dense(cls, arr) -> "SparseMatrix":
        arr = np.asarray(arr, dtype=object)
        m, n = arr.shape
        return cls((m, n), {(i, j): arr[i, j] for i in range(m) for j in range(n) if arr[i, j] != 0})

    # -- structure -----------------------------------------------------------
    @property
    def nnz(self) -> int:
        return len(self.entries)

    def columns(self) -> dict:
        """``{col: {row: value}}``."""
        if self._cols is None:
            cols: dict = {}
            for (i, j), v in self.entries.items():
                cols.setdefault(j, {})[i] = v
            self._cols = cols
        return self._cols

    def rows(self) -> dict:
        """``{row: {col: value}}``."""
        if self._rows is None:
            rows: dict = {}
            for (i, j), v in self.entries.items():
                rows.setdefault(i, {})[j] = v
            self._rows = rows
        return self._rows

    def column(self, j: int) -> dict:
        return self.columns().get(j, {})

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    # -- algebra ---------------------------------------------------------------
    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseMatrix(self.shape, out)

    def __sub__(self, other):
        self._check_same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) - v
        return SparseMatrix(self.shape, out)

    def __neg__(self):
        return SparseMatrix(self.shape, {k: -v for k, v in self.entries.items()})

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.shape, {k: c * v for k, v in self.entries.items()})

    def __mul__(self, c):
        if isinstance(c, SparseMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out: dict = {}
        rows_b = other.rows()
        for (i, k), a in self.entries.items():
            for j, b in rows_b.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseMatrix((self.shape[0], other.shape[1]), out)

    def commutator(self, other) -> "SparseMatrix":
        return self @ other - other @ self

    @property
    def T(self) -> "SparseMatrix":
        return SparseMatrix((self.shape[1], self.shape[0]), {(j, i): v for (i, j), v in self.entries.items()})

    def kron(self, other) -> "SparseMatrix":
        m2, n2 = other.shape
        out = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                out[(i * m2 + k, j * n2 + l)] = a * b
        return SparseMatrix((self.shape[0] * m2, self.shape[1] * n2), out)

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse vector ``{index: value}``."""
        cols = self.columns()
        out: dict = {}
        for j, x in vec.items():
            for i, a in cols.get(j, {}).items():
                out[i] = out.get(i, 0) + a * x
        return {i: v for i, v in out.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    # -- conversion -------------------------------------------------------------
    def to_dense(self, dtype=object) -> np.ndarray:
        if dtype is object:
            out = np.empty(self.shape, dtype=object)
            out.fill(Fraction(0))
            for (i, j), v in self.entries.items():
                out[i, j] = v
            return out
        out = np.zeros(self.shape, dtype=dtype)
        for (i, j), v in self.entries.items():
            out[i, j] = complex(v) if np.issubdtype(np.dtype(dtype), np.complexfloating) else float(v)
        return out

    def to_scipy(self, dtype=complex):
        if not self.entries:
            return sp.csr_matrix(self.shape, dtype=dtype)
        ij = np.array(list(self.entries.keys()), dtype=np.int64)
        conv = complex if np.issubdtype(np.dtype(dtype), np.complexfloating) else float
        vals = np.array([conv(v) for v in self.entries.values()], dtype=dtype)
        return sp.csr_matrix((vals, (ij[:, 0], ij[:, 1])), shape=self.shape)

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"
