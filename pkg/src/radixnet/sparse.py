"""Exact nonnegative-integer sparse matrices.

Entries are stored COO-style in canonical (row, column) order with int64
values.  Every arithmetic operation checks for 64-bit overflow and raises
:class:`~radixnet.errors.IntegerOverflowError` instead of wrapping.
"""
from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .errors import DimensionError, IntegerOverflowError

INT64_MAX = _kernels.INT64_MAX


def _as_index_array(x) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(x, dtype=np.int64).reshape(-1))


def _check_dim(n, what) -> int:
    n = int(n)
    if n < 1:
        raise DimensionError(f"{what} must be >= 1, got {n}")
    if n > INT64_MAX:
        raise IntegerOverflowError("dimension", f"{what}={n}")
    return n


class SparseIntMatrix:
    """Immutable sparse matrix of nonnegative integers.

    Parameters
    ----------
    n_rows, n_cols
        Shape; both at least 1.
    row, col, data
        Parallel entry arrays in any order.  Zero values are dropped;
        duplicate coordinates, negative values and out-of-range indices
        raise ``ValueError``.
    """

    __slots__ = ("n_rows", "n_cols", "row", "col", "data", "_indptr")

    def __init__(self, n_rows, n_cols, row=(), col=(), data=()):
        self.n_rows = _check_dim(n_rows, "rows")
        self.n_cols = _check_dim(n_cols, "cols")
        row = _as_index_array(row)
        col = _as_index_array(col)
        data = _as_index_array(data)
        if not (row.shape == col.shape == data.shape):
            raise ValueError("row, col and data must have equal length")
        if data.size:
            if data.min() < 0:
                raise ValueError("entries must be nonnegative")
            if row.min() < 0 or row.max() >= self.n_rows:
                raise IndexError("row index out of range")
            if col.min() < 0 or col.max() >= self.n_cols:
                raise IndexError("column index out of range")
            keep = data != 0
            row, col, data = row[keep], col[keep], data[keep]
            order = np.lexsort((col, row))
            row, col, data = row[order], col[order], data[order]
            if row.size > 1:
                dup = (row[1:] == row[:-1]) & (col[1:] == col[:-1])
                if dup.any():
                    k = int(np.flatnonzero(dup)[0])
                    raise ValueError(f"duplicate entry at ({row[k]}, {col[k]})")
        self._set(row, col, data)

    def _set(self, row, col, data):
        for arr in (row, col, data):
            arr.flags.writeable = False
        self.row, self.col, self.data = row, col, data
        self._indptr = None

    @classmethod
    def _canonical(cls, n_rows, n_cols, row, col, data) -> "SparseIntMatrix":
        # trusted constructor: arrays already sorted, nonzero and in range
        self = cls.__new__(cls)
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._set(_as_index_array(row), _as_index_array(col), _as_index_array(data))
        return self

    @classmethod
    def from_dense(cls, array) -> "SparseIntMatrix":
        a = np.asarray(array)
        if a.ndim != 2:
            raise DimensionError("dense input must be 2-D")
        r, c = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], r, c, a[r, c].astype(np.int64))

    @classmethod
    def from_csr(cls, n_rows, n_cols, indptr, indices, data) -> "SparseIntMatrix":
        rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(indptr))
        out = cls._canonical(n_rows, n_cols, rows, indices, data)
        out._indptr = np.asarray(indptr, dtype=np.int64)
        return out

    # -- views --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def nnz(self) -> int:
        return int(self.data.size)

    @property
    def indptr(self) -> np.ndarray:
        if self._indptr is None:
            ptr = np.zeros(self.n_rows + 1, np.int64)
            np.cumsum(np.bincount(self.row, minlength=self.n_rows), out=ptr[1:])
            ptr.flags.writeable = False
            self._indptr = ptr
        return self._indptr

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(row, col, value)`` as Python ints in canonical order."""
        yield from zip(self.row.tolist(), self.col.tolist(), self.data.tolist())

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.row, self.col] = self.data
        return out

    def row_sums(self) -> np.ndarray:
        return np.bincount(self.row, weights=self.data, minlength=self.n_rows).astype(np.int64)

    def col_sums(self) -> np.ndarray:
        return np.bincount(self.col, weights=self.data, minlength=self.n_cols).astype(np.int64)

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.n_cols, self.n_rows, self.col, self.row, self.data)

    def binarized(self) -> "SparseIntMatrix":
        """Same sparsity pattern with every stored value replaced by 1."""
        return SparseIntMatrix._canonical(
            self.n_rows, self.n_cols, self.row, self.col, np.ones_like(self.data))

    def __getitem__(self, key) -> int:
        i, j = key
        lo, hi = self.indptr[i], self.indptr[i + 1]
        k = lo + np.searchsorted(self.col[lo:hi], j)
        if k < hi and self.col[k] == j:
            return int(self.data[k])
        return 0

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (self.shape == other.shape
                and np.array_equal(self.row, other.row)
                and np.array_equal(self.col, other.col)
                and np.array_equal(self.data, other.data))

    __hash__ = None

    def __repr__(self):
        return f"SparseIntMatrix(shape={self.shape}, nnz={self.nnz})"

    def __matmul__(self, other):
        return matmul(self, other)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def shift_matrix(n: int, s: int) -> SparseIntMatrix:
    """Cyclic shift by ``s``: row ``j`` has a single one at ``(j + s) mod n``."""
    n = _check_dim(n, "n")
    if s < 0:
        raise ValueError("shift must be nonnegative")
    rows = np.arange(n, dtype=np.int64)
    return SparseIntMatrix._canonical(n, n, rows, (rows + s % n) % n, np.ones(n, np.int64))


def identity(n: int) -> SparseIntMatrix:
    return shift_matrix(n, 0)


def ones_matrix(m: int, n: int) -> SparseIntMatrix:
    m = _check_dim(m, "rows")
    n = _check_dim(n, "cols")
    if m * n > INT64_MAX:
        raise IntegerOverflowError("ones_matrix", f"{m}x{n} entries")
    rows = np.repeat(np.arange(m, dtype=np.int64), n)
    cols = np.tile(np.arange(n, dtype=np.int64), m)
    return SparseIntMatrix._canonical(m, n, rows, cols, np.ones(m * n, np.int64))


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def scale(a: SparseIntMatrix, k: int) -> SparseIntMatrix:
    k = int(k)
    if k < 0:
        raise ValueError("scale factor must be nonnegative")
    if k == 0:
        return SparseIntMatrix(a.n_rows, a.n_cols)
    if a.nnz and int(a.data.max()) > INT64_MAX // k:
        raise IntegerOverflowError("scale", f"factor {k}")
    return SparseIntMatrix._canonical(a.n_rows, a.n_cols, a.row, a.col, a.data * k)


def add(a: SparseIntMatrix, b: SparseIntMatrix) -> SparseIntMatrix:
    if a.shape != b.shape:
        raise DimensionError(f"add: shapes {a.shape} and {b.shape} differ")
    row = np.concatenate([a.row, b.row])
    col = np.concatenate([a.col, b.col])
    data = np.concatenate([a.data, b.data])
    if row.size == 0:
        return SparseIntMatrix(a.n_rows, a.n_cols)
    order = np.lexsort((col, row))
    row, col, data = row[order], col[order], data[order]
    new = np.ones(row.size, dtype=bool)
    new[1:] = (row[1:] != row[:-1]) | (col[1:] != col[:-1])
    starts = np.flatnonzero(new)
    # at most two terms per coordinate
    pair = np.flatnonzero(~new)
    if pair.size and np.any(data[pair - 1] > INT64_MAX - data[pair]):
        raise IntegerOverflowError("add")
    return SparseIntMatrix._canonical(
        a.n_rows, a.n_cols, row[starts], col[starts], np.add.reduceat(data, starts))


def kron(a: SparseIntMatrix, b: SparseIntMatrix) -> SparseIntMatrix:
    """Kronecker product, ``a``'s index major and ``b``'s minor."""
    n_rows = a.n_rows * b.n_rows
    n_cols = a.n_cols * b.n_cols
    if n_rows > INT64_MAX or n_cols > INT64_MAX:
        raise IntegerOverflowError("kron", f"product shape {n_rows}x{n_cols}")
    if a.nnz * b.nnz == 0:
        return SparseIntMatrix(n_rows, n_cols)
    if int(a.data.max()) * int(b.data.max()) > INT64_MAX:
        raise IntegerOverflowError("kron", "entry product")
    row = (a.row[:, None] * b.n_rows + b.row[None, :]).ravel()
    col = (a.col[:, None] * b.n_cols + b.col[None, :]).ravel()
    data = (a.data[:, None] * b.data[None, :]).ravel()
    order = np.lexsort((col, row))
    return SparseIntMatrix._canonical(n_rows, n_cols, row[order], col[order], data[order])


def matmul(a: SparseIntMatrix, b: SparseIntMatrix) -> SparseIntMatrix:
    """Exact integer product; raises on any intermediate 64-bit overflow."""
    if a.n_cols != b.n_rows:
        raise DimensionError(f"matmul: {a.shape} @ {b.shape} not conformable")
    indptr, indices, data, status = _kernels.matmul_csr(
        a.indptr, a.col, a.data, b.indptr, b.col, b.data, b.n_cols)
    if status == _kernels.STATUS_OVERFLOW:
        raise IntegerOverflowError("matmul", f"{a.shape} @ {b.shape}")
    return SparseIntMatrix.from_csr(a.n_rows, b.n_cols, indptr, indices, data)


def chain_matmul(matrices) -> SparseIntMatrix:
    """Left-to-right product of a non-empty sequence."""
    matrices = list(matrices)
    if not matrices:
        raise ValueError("chain_matmul needs at least one matrix")
    out = matrices[0]
    for m in matrices[1:]:
        out = matmul(out, m)
    return out


def is_constant(a: SparseIntMatrix) -> Optional[int]:
    """Return ``m`` if every entry of ``a`` equals ``m``, else ``None``.

    An all-zero matrix is the constant 0.
    """
    if a.nnz == 0:
        return 0
    if a.nnz != a.n_rows * a.n_cols:
        return None
    first = int(a.data[0])
    if np.all(a.data == first):
        return first
    return None
