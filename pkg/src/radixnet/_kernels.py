"""Hot integer kernels: sparse matmul and exhaustive layered path enumeration.

Each kernel has a numba implementation and a pure numpy/Python twin.  The
numba path is used when numba imports and ``RADIXNET_DISABLE_NUMBA`` is unset
(or false-y); otherwise the fallbacks are bound.  Both variants stay importable
by name so they can be tested and benchmarked against each other.

All kernels report overflow and guard trips through an integer status code
rather than raising, so the numba versions stay in nopython mode.
"""
import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func


INT64_MAX = np.iinfo(np.int64).max

STATUS_OK = 0
STATUS_OVERFLOW = 1
STATUS_LIMIT = 2

_FLAG = "RADIXNET_DISABLE_NUMBA"


def _numba_disabled():
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


BACKEND = "numpy" if (numba is None or _numba_disabled()) else "numba"


# ---------------------------------------------------------------------------
# matmul: CSR x CSR -> CSR with sorted column indices
# ---------------------------------------------------------------------------

@njit(cache=True)
def matmul_csr_numba(a_indptr, a_indices, a_data, b_indptr, b_indices, b_data, n_cols):
    n_rows = a_indptr.shape[0] - 1
    marker = np.full(n_cols, -1, np.int64)
    indptr = np.zeros(n_rows + 1, np.int64)
    # symbolic pass
    for i in range(n_rows):
        cnt = 0
        for p in range(a_indptr[i], a_indptr[i + 1]):
            k = a_indices[p]
            for q in range(b_indptr[k], b_indptr[k + 1]):
                j = b_indices[q]
                if marker[j] != i:
                    marker[j] = i
                    cnt += 1
        indptr[i + 1] = indptr[i] + cnt

    nnz = indptr[n_rows]
    indices = np.empty(nnz, np.int64)
    data = np.empty(nnz, np.int64)
    acc = np.zeros(n_cols, np.int64)
    marker[:] = -1
    for i in range(n_rows):
        pos = indptr[i]
        for p in range(a_indptr[i], a_indptr[i + 1]):
            k = a_indices[p]
            va = a_data[p]
            for q in range(b_indptr[k], b_indptr[k + 1]):
                j = b_indices[q]
                vb = b_data[q]
                if vb != 0 and va > INT64_MAX // vb:
                    return indptr, indices, data, STATUS_OVERFLOW
                prod = va * vb
                if marker[j] != i:
                    marker[j] = i
                    indices[pos] = j
                    pos += 1
                    acc[j] = prod
                else:
                    if acc[j] > INT64_MAX - prod:
                        return indptr, indices, data, STATUS_OVERFLOW
                    acc[j] += prod
        indices[indptr[i]:pos].sort()
        for t in range(indptr[i], pos):
            data[t] = acc[indices[t]]
    return indptr, indices, data, STATUS_OK


def matmul_csr_numpy(a_indptr, a_indices, a_data, b_indptr, b_indices, b_data, n_cols):
    n_rows = a_indptr.shape[0] - 1
    empty = np.zeros(0, np.int64)
    a_rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(a_indptr))
    b_row_nnz = np.diff(b_indptr)
    counts = b_row_nnz[a_indices]
    total = int(counts.sum())
    if total == 0:
        return np.zeros(n_rows + 1, np.int64), empty, empty, STATUS_OK

    # expand every (a entry, matching b entry) pair
    first = np.repeat(b_indptr[a_indices], counts)
    block_start = np.repeat(np.cumsum(counts) - counts, counts)
    b_pos = first + (np.arange(total, dtype=np.int64) - block_start)
    rows = np.repeat(a_rows, counts)
    va = np.repeat(a_data, counts)
    vb = b_data[b_pos]
    cols = b_indices[b_pos]
    if np.any(va > INT64_MAX // np.maximum(vb, 1)):
        return np.zeros(n_rows + 1, np.int64), empty, empty, STATUS_OVERFLOW
    prod = va * vb

    order = np.lexsort((cols, rows))
    rows, cols, prod = rows[order], cols[order], prod[order]
    new = np.ones(total, dtype=bool)
    new[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
    starts = np.flatnonzero(new)
    # float sums only screen for overflow; suspicious groups are redone exactly
    approx = np.add.reduceat(prod.astype(np.float64), starts)
    if np.any(approx >= 2.0 ** 62):
        bounds = np.append(starts, total)
        for g in np.flatnonzero(approx >= 2.0 ** 62):
            exact = sum(int(x) for x in prod[bounds[g]:bounds[g + 1]])
            if exact > INT64_MAX:
                return np.zeros(n_rows + 1, np.int64), empty, empty, STATUS_OVERFLOW
    data = np.add.reduceat(prod, starts)
    out_rows = rows[starts]
    indptr = np.zeros(n_rows + 1, np.int64)
    np.cumsum(np.bincount(out_rows, minlength=n_rows), out=indptr[1:])
    return indptr, cols[starts], data, STATUS_OK


# ---------------------------------------------------------------------------
# exhaustive path enumeration over a layered graph stored as one global CSR
# ---------------------------------------------------------------------------

@njit(cache=True)
def enumerate_paths_numba(indptr, indices, source, depth, out_start, n_out, allowed, limit):
    """Walk every path of ``depth`` edges from ``source``; tally arrivals."""
    counts = np.zeros(n_out, np.int64)
    total = 0
    stack_node = np.empty(depth + 1, np.int64)
    stack_ptr = np.empty(depth + 1, np.int64)
    level = 0
    stack_node[0] = source
    stack_ptr[0] = indptr[source]
    while level >= 0:
        node = stack_node[level]
        if level == depth:
            counts[node - out_start] += 1
            total += 1
            if total > limit:
                return counts, total, STATUS_LIMIT
            level -= 1
            continue
        p = stack_ptr[level]
        if p == indptr[node + 1]:
            level -= 1
            continue
        stack_ptr[level] = p + 1
        nxt = indices[p]
        if not allowed[nxt]:
            continue
        level += 1
        stack_node[level] = nxt
        stack_ptr[level] = indptr[nxt]
    return counts, total, STATUS_OK


def enumerate_paths_python(indptr, indices, source, depth, out_start, n_out, allowed, limit):
    counts = np.zeros(n_out, np.int64)
    total = 0
    indptr = indptr.tolist()
    indices = indices.tolist()
    allowed = allowed.tolist()
    stack = [(source, iter(indices[indptr[source]:indptr[source + 1]]))]
    while stack:
        if len(stack) == depth + 1:
            node, _ = stack.pop()
            counts[node - out_start] += 1
            total += 1
            if total > limit:
                return counts, total, STATUS_LIMIT
            continue
        nxt = next(stack[-1][1], None)
        if nxt is None:
            stack.pop()
        elif allowed[nxt]:
            stack.append((nxt, iter(indices[indptr[nxt]:indptr[nxt + 1]])))
    return counts, total, STATUS_OK


if BACKEND == "numba":
    matmul_csr = matmul_csr_numba
    enumerate_paths = enumerate_paths_numba
else:
    matmul_csr = matmul_csr_numpy
    enumerate_paths = enumerate_paths_python
