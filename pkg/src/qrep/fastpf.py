"""Vectorized linear algebra over small prime fields.

Used where the exact generic code would be too slow: exhaustive searches
over every representation of a dimension vector.  Results are cross-checked
against :mod:`qrep.matrix` in the test suite.
"""

from __future__ import annotations

import itertools

import numpy as np

# products of two reduced entries must fit in int64
MAX_PRIME = 1 << 20


def _inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


def batched_rank(mats, p: int) -> np.ndarray:
    """Ranks of a stack of matrices ``(batch, rows, cols)`` over F_p."""
    if p > MAX_PRIME:
        raise ValueError(f"prime {p} too large for the vectorized kernel")
    A = np.asarray(mats, dtype=np.int64) % p
    if A.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    nb, nr, nc = A.shape
    rank = np.zeros(nb, dtype=np.int64)
    if nb == 0 or nr == 0 or nc == 0:
        return rank
    A = A.copy()
    inv = _inverse_table(p)
    rows = np.arange(nr)
    for c in range(nc):
        eligible = (A[:, :, c] != 0) & (rows[None, :] >= rank[:, None])
        has = eligible.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        piv = np.argmax(eligible[idx], axis=1)
        r = rank[idx]
        prow = A[idx, piv].copy()
        A[idx, piv] = A[idx, r]
        prow = (prow * inv[prow[:, c]][:, None]) % p
        A[idx, r] = prow
        factors = A[idx, :, c].copy()
        factors[rows[None, :] <= r[:, None]] = 0
        A[idx] = (A[idx] - factors[:, :, None] * prow[:, None, :]) % p
        rank[idx] += 1
    return rank


def all_matrix_tuples(shapes, p: int) -> np.ndarray:
    """Every tuple of matrices with the given shapes over F_p, flattened.

    Returns an int array ``(p**N, N)`` where N is the total entry count; the
    order is lexicographic in the flattened entries (row-major per matrix, in
    the order of ``shapes``).
    """
    n = sum(r * c for r, c in shapes)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    return grid


def split_tuples(flat: np.ndarray, shapes) -> list[np.ndarray]:
    """Inverse of the flattening in :func:`all_matrix_tuples`."""
    out = []
    pos = 0
    for r, c in shapes:
        out.append(flat[:, pos:pos + r * c].reshape(flat.shape[0], r, c))
        pos += r * c
    return out


def hom_differentials(arrows, dims_m, maps_m, dims_v, maps_v) -> np.ndarray:
    """Differentials of the Hom complex from one M to a batch of V.

    ``maps_m`` is a list of int arrays (one per arrow, shape ``dims_m[t] x dims_m[s]``);
    ``maps_v`` a list of batched arrays ``(batch, dims_v[t], dims_v[s])``.
    Row/column ordering matches :func:`qrep.homext.hom_complex`.
    """
    nv = len(dims_m)
    col_off = []
    pos = 0
    for i in range(nv):
        col_off.append(pos)
        pos += dims_v[i] * dims_m[i]
    ncols = pos
    row_off = []
    pos = 0
    for s, t in arrows:
        row_off.append(pos)
        pos += dims_v[t] * dims_m[s]
    nrows = pos
    batch = maps_v[0].shape[0] if maps_v else 1
    D = np.zeros((batch, nrows, ncols), dtype=np.int64)
    for a, (s, t) in enumerate(arrows):
        Ma = np.asarray(maps_m[a], dtype=np.int64).reshape(dims_m[t], dims_m[s])
        Va = maps_v[a]
        for r in range(dims_v[t]):
            for c in range(dims_m[s]):
                row = row_off[a] + r * dims_m[s] + c
                # phi_t[r][k] * M_a[k][c]
                for k in range(dims_m[t]):
                    D[:, row, col_off[t] + r * dims_m[t] + k] += Ma[k, c]
                # - V_a[r][k] * phi_s[k][c]
                for k in range(dims_v[s]):
                    D[:, row, col_off[s] + k * dims_m[s] + c] -= Va[:, r, k]
    return D
