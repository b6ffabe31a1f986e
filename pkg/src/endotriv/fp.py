"""Dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries in 0..p-1. Primes are small
(the group orders we handle are at most 128) so products never overflow.
"""

from __future__ import annotations

import numpy as np


def reduce(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return np.mod(a @ b, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = reduce(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        if col.any():
            m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning {x : a x = 0}."""
    a = np.asarray(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return identity(cols)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """A subset of the columns of ``a`` forming a basis of its column space."""
    a = np.asarray(a)
    if a.shape[1] == 0:
        return a
    _, pivots = rref(a, p)
    return a[:, pivots]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b (b may have several columns), or None."""
    a = reduce(a, p)
    b = reduce(b, p)
    if b.ndim == 1:
        b = b[:, None]
    rows, cols = a.shape
    r, pivots = rref(np.hstack([a, b]), p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x


def in_span(a: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(a, v, p) is not None


def batch_rank(a: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices ``a[i]`` at once, by simultaneous elimination."""
    m = reduce(a, p).copy()
    n, rows, cols = m.shape
    if n == 0 or rows == 0 or cols == 0:
        return np.zeros(n, dtype=np.int64)
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(x, -1, p) for x in range(1, p)]
    ranks = np.zeros(n, dtype=np.int64)
    ar = np.arange(n)
    for c in range(cols):
        # candidate pivot rows: not yet used (index >= rank) and nonzero in column c
        live = (np.arange(rows)[None, :] >= ranks[:, None]) & (m[:, :, c] != 0)
        has = live.any(axis=1)
        if not has.any():
            continue
        idx = ar[has]
        piv = np.argmax(live[has], axis=1)
        r = ranks[has]
        prow = m[idx, piv].copy()
        m[idx, piv] = m[idx, r]
        prow = (prow * inv[prow[:, c]][:, None]) % p
        m[idx, r] = prow
        factors = m[idx, :, c].copy()
        factors[np.arange(len(idx)), r] = 0
        m[idx] = (m[idx] - factors[:, :, None] * prow[:, None, :]) % p
        ranks[has] += 1
        if (ranks >= rows).all():
            break
    return ranks
