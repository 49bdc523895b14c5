"""Dense linear algebra over F_p on int64 numpy matrices.

Row reduction is vectorized per pivot; moduli stay below 2^31 so the
intermediate products fit int64.
"""

from __future__ import annotations

import numpy as np


def rref(mat, p: int):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = np.array(mat, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(mat, p: int):
    """Basis of the right kernel, as rows of a matrix."""
    m, pivots = rref(mat, p)
    rows, cols = m.shape
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r, fc]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64) if basis else np.zeros((0, cols), dtype=np.int64)


def solve(mat, rhs, p: int):
    """One solution of mat @ x = rhs, or None when inconsistent.

    Returns (x, nullity) so callers can tell unique from underdetermined.
    """
    a = np.array(mat, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64).reshape(-1, 1) % p
    aug = np.hstack([a, b])
    m, pivots = rref(aug, p)
    cols = a.shape[1]
    if cols in pivots:
        return None, None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = m[r, cols]
    nullity = cols - len(pivots)
    return x, nullity


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])
