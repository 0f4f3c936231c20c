"""Dense linear algebra over F_p on numpy integer arrays."""
from __future__ import annotations

import numpy as np


def as_fp(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, 0), dtype=np.int64)
    return A % p


def rref(M, p: int):
    """(reduced row echelon form, pivot columns) over F_p."""
    A = as_fp(M, p).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p: int) -> int:
    A = as_fp(M, p)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of {v : M v = 0}."""
    A = as_fp(M, p)
    rows, cols = A.shape
    R, piv = rref(A, p) if A.size else (A, [])
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-R[i, fc]) % p
    return out


def left_nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of {v : v M = 0}."""
    return nullspace(as_fp(M, p).T, p)


def in_span(rows, v, p: int) -> bool:
    rows = as_fp(rows, p)
    if rows.size == 0:
        return not np.any(as_fp(v, p))
    return rank(np.vstack([rows, as_fp(v, p)]), p) == rank(rows, p)
