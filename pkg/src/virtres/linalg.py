"""Dense rank computation over GF(p), vectorized with numpy int64."""

import numpy as np


def rank_mod_p(matrix, p):
    """Rank of an integer matrix mod p.  Accepts a 2D array-like."""
    A = np.array(matrix, dtype=np.int64) % p
    if A.size == 0:
        return 0
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivot = None
        col = A[rank:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pivot = rank + int(nz[0])
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        inv = pow(int(A[rank, c]), p - 2, p)
        A[rank] = (A[rank] * inv) % p
        below = A[rank + 1:, c]
        nzr = np.nonzero(below)[0]
        if nzr.size:
            A[rank + 1 + nzr] = (A[rank + 1 + nzr] - np.outer(below[nzr], A[rank])) % p
        rank += 1
    return rank


def sparse_rank_mod_p(shape, triples, p):
    """Rank from (row, col, value) triples; small wrapper over the dense routine."""
    rows, cols = shape
    if rows == 0 or cols == 0:
        return 0
    A = np.zeros((rows, cols), dtype=np.int64)
    for i, j, v in triples:
        A[i, j] = (A[i, j] + v) % p
    return rank_mod_p(A, p)
