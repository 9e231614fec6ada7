"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def rref_mod_p(A, p):
    nr, nc = A.shape
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def matmul_mod_p(A, B, C, p):
    k = A.shape[1]
    if k * (p - 1) ** 2 < 2**62:
        np.matmul(A, B, out=C)
        C %= p
    else:
        C[...] = (A.astype(object) @ B.astype(object)) % p
