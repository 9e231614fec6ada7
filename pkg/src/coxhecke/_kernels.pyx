# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled modular linear-algebra kernels (prime fields only)."""

ctypedef long long i64


cdef inline i64 _inv_mod(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a, qq, tmp
    while newr != 0:
        qq = r // newr
        tmp = t - qq * newt
        t = newt
        newt = tmp
        tmp = r - qq * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(i64[:, ::1] A, i64 p):
    """Reduce ``A`` (entries in [0, p)) to reduced row echelon form in place.

    Returns the list of pivot columns.
    """
    cdef Py_ssize_t nr = A.shape[0], nc = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, x
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        inv = _inv_mod(A[r, c], p)
        if inv != 1:
            for j in range(c, nc):
                A[r, j] = (A[r, j] * inv) % p
        for i in range(nr):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for j in range(c, nc):
                if A[r, j] != 0:
                    x = (A[i, j] - f * A[r, j]) % p
                    if x < 0:
                        x += p
                    A[i, j] = x
        pivots.append(c)
        r += 1
    return pivots


def matmul_mod_p(const i64[:, ::1] A, const i64[:, ::1] B, i64[:, ::1] C, i64 p):
    """C = A @ B mod p, reducing the accumulator before it can overflow."""
    cdef Py_ssize_t n = A.shape[0], k = A.shape[1], m = B.shape[1]
    cdef Py_ssize_t i, j, t
    cdef i64 acc, a
    cdef i64 limit = 9000000000000000000 - (p - 1) * (p - 1)
    for i in range(n):
        for j in range(m):
            C[i, j] = 0
    for i in range(n):
        for t in range(k):
            a = A[i, t]
            if a == 0:
                continue
            for j in range(m):
                acc = C[i, j] + a * B[t, j]
                if acc >= limit:
                    acc %= p
                C[i, j] = acc
        for j in range(m):
            C[i, j] %= p
