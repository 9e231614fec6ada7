"""Exact linear algebra over finite fields and over the integers.

Matrices over a field are int64 numpy arrays of element encodings.  Prime
fields go through the kernels in :mod:`coxhecke.kernels`; extension fields
use a slower generic path built on :class:`FiniteField` operations.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .fields import FiniteField


def as_field_matrix(A, F: FiniteField) -> np.ndarray:
    A = np.array(A, dtype=np.int64, ndmin=2)
    if F.m == 1:
        A %= F.p
    return A


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(A, B, F: FiniteField) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if F.m == 1:
        C = np.empty((A.shape[0], B.shape[1]), dtype=np.int64)
        kernels.matmul_mod_p(np.ascontiguousarray(A), np.ascontiguousarray(B), C, F.p)
    else:
        prods = F.mul(A[:, :, None], B[None, :, :])
        C = F._undigit(F._digits(prods).sum(axis=1) % F.p)
    return C[:, 0] if vec else C


def matpow(A, e: int, F: FiniteField) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    result = identity(A.shape[0])
    while e:
        if e & 1:
            result = matmul(result, A, F)
        A = matmul(A, A, F)
        e >>= 1
    return result


def scalar_mul(c, A, F: FiniteField) -> np.ndarray:
    return np.asarray(F.mul(c, np.asarray(A, dtype=np.int64)), dtype=np.int64)


def _rref_generic(A: np.ndarray, F: FiniteField):
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
        A[r, c:] = F.mul(F.inv(int(A[r, c])), A[r, c:])
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = F.sub(A[rows, c:], F.mul(col[rows, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(A, F: FiniteField):
    """Reduced row echelon form and pivot columns (input is not modified)."""
    A = np.array(A, dtype=np.int64, ndmin=2, copy=True)
    if A.size == 0:
        return A, []
    if F.m == 1:
        A %= F.p
        A = np.ascontiguousarray(A)
        pivots = kernels.rref_mod_p(A, F.p)
    else:
        pivots = _rref_generic(A, F)
    return A, list(pivots)


def rank(A, F: FiniteField) -> int:
    return len(rref(A, F)[1])


def nullspace(A, F: FiniteField) -> np.ndarray:
    """Rows form a basis of {x : A x = 0}."""
    A = np.array(A, dtype=np.int64, ndmin=2)
    n = A.shape[1]
    R, pivots = rref(A, F)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.neg(int(R[i, f]))
    return basis


def left_nullspace(A, F: FiniteField) -> np.ndarray:
    return nullspace(np.asarray(A).T, F)


def row_space(A, F: FiniteField) -> np.ndarray:
    R, pivots = rref(A, F)
    return R[: len(pivots)]


def solve(A, b, F: FiniteField):
    """One solution x of A x = b, or None if inconsistent."""
    A = np.array(A, dtype=np.int64, ndmin=2)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    R, pivots = rref(np.hstack([A, b]), F)
    if pivots and pivots[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x


def inverse(A, F: FiniteField) -> np.ndarray:
    A = np.array(A, dtype=np.int64, ndmin=2)
    n = A.shape[0]
    R, pivots = rref(np.hstack([A, identity(n)]), F)
    if [c for c in pivots if c < n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def det(A, F: FiniteField) -> int:
    A = np.array(A, dtype=np.int64, ndmin=2, copy=True)
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            d = F.neg(d)
        d = F.mul(d, int(A[c, c]))
        inv = F.inv(int(A[c, c]))
        below = A[c + 1 :, c]
        rows = np.flatnonzero(below) + c + 1
        if rows.size:
            factors = F.mul(A[rows, c], inv)
            A[rows, c:] = F.sub(A[rows, c:], F.mul(np.asarray(factors)[:, None], A[c, c:][None, :]))
    return int(d)


def charpoly(A, F: FiniteField) -> list[int]:
    """Characteristic polynomial det(xI - A), coefficients low degree first.

    Hessenberg reduction followed by the standard recurrence.
    """
    H = np.array(A, dtype=np.int64, ndmin=2, copy=True)
    n = H.shape[0]
    for c in range(n - 2):
        nz = np.flatnonzero(H[c + 1 :, c])
        if nz.size == 0:
            continue
        piv = c + 1 + int(nz[0])
        if piv != c + 1:
            H[[c + 1, piv]] = H[[piv, c + 1]]
            H[:, [c + 1, piv]] = H[:, [piv, c + 1]]
        inv = F.inv(int(H[c + 1, c]))
        for i in range(c + 2, n):
            if H[i, c]:
                f = F.mul(int(H[i, c]), inv)
                H[i, :] = F.sub(H[i, :], F.mul(f, H[c + 1, :]))
                H[:, c + 1] = F.add(H[:, c + 1], F.mul(f, H[:, i]))
    # p_k = char poly of the leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        a = int(H[k - 1, k - 1])
        prev = polys[k - 1]
        pk = [0] + list(prev)
        for i, cf in enumerate(prev):
            pk[i] = F.sub(pk[i], F.mul(a, cf))
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = F.mul(prod, int(H[i, i - 1]))
            h = F.mul(prod, int(H[i - 1, k - 1]))
            if h:
                for j, cf in enumerate(polys[i - 1]):
                    pk[j] = F.sub(pk[j], F.mul(h, cf))
        polys.append(pk)
    return [int(c) for c in polys[n]]


def poly_eval_matrix(coeffs, A, F: FiniteField) -> np.ndarray:
    """Evaluate a polynomial (low degree first) at a square matrix by Horner."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        R = matmul(R, A, F)
        R[np.arange(n), np.arange(n)] = F.add(R[np.arange(n), np.arange(n)], int(c))
    return R


def multiplicative_order(A, F: FiniteField, bound: int = 10**6) -> int:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    I = identity(n)
    X = A.copy()
    k = 1
    while not np.array_equal(X, I):
        X = matmul(X, A, F)
        k += 1
        if k > bound:
            raise ValueError("matrix order exceeds bound")
    return k


def intersect_spaces(U, V, F: FiniteField) -> np.ndarray:
    """Basis rows of rowspace(U) ∩ rowspace(V)."""
    U = np.asarray(U, dtype=np.int64).reshape(-1, np.shape(U)[-1])
    V = np.asarray(V, dtype=np.int64).reshape(-1, U.shape[1])
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    K = left_nullspace(np.vstack([U, V]), F)
    if K.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    W = matmul(K[:, : U.shape[0]], U, F)
    return row_space(W, F)


def in_span(v, B, F: FiniteField) -> bool:
    B = np.asarray(B, dtype=np.int64)
    if B.shape[0] == 0:
        return not np.any(v)
    return rank(np.vstack([B, np.asarray(v)[None, :]]), F) == rank(B, F)


# -- integer matrices ---------------------------------------------------------

def smith_invariants(A) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    if not M or not M[0]:
        return []
    nr, nc = len(M), len(M[0])
    out = []
    t = 0
    while t < min(nr, nc):
        entries = [(abs(M[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if M[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, nr):
                if M[i][t]:
                    qq = M[i][t] // M[t][t]
                    for j in range(t, nc):
                        M[i][j] -= qq * M[t][j]
                    if M[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if M[t][j]:
                    qq = M[t][j] // M[t][t]
                    for i in range(t, nr):
                        M[i][j] -= qq * M[i][t]
                    if M[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if M[i][j] % M[t][t]]
                if not bad:
                    break
                i, _ = bad[0]
                for j in range(t, nc):
                    M[t][j] += M[i][j]
                continue
            entries = [(abs(M[i][j]), i, j) for i in range(t, nr) for j in range(t, nc)
                       if M[i][j] and (i == t or j == t)]
            _, i, j = min(entries)
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
        out.append(abs(M[t][t]))
        t += 1
    return out


def int_det(A) -> int:
    """Exact integer determinant by fraction-free Bareiss elimination."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def batch_matmul(A, B, F: FiniteField) -> np.ndarray:
    """Broadcasting matrix product over F (stacks of matrices on either side)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.m == 1:
        n = A.shape[-1]
        if n * (F.p - 1) ** 2 < 2**62:
            return np.matmul(A, B) % F.p
        return (np.matmul(A.astype(object), B.astype(object)) % F.p).astype(np.int64)
    prods = F.mul(A[..., :, :, None], B[..., None, :, :])
    return F._undigit(F._digits(prods).sum(axis=-3) % F.p)
