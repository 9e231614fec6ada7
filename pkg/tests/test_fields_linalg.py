import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from coxhecke import _kernels_py, kernels, linalg
from coxhecke.errors import UsageError
from coxhecke.fields import GF, is_prime, multiplicative_order

FIELDS = [(2, 1), (3, 1), (13, 1), (2, 3), (3, 2), (29, 2)]


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_axioms_exhaustive_small(p, m):
    F = GF(p, m)
    xs = np.arange(F.q)
    if F.q <= 27:
        for a in range(F.q):
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
        # distributivity over all pairs with a fixed third element
        for c in (1, F.q - 1):
            assert np.array_equal(F.mul(c, F.add(xs[:, None], xs[None, :])),
                                  F.add(F.mul(c, xs)[:, None], F.mul(c, xs)[None, :]))
    # the multiplicative group is cyclic of order q - 1
    g = F.generator
    assert F.order(g) == F.q - 1


@pytest.mark.parametrize("p,m", FIELDS)
def test_roots_of_unity(p, m):
    F = GF(p, m)
    for n in range(2, 10):
        if (F.q - 1) % n == 0:
            z = F.root_of_unity(n)
            assert F.order(z) == n


def test_field_rejects_composite():
    with pytest.raises(UsageError):
        GF(15)
    assert is_prime(10007) and not is_prime(10001)


@given(st.integers(2, 200), st.integers(2, 50))
def test_multiplicative_order_matches_definition(a, n):
    if np.gcd(a, n) != 1:
        return
    k = multiplicative_order(a, n)
    assert pow(a, k, n) == 1 % n
    assert all(pow(a, j, n) != 1 for j in range(1, k))


def _span_size(A, p):
    """Brute-force oracle: number of distinct vectors in the row span."""
    vecs = set()
    for coeffs in itertools.product(range(p), repeat=A.shape[0]):
        vecs.add(tuple((np.array(coeffs) @ A) % p))
    return len(vecs)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.sampled_from([2, 3, 5]), st.integers(0, 2**31))
def test_rank_matches_span_count(r, c, p, seed):
    A = np.random.default_rng(seed).integers(0, p, size=(r, c))
    rk = linalg.rank(A, GF(p))
    assert p**rk == _span_size(A, p)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31))
def test_nullspace_is_kernel(r, c, seed):
    F = GF(13)
    A = np.random.default_rng(seed).integers(0, 13, size=(r, c))
    N = linalg.nullspace(A, F)
    assert N.shape[0] == c - linalg.rank(A, F)
    if N.size:
        assert not np.any(linalg.matmul(A, N.T, F))


@pytest.mark.parametrize("p,m", [(7, 1), (3, 2)])
def test_inverse_and_det(p, m):
    F = GF(p, m)
    rng = np.random.default_rng(1)
    for _ in range(20):
        A = rng.integers(0, F.q, size=(4, 4))
        if linalg.det(A, F) == 0:
            continue
        B = linalg.inverse(A, F)
        assert np.array_equal(linalg.matmul(A, B, F), linalg.identity(4))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 4))
def test_int_det_and_smith_against_sympy(seed, n):
    A = np.random.default_rng(seed).integers(-4, 5, size=(n, n))
    M = sympy.Matrix(A.tolist())
    assert linalg.int_det(A) == int(M.det())
    if M.det() != 0:
        snf = smith_normal_form(M, domain=sympy.ZZ)
        expected = sorted(abs(int(snf[i, i])) for i in range(n))
        assert sorted(linalg.smith_invariants(A)) == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**31))
def test_backends_agree(r, c, seed):
    p = 10007
    A = np.random.default_rng(seed).integers(0, p, size=(r, c), dtype=np.int64)
    a1, a2 = A.copy(), A.copy()
    piv1 = _kernels_py.rref_mod_p(a1, p)
    piv2 = kernels.rref_mod_p(a2, p)
    assert list(piv1) == list(piv2)
    assert np.array_equal(a1, a2)
    B = np.random.default_rng(seed + 1).integers(0, p, size=(c, 3), dtype=np.int64)
    C1 = np.empty((r, 3), dtype=np.int64)
    C2 = np.empty((r, 3), dtype=np.int64)
    _kernels_py.matmul_mod_p(A, B, C1, p)
    kernels.matmul_mod_p(A, B, C2, p)
    assert np.array_equal(C1, C2)
    assert np.array_equal(C1, (A.astype(object) @ B.astype(object)) % p)


def test_charpoly_cayley_hamilton():
    F = GF(11)
    A = np.random.default_rng(3).integers(0, 11, size=(5, 5))
    cp = linalg.charpoly(A, F)
    assert not np.any(linalg.poly_eval_matrix(cp, A, F))
