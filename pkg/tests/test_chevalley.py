import numpy as np
import pytest

from coxhecke import linalg
from coxhecke.chevalley import chevalley_algebra, jacobi_holds
from coxhecke.errors import PreconditionError
from coxhecke.rootdata import build_root_datum


@pytest.mark.parametrize("tag,l,dim", [("A1", 5, 3), ("A2", 7, 8), ("B2", 7, 10), ("G2", 13, 14), ("D4", 7, 28)])
def test_dimension_and_jacobi(tag, l, dim):
    alg = chevalley_algebra(build_root_datum(tag), l)
    assert alg.dim == dim
    assert alg.jacobi_checked


@pytest.mark.parametrize("tag,bound", [("A2", 1), ("B2", 2), ("G2", 3)])
def test_structure_constants_bounded_by_string_length(tag, bound):
    assert chevalley_algebra(build_root_datum(tag), 13).max_structure_constant() == bound


def test_jacobi_detects_corruption():
    alg = chevalley_algebra(build_root_datum("A2"), 7)
    c = alg.brackets.copy()
    nz = np.argwhere(c)
    i, j, k = nz[len(nz) // 2]
    c[i, j, k] += 1
    assert not jacobi_holds(c)


def test_ad_is_derivation_mod_l():
    alg = chevalley_algebra(build_root_datum("B2"), 11)
    F = alg.field
    rng = np.random.default_rng(0)
    x, y = rng.integers(0, 11, alg.dim), rng.integers(0, 11, alg.dim)
    lhs = alg.ad_of(alg.bracket(x, y))
    ax, ay = alg.ad_of(x), alg.ad_of(y)
    rhs = F.sub(linalg.matmul(ax, ay, F), linalg.matmul(ay, ax, F))
    assert np.array_equal(lhs, rhs)


def test_bad_prime_rejected():
    with pytest.raises(PreconditionError):
        chevalley_algebra(build_root_datum("G2"), 3)
