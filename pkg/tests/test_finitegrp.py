import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxhecke.errors import PreconditionError, ResourceError, UnsupportedError, UsageError
from coxhecke.fields import GF
from coxhecke.finitegrp import (
    FiniteGroup,
    GroupModule,
    MatrixHom,
    cohomology_report,
    conjugation_module,
    h0,
    h1,
    h1_naive,
    hom_dimension,
    natural_module,
    pgl_representatives,
    simple_submodules,
    special_linear_group,
    trivial_module,
    unipotent_lift_order,
)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sl2_order(p):
    assert len(special_linear_group(2, GF(p))) == p * (p * p - 1)


def test_sl3_f2_order():
    assert len(special_linear_group(3, GF(2))) == 168


def test_group_cap():
    with pytest.raises(ResourceError):
        FiniteGroup([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], GF(13), cap=100)


def _cyclic(n, p):
    F = GF(p)
    g = F.root_of_unity(n)
    return FiniteGroup([[[g]]], F)


def test_h1_cyclic_trivial():
    # H^1(C_p, F_p) = Hom(C_p, F_p) is one-dimensional; prime-to-p order gives 0
    C = FiniteGroup([[[1, 1], [0, 1]]], GF(5))
    assert h1(trivial_module(C)) == 1
    assert h1(trivial_module(_cyclic(4, 5))) == 0


def test_h1_known_sl2():
    assert h1(conjugation_module(special_linear_group(2, GF(7)))) == 0
    # the classical exception: SL_2(F_5) has a nonzero H^1 on its adjoint module
    assert h1(conjugation_module(special_linear_group(2, GF(5)))) == 1


def _battery():
    mods = []
    for p in (2, 3):
        G = special_linear_group(2, GF(p))
        mods += [natural_module(G), conjugation_module(G), trivial_module(G)]
    S3 = FiniteGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]], GF(3))
    mods += [natural_module(S3), natural_module(S3).dual()]
    C = FiniteGroup([[[1, 1, 0], [0, 1, 1], [0, 0, 1]]], GF(3))
    mods += [natural_module(C), natural_module(C).dual()]
    return mods


@pytest.mark.parametrize("k", range(10))
def test_tree_solver_matches_naive(k):
    M = _battery()[k]
    assert h1(M) == h1_naive(M)


def test_naive_cap():
    with pytest.raises(ResourceError):
        h1_naive(natural_module(special_linear_group(2, GF(7))))


def test_h0_permutation_module():
    S3 = FiniteGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]], GF(5))
    assert h0(natural_module(S3))[0] == 1


def test_chopping_permutation_module():
    S3 = FiniteGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]], GF(5))
    M = natural_module(S3)
    pieces = simple_submodules(M)
    assert sorted(p["dim"] for p in pieces) == [1, 2]
    for p in pieces:
        assert M.is_invariant(p["basis"])
    with pytest.raises(UnsupportedError):
        simple_submodules(natural_module(special_linear_group(2, GF(3))))


def test_hom_dimension_schur():
    S3 = FiniteGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]], GF(7))
    M = natural_module(S3)
    assert hom_dimension(M, M) == 2
    assert hom_dimension(M, trivial_module(S3)) == 1


def test_cohomology_report_fields():
    rep = cohomology_report(conjugation_module(special_linear_group(2, GF(7))))
    assert rep == {"group_order": 336, "module_dim": 3, "h0": 0, "h1": 0, "simples": None, "seed": 0}
    S3 = FiniteGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]], GF(5))
    assert cohomology_report(natural_module(S3))["simples"] == [1, 2]


def test_module_validation():
    G = special_linear_group(2, GF(3))
    with pytest.raises(UsageError):
        GroupModule(G, [np.eye(2, dtype=np.int64)])
    bad = GroupModule(G, [np.eye(2, dtype=np.int64), np.array([[0, 1], [1, 0]])])
    assert not bad.is_homomorphism()


def test_unipotent_deterministic_and_random():
    rep = unipotent_lift_order(2, 5, trials=100, seed=0)
    assert rep["passed"] and rep["tested"] == 101
    assert rep["lift_power"] == [[1, 5], [0, 1]]
    with pytest.raises(PreconditionError):
        unipotent_lift_order(2, 3)
    assert unipotent_lift_order(2, 5, u=[[0, 0], [0, 0]])["status"] == "skipped"


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_unipotent_lift_random_seeds(seed):
    assert unipotent_lift_order(3, 7, trials=5, seed=seed)["passed"]


def test_matrix_hom_and_pgl():
    F = GF(5)
    C4 = FiniteGroup([[[2]]], F)
    hom = MatrixHom(C4, [[[2, 0], [0, 3]]], F)
    assert hom.is_homomorphism()
    assert len(pgl_representatives(2, F)) == 5 * 24
    assert not MatrixHom(C4, [[[1, 1], [0, 1]]], F).is_homomorphism()
