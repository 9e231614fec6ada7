from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxhecke.charring import (
    CharElt,
    LatticeCharacter,
    central_twist,
    chevalley_restriction_expand,
    dominant_conjugate,
    dominant_weights_up_to,
    duality_holds,
    evaluate,
    from_dual_point,
    irreducible_character,
    is_invariant,
    is_unitriangular,
    restrict_to_levi,
    restriction_matrix,
    to_dual_point,
    weyl_dimension,
    weyl_orbit,
    weyl_orbit_sum,
)
from coxhecke.errors import UsageError
from coxhecke.fields import GF
from coxhecke.rootdata import build_root_datum

A1, A2, B2, G2 = (build_root_datum(t) for t in ("A1", "A2", "B2", "G2"))


@pytest.mark.parametrize("n", range(0, 8))
def test_sl2_characters_explicit(n):
    assert irreducible_character(A1, (n,)) == CharElt({(n - 2 * k,): 1 for k in range(n + 1)})


def test_known_small_reps():
    assert irreducible_character(G2, (1, 0)).dim() == 7
    assert irreducible_character(G2, (0, 1)).dim() == 14
    adj = irreducible_character(A2, (1, 1))
    assert adj.dim() == 8 and adj[(0, 0)] == 2
    assert irreducible_character(B2, (1, 0)).dim() in (4, 5)
    assert sorted(irreducible_character(B2, w).dim() for w in ((1, 0), (0, 1))) == [4, 5]


def test_tensor_product_decomposition_a2():
    # V ⊗ V* = adjoint + trivial
    v = irreducible_character(A2, (1, 0))
    vd = irreducible_character(A2, (0, 1))
    assert v * vd == irreducible_character(A2, (1, 1)) + irreducible_character(A2, (0, 0))


def test_tensor_product_decomposition_g2():
    # 7 ⊗ 7 = 1 + 7 + 14 + 27
    v = irreducible_character(G2, (1, 0))
    parts = [(0, 0), (1, 0), (0, 1), (2, 0)]
    total = CharElt()
    for p in parts:
        total = total + irreducible_character(G2, p)
    assert v * v == total


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(0, 3), st.integers(0, 3))
def test_freudenthal_matches_weyl_and_is_invariant(tag, a, b):
    rd = build_root_datum(tag)
    chi = irreducible_character(rd, (a, b))
    assert chi.dim() == weyl_dimension(rd, (a, b))
    assert is_invariant(rd, chi)


def test_non_dominant_rejected():
    with pytest.raises(UsageError):
        irreducible_character(A2, (-1, 0))


def test_orbits():
    assert sorted(weyl_orbit(A1, (1,))) == [(-1,), (1,)]
    assert len(weyl_orbit(A2, (1, 0))) == 3
    assert len(weyl_orbit(A2, (1, 1))) == 6
    assert dominant_conjugate(A2, (-1, 0)) == (0, 1)


def test_expansions():
    assert chevalley_restriction_expand(A1, irreducible_character(A1, (2,))) == [((2,), 1), ((0,), 1)]
    adj = chevalley_restriction_expand(A2, irreducible_character(A2, (1, 1)))
    assert adj == [((1, 1), 1), ((0, 0), 2)]
    inv = chevalley_restriction_expand(A2, weyl_orbit_sum(A2, (1, 1)), basis="irreducible")
    assert dict(inv) == {(1, 1): 1, (0, 0): -2}


@pytest.mark.parametrize("tag,level", [("A1", 6), ("A2", 6), ("B2", 4), ("G2", 3)])
def test_unitriangular(tag, level):
    rd = build_root_datum(tag)
    weights, K = restriction_matrix(rd, level)
    assert weights == dominant_weights_up_to(rd, level)
    assert is_unitriangular(K, weights, rd)


def test_levi_restriction():
    rep = restrict_to_levi(A2, irreducible_character(A2, (1, 0)), [0])
    sizes = sorted(p["orbit_size"] * p["coeff"] for p in rep["pieces"])
    assert sizes == [1, 2]


def test_evaluation():
    # V(1) at diag(t, t^-1): t + t^-1
    assert evaluate(irreducible_character(A1, (1,)), [Fraction(2)]) == Fraction(5, 2)
    F = GF(13)
    assert evaluate(irreducible_character(A1, (1,)), [4], F) == int(F.add(4, F.inv(4)))


def test_duality_roundtrip():
    F = GF(13)
    chi = LatticeCharacter((3, 12), F)
    assert from_dual_point(to_dual_point(chi)) == chi
    assert duality_holds(chi, 2)
    assert chi((1, 1)) == 36 % 13


def test_central_twist():
    F = GF(13)
    # z = (3, 9) kills the Levi root (2, -1): 3^2 * 9^-1 = 1 mod 13
    for e in (1, 2, 5):
        assert central_twist(A2, [0], [2, 5], [3, 9], e, F)["passed"]
    with pytest.raises(UsageError):
        central_twist(A2, [0], [2, 5], [2, 9], 1, F)
