import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxhecke.coxeterhom import _coxeter_domain_hom, build_coxeter_hom
from coxhecke.errors import PreconditionError, ResourceError, UsageError
from coxhecke.fields import GF
from coxhecke.finitegrp import FiniteGroup, MatrixHom
from coxhecke.pseudochar import (
    battery_domains,
    bijection_battery,
    corrupt,
    monomial_representatives,
    reconstruct_conjugator,
    table_from_rep,
    torus_battery,
    torus_w_conjugacy,
    twist_torus_part,
    verify_axioms,
    words,
)
from coxhecke.rootdata import build_root_datum


@pytest.fixture(scope="module")
def a1_hom():
    return _coxeter_domain_hom(build_coxeter_hom(build_root_datum("A1"), 2, 3, 13))


def test_one_slot_values_are_traces(a1_hom):
    tab = table_from_rep(a1_hom)
    vals = a1_hom.values()
    F = a1_hom.field
    traces = [int(F.add(m[0, 0], m[1, 1])) for m in vals]
    assert tab.characters["wedge1"].tolist() == traces
    assert tab.value([0], "wedge1", [0]) == 2


def test_axioms_and_corruption(a1_hom):
    tab = table_from_rep(a1_hom)
    assert verify_axioms(tab, samples=100)["passed"]
    for key in [k for k in sorted(tab.entries) if k[0] == 2][:3]:
        bad = corrupt(tab, key, (1, 2))
        rep = verify_axioms(bad, samples=100)
        assert not rep["passed"] and rep["counterexamples"]


def test_words_enumeration():
    ws = list(words(2, 2))
    assert all(len(w) <= 2 and all(0 <= x < 2 for x in w) for w in ws)
    assert len(set(ws)) == len(ws)


def test_export_rows(a1_hom):
    tab = table_from_rep(a1_hom, n_max=1)
    rows = tab.to_rows()
    assert set(rows[0]) == {"word", "rep", "tuple_indices", "value"}
    assert len(rows) == sum(1 for _ in words(1, 2)) * len(a1_hom.domain)


def test_conjugator_is_checked(a1_hom):
    F = a1_hom.field
    g = np.array([[1, 2], [3, 5]])
    other = a1_hom.conjugate(g)
    res = reconstruct_conjugator(a1_hom, other)
    assert res["tables_equal"]
    h = np.array(res["witness"])
    assert a1_hom.conjugate(h).values().tolist() == other.values().tolist()
    assert F.p == 13


def test_twists_separate(a1_hom):
    # q = 2 is -1 mod 3: twisting by 2 stays conjugate (w swaps the eigenvalues)
    assert reconstruct_conjugator(a1_hom, twist_torus_part(a1_hom, 2))["witness"] is not None


def test_modular_image_rejected():
    F = GF(3)
    D = FiniteGroup([[[1, 1], [0, 1]]], F)
    rho = MatrixHom(D, [[[1, 1], [0, 1]]], F)
    with pytest.raises(PreconditionError):
        reconstruct_conjugator(rho, rho)


def test_monomial_cap():
    assert len(monomial_representatives(2, GF(5))) == 2 * 4
    with pytest.raises(ResourceError):
        monomial_representatives(3, GF(29, 2))


def test_bijection_battery_small():
    doms = {k: v for k, v in battery_domains().items() if k in ("C2", "C4", "S3")}
    rep = bijection_battery(13, doms)
    assert rep["passed"]
    assert rep["C4"]["classes"] == rep["C4"]["table_classes"]


def test_torus_conjugacy_examples():
    F = GF(13)
    res = torus_w_conjugacy([2, 7], [7, 2], 12, F)
    assert res["tables_equal"] and res["witness"] == [1, 0]
    assert not torus_w_conjugacy([2, 7], [4, 10], 12, F)["tables_equal"]
    with pytest.raises(PreconditionError):
        torus_w_conjugacy([1, 1], [1, 1], 12, F)
    with pytest.raises(UsageError):
        torus_w_conjugacy([2, 2], [2, 2], 12, F)


@settings(max_examples=30, deadline=None)
@given(st.permutations([1, 3, 9]), st.integers(1, 11))
def test_torus_permutation_invariance(perm, k):
    F = GF(13)
    base = [int(F.pow(x, k)) for x in [1, 3, 9]]
    other = [int(F.pow(x, k)) for x in perm]
    if len(set(base)) < 3:
        return
    res = torus_w_conjugacy(base, other, 12, F)
    assert res["tables_equal"]
    assert [base[i] for i in res["witness"]] == other


def test_torus_battery_rank2():
    assert torus_battery(13, ranks=(2,))["passed"]
