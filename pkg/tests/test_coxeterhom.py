import numpy as np
import pytest

from coxhecke import linalg
from coxhecke.coxeterhom import (
    abundance_report,
    adjoint_decomposition,
    build_coxeter_hom,
    centralizer_report,
    conjugacy_by_invariants,
    field_enlargement_comparison,
    reduction_consistency,
    type_a_group_generators,
    verify_definition,
    _coxeter_domain_hom,
)
from coxhecke.chevalley import torus_adjoint
from coxhecke.errors import ConstructionError, UnsupportedError
from coxhecke.pseudochar import twist_torus_part
from coxhecke.rootdata import build_root_datum


@pytest.fixture(scope="module")
def a1():
    return build_coxeter_hom(build_root_datum("A1"), 2, 3, 13)


@pytest.fixture(scope="module")
def a2():
    return build_coxeter_hom(build_root_datum("A2"), 2, 7, 29)


def test_image_order_and_definition(a1, a2):
    for phi in (a1, a2):
        rep = verify_definition(phi)
        assert rep["passed"]
        assert rep["image_order"] == phi.t * phi.h


def test_g2_definition():
    phi = build_coxeter_hom(build_root_datum("G2"), 3, 7, 13)
    assert phi.m == 2
    assert verify_definition(phi)["passed"]


def test_wrong_torus_generator_fails(a2):
    # replace v by the identity point: the torus condition must fail
    bad = a2.with_generators(torus=torus_adjoint(a2.alg, [1, 1]))
    assert not verify_definition(bad)["passed"]


@pytest.mark.parametrize("q,t,l", [
    (2, 5, 13),   # t = 5 is not 1 mod h = 3
    (2, 7, 3),    # l = 3 is bad for A2
    (2, 7, 7),    # l divides t h
    (6, 7, 29),   # 6 has order 2 mod 7, not h = 3
])
def test_construction_errors(q, t, l):
    with pytest.raises(ConstructionError):
        build_coxeter_hom(build_root_datum("A2"), q, t, l)


def test_adjoint_requires_sc():
    with pytest.raises(UnsupportedError):
        build_coxeter_hom(build_root_datum("A1", isogeny="ad"), 2, 3, 13)


def test_decomposition(a1, a2):
    d1 = adjoint_decomposition(a1)
    assert sorted(p["dim"] for p in d1) == [1, 2]
    d2 = adjoint_decomposition(a2)
    assert sorted(p["dim"] for p in d2) == [2, 3, 3]
    assert all(p["irreducible"] for p in d2 if p["kind"] == "induced")
    # no primitive cube root of unity in F_29: the torus piece stays irreducible
    assert [p for p in d2 if p["kind"] == "torus"][0]["simple_dims"] == [2]


def test_field_enlargement(a2):
    rows = field_enlargement_comparison(build_root_datum("A2"), 2, 7, 29)
    assert rows["m"]["piece_dims"] == [2, 3, 3]
    assert rows["2m"]["piece_dims"] == [1, 1, 3, 3]
    assert rows["sensitive"] == ["piece_dims"]


def test_abundance(a1):
    rep = abundance_report(a1)
    assert rep["abundant"]
    assert rep["group_order"] == 6
    assert all(w["witness"] is not None for w in rep["witnesses"])


def test_abundance_needs_split_torus(a2):
    # over F_29 a witness exists but its torus is not split
    assert not abundance_report(a2)["abundant"]


def test_centralizer(a1, a2):
    for phi in (a1, a2):
        rep = centralizer_report(phi)
        assert rep["trivial"] and rep["torus_unique"]
        assert rep["pgl_centralizer_order"] == 1
    # the torus part alone is centralised by the diagonal torus
    assert centralizer_report(a1, restrict_to_torus=True)["fixed_dim"] == 1


def test_type_a_lift_is_sl(a2):
    v, w = type_a_group_generators(a2)
    F = a2.field
    assert linalg.det(v, F) == 1 and linalg.det(w, F) == 1
    assert np.array_equal(linalg.matpow(v, a2.t, F), linalg.identity(3))


def test_reduction_consistency():
    assert reduction_consistency(build_root_datum("A1"), 2, 3, 13, 7)["passed"]


def test_conjugacy_by_invariants(a2):
    base = _coxeter_domain_hom(a2)
    res = conjugacy_by_invariants(base, twist_torus_part(base, 2))
    assert res["tables_equal"] and res["witness"] is not None
    g = np.array(res["witness"])
    assert base.conjugate(g).values().tolist() == twist_torus_part(base, 2).values().tolist()
    assert not conjugacy_by_invariants(base, twist_torus_part(base, 6))["tables_equal"]
