import numpy as np
import pytest

from coxhecke.errors import UnsupportedError, UsageError
from coxhecke.rootdata import (
    build_root_datum,
    center_order,
    check_axioms,
    dual_datum,
    is_very_good,
    levi_subdatum,
    parse_type,
)

# classical counts: |Φ| and |center| of the simply connected group
ROOT_COUNTS = {
    "A1": 2, "A2": 6, "A3": 12, "A5": 30, "B2": 8, "B3": 18, "C3": 18, "C4": 32, "D4": 24,
    "D5": 40, "E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12,
}
CENTERS = {"A1": 2, "A2": 3, "A4": 5, "B3": 2, "C3": 2, "D4": 4, "D5": 4, "E6": 3, "E7": 2, "E8": 1,
           "F4": 1, "G2": 1}


@pytest.mark.parametrize("tag,count", sorted(ROOT_COUNTS.items()))
def test_root_counts_and_axioms(tag, count):
    rd = build_root_datum(tag)
    assert rd.num_roots == count
    assert len(rd.positive) == count // 2
    assert all(check_axioms(rd).values())


@pytest.mark.parametrize("tag,z", sorted(CENTERS.items()))
def test_center_order(tag, z):
    assert center_order(build_root_datum(tag)) == z
    with pytest.raises(UnsupportedError):
        center_order(build_root_datum(tag, isogeny="ad"))


def test_simple_roots_first_and_cartan_pairing():
    rd = build_root_datum("B3")
    r = len(rd.basis)
    assert list(rd.basis) == list(range(r))
    C = np.array([[rd.pairing(rd.roots[j], rd.coroots[i]) for j in range(r)] for i in range(r)])
    assert np.array_equal(C, rd.cartan)
    assert np.all(np.diag(C) == 2)


def test_parse_type_forms():
    assert parse_type("A2") == ("A", 2)
    assert parse_type("D", 5) == ("D", 5)
    for bad in [("Q", 9), ("D", 2), ("E", 9), ("G", 3)]:
        with pytest.raises(UsageError):
            build_root_datum(*bad)


def test_dual_swaps_b_and_c():
    b3 = build_root_datum("B3")
    d = dual_datum(b3)
    assert sorted(map(tuple, d.roots.tolist())) == sorted(map(tuple, b3.coroots.tolist()))
    assert all(check_axioms(d).values())
    assert dual_datum(d).same_as(b3)


def test_levi_subdatum_a2():
    rd = build_root_datum("A2")
    L = levi_subdatum(rd, [0])
    assert L.num_roots == 2
    assert all(check_axioms(L).values())


def test_very_good_examples():
    assert not is_very_good(build_root_datum("A2"), 3)
    assert is_very_good(build_root_datum("A2"), 2)
    assert not is_very_good(build_root_datum("G2"), 3)
    assert not is_very_good(build_root_datum("E8"), 5)
    assert is_very_good(build_root_datum("E8"), 7)
    assert not is_very_good(build_root_datum("B2"), 2)
