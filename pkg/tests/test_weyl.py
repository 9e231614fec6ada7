import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxhecke.coxeterhom import coxeter_prime
from coxhecke.errors import SearchExhaustedError, UsageError
from coxhecke.rootdata import build_root_datum
from coxhecke.weyl import (
    coxeter_element,
    coxeter_lattice_data,
    coxeter_number,
    element_from_word,
    powers,
    root_orbits,
    scaling_stabilizer,
    torsion_eigenspace,
    weyl_group,
)

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12, "F4": 1152}
COXETER_NUMBERS = {"A1": 2, "A3": 4, "B3": 6, "C4": 8, "D4": 6, "D5": 8, "E6": 12, "E7": 18,
                   "E8": 30, "F4": 12, "G2": 6}


@pytest.mark.parametrize("tag,order", sorted(ORDERS.items()))
def test_weyl_orders(tag, order):
    assert len(weyl_group(build_root_datum(tag))) == order


@pytest.mark.parametrize("tag,h", sorted(COXETER_NUMBERS.items()))
def test_coxeter_numbers(tag, h):
    rd = build_root_datum(tag)
    assert coxeter_number(rd) == h
    assert rd.num_roots == len(rd.basis) * h


@pytest.mark.parametrize("tag", ["A3", "B3", "G2"])
def test_lengths_count_inversions(tag):
    """BFS word length equals the number of positive roots sent negative."""
    rd = build_root_datum(tag)
    W = weyl_group(rd)
    pos = rd.roots[rd.positive]
    posset = {tuple(x) for x in pos.tolist()}
    for i in range(len(W)):
        imgs = pos @ W.matrices[i].T
        inv = sum(tuple(x) not in posset for x in imgs.tolist())
        assert inv == W.lengths[i] == len(W.words[i])


@pytest.mark.parametrize("tag", ["A2", "B2", "G2"])
def test_words_reproduce_matrices(tag):
    rd = build_root_datum(tag)
    W = weyl_group(rd)
    for i in range(len(W)):
        assert np.array_equal(element_from_word(rd, W.words[i]).matrix, W.matrices[i])


@pytest.mark.parametrize("tag", ["A2", "B3", "D4", "G2"])
def test_coxeter_orbits_free(tag):
    rd = build_root_datum(tag)
    w = coxeter_element(rd)
    orbs = root_orbits(rd, w)
    assert len(orbs) == len(rd.basis)
    assert all(len(o) == w.order() for o in orbs)


def test_cokernel_a3():
    data = coxeter_lattice_data(build_root_datum("A3"), coxeter_element(build_root_datum("A3")))
    assert data["cokernel_order"] == 4


@pytest.mark.parametrize("tag,t,q", [("A1", 3, 2), ("A2", 7, 2), ("G2", 7, 3), ("A3", 5, 2), ("B2", 5, 2)])
def test_eigenline_and_stabilizer(tag, t, q):
    rd = build_root_datum(tag)
    w = coxeter_element(rd)
    E = torsion_eigenspace(rd, w, t, q)
    assert E.shape[0] == 1
    x = E[0]
    assert np.array_equal(w.coaction() @ x % t, q * x % t)
    W = weyl_group(rd)
    assert sorted(scaling_stabilizer(rd, x, t, W)) == sorted(W.index_of(p) for p in powers(w))


def test_eigenspace_rejects_nonunit():
    rd = build_root_datum("A1")
    with pytest.raises(UsageError):
        torsion_eigenspace(rd, coxeter_element(rd), 3, 3)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["A1", "A2", "A3", "B2", "G2"]), st.integers(2, 7))
def test_coxeter_prime_properties(tag, q):
    rd = build_root_datum(tag)
    h = coxeter_number(rd)
    try:
        t = coxeter_prime(rd, q)
    except SearchExhaustedError:
        # exhaustive default bound: no prime divisor of q^h - 1 qualifies
        cands = [t for t in range(2, q**h) if (q**h - 1) % t == 0 and all(t % d for d in range(2, t))]
        assert all(len(weyl_group(rd)) % t == 0 or any(pow(q, j, t) == 1 for j in range(1, h)) for t in cands)
        return
    assert pow(q, h, t) == 1 and all(pow(q, j, t) != 1 for j in range(1, h))
    assert len(weyl_group(rd)) % t != 0
    assert math.gcd(q, t) == 1


def test_coxeter_prime_known_values():
    assert coxeter_prime(build_root_datum("A1"), 2) == 3
    assert coxeter_prime(build_root_datum("A2"), 2) == 7
    assert coxeter_prime(build_root_datum("G2"), 3) == 7
    assert coxeter_prime(build_root_datum("A1"), 4) == 5
    with pytest.raises(UsageError):
        coxeter_prime(build_root_datum("A2"), 2, search_bound=8)
    with pytest.raises(SearchExhaustedError):
        coxeter_prime(build_root_datum("A1"), 4, search_bound=4)
