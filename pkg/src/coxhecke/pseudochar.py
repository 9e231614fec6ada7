"""Trace tables of homomorphisms into SL_n, their axioms, and conjugacy from tables."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dfield

import numpy as np

from . import linalg
from .errors import PreconditionError, ResourceError, UsageError
from .fields import GF, FiniteField
from .finitegrp import (
    FiniteGroup,
    MatrixHom,
    char_coefficients,
    conjugating_elements,
    generate_group,
    pgl_representatives,
)

TABLE_CAP = 2_000_000


def multiplication_table(G: FiniteGroup) -> np.ndarray:
    """mul[i, j] = index of elements[i] @ elements[j]."""
    T = getattr(G, "_mul_table", None)
    if T is None:
        n = len(G)
        if n * n > TABLE_CAP:
            raise ResourceError(f"multiplication table of order {n} exceeds the cap")
        T = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            prods = linalg.batch_matmul(G.elements[i], G.elements, G.field)
            T[i] = [G.index_of(P) for P in prods]
        G._mul_table = T
    return T


def words(n: int, bound: int):
    """Nonempty words in the letters 0..n-1 of length at most bound."""
    for length in range(1, bound + 1):
        yield from itertools.product(range(n), repeat=length)


def rep_labels(n: int) -> list[str]:
    """Fundamental representations of SL_n; wedge1 is the standard one."""
    return [f"wedge{k}" for k in range(1, n)]


def _evaluate_word(mul: np.ndarray, word, arity: int) -> np.ndarray:
    """Index of the product word(γ_1, ..., γ_n) for every tuple, as an n-dim array."""
    size = mul.shape[0]
    grids = np.indices((size,) * arity)
    out = grids[word[0]]
    for letter in word[1:]:
        out = mul[out, grids[letter]]
    return out


@dataclass
class PseudocharacterTable:
    """Values Θ_n(f)(γ_1..γ_n) for f = (trace of a fundamental rep) ∘ (a word).

    ``entries[(n, word, rep)]`` is an n-dimensional array indexed by tuples of
    domain element indices.
    """

    group: FiniteGroup
    n_max: int
    word_bound: int
    field: FiniteField
    entries: dict = dfield(default_factory=dict)
    characters: dict = dfield(default_factory=dict)

    def value(self, word, rep: str, elems) -> int:
        return int(self.entries[(len(elems), tuple(word), rep)][tuple(elems)])

    def one_slot(self) -> np.ndarray:
        """Rows indexed by domain elements, columns by fundamental representations."""
        labels = sorted(self.characters)
        return np.stack([self.characters[r] for r in labels], axis=1)

    def to_rows(self) -> list[dict]:
        rows = []
        for (n, word, rep), arr in sorted(self.entries.items()):
            for tup in itertools.product(range(len(self.group)), repeat=n):
                rows.append({"word": list(word), "rep": rep, "tuple_indices": list(tup),
                             "value": int(arr[tup])})
        return rows


def table_from_rep(rho: MatrixHom, n_max: int = 2, word_bound: int = 2, reps=None) -> PseudocharacterTable:
    G = rho.domain
    size = len(G)
    total = sum(size**n * len(list(words(n, word_bound))) for n in range(1, n_max + 1))
    if total > TABLE_CAP:
        raise ResourceError(f"{total} table entries exceed the cap {TABLE_CAP}")
    reps = rep_labels(rho.n) if reps is None else list(reps)
    chars = char_coefficients(rho.values(), rho.field)
    characters = {}
    for r in reps:
        k = int(r.removeprefix("wedge"))
        if not 1 <= k < rho.n:
            raise UsageError(f"unknown representation {r}")
        characters[r] = chars[:, k - 1].copy()
    mul = multiplication_table(G)
    tab = PseudocharacterTable(G, n_max, word_bound, rho.field, characters=characters)
    for n in range(1, n_max + 1):
        for w in words(n, word_bound):
            idx = _evaluate_word(mul, w, n)
            for r in reps:
                tab.entries[(n, w, r)] = characters[r][idx]
    return tab


def verify_axioms(tab: PseudocharacterTable, samples: int = 500, seed: int = 0) -> dict:
    """Check slot functoriality and the concatenation rule on stored entries.

    Every instance whose two sides are both stored is checked exhaustively over
    tuples; ``samples`` additional random instances are drawn for the report.
    """
    rng = random.Random(seed)
    size = len(tab.group)
    bad = []
    checked = {"functoriality": 0, "concatenation": 0}

    def record(kind, lhs_key, rhs_key, tup):
        bad.append({"axiom": kind, "lhs": [lhs_key[0], list(lhs_key[1]), lhs_key[2]],
                    "rhs": [rhs_key[0], list(rhs_key[1]), rhs_key[2]], "tuple": [int(x) for x in tup]})

    for (m, w, r), arr in tab.entries.items():
        # functoriality: f^ζ(g_1..g_n) = f(g_ζ(1), ..., g_ζ(m))
        for n in range(1, tab.n_max + 1):
            for zeta in itertools.product(range(n), repeat=m):
                key = (n, tuple(zeta[c] for c in w), r)
                if key not in tab.entries:
                    continue
                lhs = tab.entries[key]
                grids = np.indices((size,) * n)
                rhs = arr[tuple(grids[zeta[c]] for c in range(m))]
                checked["functoriality"] += lhs.size
                diff = np.argwhere(lhs != rhs)
                if diff.size:
                    record("functoriality", key, (m, w, r), diff[0])
        # concatenation: f-hat(g_1..g_{m+1}) = f(g_1, ..., g_m g_{m+1})
        if m + 1 <= tab.n_max:
            hat = []
            for c in w:
                hat.extend([c, m] if c == m - 1 else [c])
            key = (m + 1, tuple(hat), r)
            if key in tab.entries:
                mul = multiplication_table(tab.group)
                grids = np.indices((size,) * (m + 1))
                slots = [grids[c] for c in range(m - 1)] + [mul[grids[m - 1], grids[m]]]
                rhs = arr[tuple(slots)]
                lhs = tab.entries[key]
                checked["concatenation"] += lhs.size
                diff = np.argwhere(lhs != rhs)
                if diff.size:
                    record("concatenation", key, (m, w, r), diff[0])

    # random permuted-slot instances on the top arity
    sampled_ok = 0
    keys = sorted(k for k in tab.entries if k[0] == tab.n_max)
    for _ in range(samples if keys else 0):
        n, w, r = keys[rng.randrange(len(keys))]
        perm = list(range(n))
        rng.shuffle(perm)
        key = (n, tuple(perm[c] for c in w), r)
        tup = [rng.randrange(size) for _ in range(n)]
        lhs = tab.entries[key][tuple(tup)]
        rhs = tab.entries[(n, w, r)][tuple(tup[perm[c]] for c in range(n))]
        if lhs == rhs:
            sampled_ok += 1
        else:
            record("functoriality", key, (n, w, r), tup)
    return {
        "passed": not bad,
        "checked": checked,
        "samples": samples,
        "samples_passed": sampled_ok,
        "counterexamples": bad[:10],
    }


def corrupt(tab: PseudocharacterTable, key, index, delta: int = 1) -> PseudocharacterTable:
    """Copy of the table with one entry shifted by delta (for fault injection)."""
    entries = {k: v.copy() for k, v in tab.entries.items()}
    arr = entries[key]
    arr[tuple(index)] = tab.field.add(arr[tuple(index)], tab.field.from_int(delta))
    return PseudocharacterTable(tab.group, tab.n_max, tab.word_bound, tab.field, entries, dict(tab.characters))


def one_slot_table(rho: MatrixHom) -> np.ndarray:
    return char_coefficients(rho.values(), rho.field)


def reconstruct_conjugator(rho: MatrixHom, rho2: MatrixHom, cap: int = 10**5) -> dict:
    """Compare 1-slot tables and, when equal, search PGL_n(F) for g with g ρ g^-1 = ρ'."""
    if rho.domain is not rho2.domain:
        raise UsageError("homomorphisms must share their domain")
    F = rho.field
    if not (rho.is_homomorphism() and rho2.is_homomorphism()):
        raise UsageError("generator images do not define a homomorphism")
    for h in (rho, rho2):
        order = len(h.image_group())
        if order % F.p == 0:
            raise PreconditionError("image order divisible by the characteristic; complete reducibility not certified")
    ta, tb = one_slot_table(rho), one_slot_table(rho2)
    if not np.array_equal(ta, tb):
        bad = int(np.flatnonzero(np.any(ta != tb, axis=1))[0])
        return {"tables_equal": False, "separating_element": bad,
                "values": [ta[bad].tolist(), tb[bad].tolist()], "witness": None}
    if _regular_diagonal(rho.images[0]) and _regular_diagonal(rho2.images[0]):
        # a conjugator then normalises the diagonal torus
        reps, search = monomial_representatives(rho.n, F, cap=cap), "monomial"
    else:
        reps, search = pgl_representatives(rho.n, F, cap=cap), "pgl"
    idx = conjugating_elements(rho.images, rho2.images, F, reps)
    return {"tables_equal": True, "search": search, "candidates": int(len(reps)),
            "witness": reps[idx[0]].tolist() if idx.size else None}


def _regular_diagonal(A) -> bool:
    A = np.asarray(A)
    d = np.diag(A)
    return bool(np.count_nonzero(A - np.diag(d)) == 0 and len(set(d.tolist())) == len(d))


def monomial_representatives(n: int, F: FiniteField, cap: int = 10**5) -> np.ndarray:
    """Monomial matrices modulo scalars: permutation times diag(1, d_2, ..., d_n)."""
    if math.factorial(n) * (F.q - 1) ** (n - 1) > cap:
        raise ResourceError(f"more than {cap} monomial representatives")
    units = range(1, F.q)
    out = []
    for sigma in itertools.permutations(range(n)):
        P = np.eye(n, dtype=np.int64)[list(sigma)]
        for ds in itertools.product(units, repeat=n - 1):
            out.append(P @ np.diag((1,) + ds))
    return np.array(out, dtype=np.int64)


def twist_torus_part(hom: MatrixHom, k: int) -> MatrixHom:
    """Replace the first generator's image x by x^k, keeping the others."""
    F = hom.field
    imgs = [linalg.matpow(hom.images[0], k, F)] + list(hom.images[1:])
    return MatrixHom(hom.domain, imgs, F)


# -- the battery of small domains into SL_2 ------------------------------------------


def battery_domains() -> dict:
    """Small groups as matrix groups (domain models only; targets are separate)."""
    F13, F3 = GF(13), GF(3)
    perm = lambda p: np.eye(len(p), dtype=np.int64)[list(p)]
    return {
        "C2": generate_group([[[12]]], F13),
        "C3": generate_group([[[3]]], F13),
        "C4": generate_group([[[5]]], F13),
        "C6": generate_group([[[4]]], F13),
        "C12": generate_group([[[2]]], F13),
        "C2xC2": generate_group([np.diag([12, 1]), np.diag([1, 12])], F13),
        "S3": generate_group([perm((1, 0, 2)), perm((1, 2, 0))], F13),
        "D4": generate_group([perm((1, 0, 3, 2)), perm((1, 2, 3, 0))], F13),
        "Q8": generate_group([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], F3),
        "Dic3": generate_group([np.diag([4, 10]), [[0, 1], [12, 0]]], F13),
        "SL2F3": generate_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], F3),
    }


def _conj_by_all(reps, reps_inv, X, F):
    return linalg.batch_matmul(linalg.batch_matmul(reps, X, F), reps_inv, F)


def _inverses(mats, F):
    return np.array([linalg.inverse(M, F) for M in mats])


def _canonical_keys(images: np.ndarray, reps, reps_inv, F) -> list[bytes]:
    """Lexicographically least PGL-conjugate of each generator-image tuple."""
    out = []
    for imgs in images:
        conj = np.concatenate([_conj_by_all(reps, reps_inv, X, F).reshape(len(reps), -1) for X in imgs], axis=1)
        best = conj[np.lexsort(conj.T[::-1])[0]]
        out.append(np.ascontiguousarray(best).tobytes())
    return out


def enumerate_homs(D: FiniteGroup, target: FiniteGroup, reps, reps_inv) -> np.ndarray:
    """Generator images (k, gens, n, n) covering every conjugacy class of homomorphisms."""
    F = target.field
    n = target.n
    T = target.elements
    ident = linalg.identity(n)
    cands = []
    for s in range(len(D.gens)):
        o = D.element_order(D.index_of(D.gens[s]))
        powered = np.broadcast_to(ident, T.shape).copy()
        for _ in range(o):
            powered = linalg.batch_matmul(powered, T, F)
        ok = np.flatnonzero(np.all(powered == ident, axis=(1, 2)))
        if s == 0:
            keys = _canonical_keys(T[ok][:, None], reps, reps_inv, F)
            first = {}
            for i, key in zip(ok, keys):
                first.setdefault(key, i)
            ok = np.array(sorted(first.values()))
        cands.append(ok)
    combos = np.array(list(itertools.product(*cands)), dtype=np.int64)
    imgs = T[combos]  # (C, gens, n, n)
    C = imgs.shape[0]
    vals = np.empty((C, len(D), n, n), dtype=np.int64)
    vals[:, 0] = ident
    for g in range(1, len(D)):
        x, s = D.parent[g]
        vals[:, g] = linalg.batch_matmul(vals[:, x], imgs[:, s], F)
    good = np.ones(C, dtype=bool)
    R = D.right
    for s in range(len(D.gens)):
        lhs = linalg.batch_matmul(vals, imgs[:, s][:, None], F)
        good &= np.all(lhs == vals[:, R[:, s]], axis=(1, 2, 3))
    return imgs[good]


def bijection_battery(l: int = 13, domains=None, cap: int = 10**5) -> dict:
    """Equal 1-slot tables iff PGL-conjugate, over every hom class from each domain into SL_2(F_l)."""
    F = GF(l)
    target = FiniteGroup([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], F)
    reps = pgl_representatives(2, F, cap=cap)
    reps_inv = _inverses(reps, F)
    domains = battery_domains() if domains is None else domains
    report = {}
    for name, D in sorted(domains.items()):
        if len(D) % l == 0:
            raise PreconditionError(f"{name}: order divisible by {l}")
        homs = enumerate_homs(D, target, reps, reps_inv)
        keys = _canonical_keys(homs, reps, reps_inv, F)
        classes = {}
        for i, k in enumerate(keys):
            classes.setdefault(k, i)
        reps_idx = sorted(classes.values())
        tables = [one_slot_table(MatrixHom(D, list(homs[i]), F)).tobytes() for i in reps_idx]
        by_table = {}
        for i, t in zip(reps_idx, tables):
            by_table.setdefault(t, []).append(i)
        # every hom is conjugate to its class representative, and distinct classes must separate
        witnesses_ok = True
        for i, k in enumerate(keys):
            j = classes[k]
            res = reconstruct_conjugator(MatrixHom(D, list(homs[j]), F), MatrixHom(D, list(homs[i]), F), cap)
            witnesses_ok &= res["tables_equal"] and res["witness"] is not None
        collisions = [v for v in by_table.values() if len(v) > 1]
        report[name] = {
            "order": len(D),
            "homomorphisms": int(len(homs)),
            "classes": len(reps_idx),
            "table_classes": len(by_table),
            "collisions": len(collisions),
            "witnesses_found": bool(witnesses_ok),
            "passed": bool(witnesses_ok and not collisions),
        }
    report["passed"] = all(v["passed"] for v in report.values() if isinstance(v, dict))
    return report


# -- diagonal torus characters --------------------------------------------------------


def torus_table(diag, order: int, F: FiniteField) -> np.ndarray:
    """Fundamental traces of diag(d)^k for k = 0..order-1."""
    d = np.asarray(diag, dtype=np.int64)
    mats = np.array([np.diag(F.pow(d, k)) for k in range(order)])
    return char_coefficients(mats, F)


def torus_w_conjugacy(psi, psi2, order: int, F: FiniteField) -> dict:
    """ψ, ψ' : Z/order -> diagonal torus of SL_n, given by the image of 1."""
    psi = np.asarray(psi, dtype=np.int64) % F.q
    psi2 = np.asarray(psi2, dtype=np.int64) % F.q
    for d in (psi, psi2):
        if F.pow(d, order).tolist() != [1] * len(d):
            raise UsageError("image of the generator must have order dividing the group order")
        prod = 1
        for x in d.tolist():
            prod = int(F.mul(prod, x))
        if prod != 1:
            raise UsageError("points must lie in SL_n")
    if len(set(psi.tolist())) != len(psi):
        raise PreconditionError("ψ has no regular semisimple value; its centralizer exceeds the torus")
    ta, tb = torus_table(psi, order, F), torus_table(psi2, order, F)
    if not np.array_equal(ta, tb):
        bad = int(np.flatnonzero(np.any(ta != tb, axis=1))[0])
        return {"tables_equal": False, "separating_element": bad,
                "values": [ta[bad].tolist(), tb[bad].tolist()], "witness": None}
    for sigma in itertools.permutations(range(len(psi))):
        if np.array_equal(psi[list(sigma)], psi2):
            return {"tables_equal": True, "witness": list(sigma)}
    return {"tables_equal": True, "witness": None}


def torus_battery(l: int = 13, ranks=(2, 3)) -> dict:
    """Every pair of diagonal SL_n(F_l) points generating characters of Z/(l-1)."""
    F = GF(l)
    order = l - 1
    out = {}
    for n in ranks:
        pts = [p + (int(F.inv(int(np.prod(p)) % l)),) for p in itertools.product(range(1, l), repeat=n - 1)]
        pts = [np.array(p) for p in pts]
        tables = [torus_table(p, order, F).tobytes() for p in pts]
        orbit = [tuple(sorted(p.tolist())) for p in pts]
        pairs = agree = regular_pairs = 0
        for i, p in enumerate(pts):
            if len(set(p.tolist())) != n:
                continue
            for j in range(len(pts)):
                regular_pairs += 1
                eq = tables[i] == tables[j]
                conj = orbit[i] == orbit[j]
                agree += eq == conj
                if eq:
                    pairs += 1
                    res = torus_w_conjugacy(p, pts[j], order, F)
                    agree -= res["witness"] is None
        out[f"SL{n}"] = {"points": len(pts), "pairs": regular_pairs, "equal_table_pairs": pairs,
                         "passed": agree == regular_pairs}
    out["passed"] = all(v["passed"] for v in out.values())
    return out
