"""Weyl groups as integer matrix groups on M; Coxeter elements and their lattice data."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import ResourceError, UsageError
from .fields import GF
from .rootdata import RootDatum

WEYL_CAP = 10**6

_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


def weyl_order_formula(series: str, n: int) -> int:
    """|W| as the product of the fundamental degrees (used only to reject early)."""
    return math.prod(_DEGREES[series](n))


@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: np.ndarray
    word: tuple

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix, self.word + other.word)

    def order(self) -> int:
        n = self.matrix.shape[0]
        X, k = self.matrix.copy(), 1
        while not np.array_equal(X, np.eye(n, dtype=np.int64)):
            X = X @ self.matrix
            k += 1
        return k

    def coaction(self) -> np.ndarray:
        """Matrix of the same element on M∨ (the contragredient)."""
        return np.rint(np.linalg.inv(self.matrix)).astype(np.int64).T

    def to_json(self) -> dict:
        return {"matrix": self.matrix.tolist(), "word": list(self.word)}


def element_from_word(rd: RootDatum, word) -> WeylElement:
    S = rd.simple_reflections()
    M = np.eye(rd.rank, dtype=np.int64)
    for i in word:
        M = M @ S[i]
    return WeylElement(M, tuple(int(i) for i in word))


class WeylGroup:
    """Complete enumeration by breadth-first closure under right multiplication.

    Element 0 is the identity; BFS words are reduced, so ``lengths`` are the
    Coxeter lengths.
    """

    def __init__(self, rd: RootDatum, cap: int = WEYL_CAP):
        self.rd = rd
        if len(rd.basis) == rd.type_rank and weyl_order_formula(rd.series, rd.type_rank) > cap:
            raise ResourceError(f"|W({rd.type_tag})| exceeds the cap {cap}")
        r = rd.rank
        S = np.array(rd.simple_reflections(), dtype=np.int64).reshape(-1, r, r)
        ident = np.eye(r, dtype=np.int64)
        mats = [ident]
        words = [()]
        lengths = [0]
        index = {ident.tobytes(): 0}
        frontier = [0]
        depth = 0
        while frontier:
            depth += 1
            F = np.array([mats[i] for i in frontier])
            new = []
            for s in range(S.shape[0]):
                prods = F @ S[s]
                for k, P in enumerate(prods):
                    key = P.tobytes()
                    if key not in index:
                        index[key] = len(mats)
                        mats.append(P)
                        words.append(words[frontier[k]] + (s,))
                        lengths.append(depth)
                        new.append(index[key])
                        if len(mats) > cap:
                            raise ResourceError(f"|W| exceeds the cap {cap}")
            frontier = new
        self.matrices = np.array(mats)
        self.matrices.flags.writeable = False
        self.words = words
        self.lengths = lengths
        self._index = index
        self._mul_cache = {}
        self._simple = list(S)

    def __len__(self):
        return len(self.words)

    @property
    def order(self) -> int:
        return len(self.words)

    def element(self, i: int) -> WeylElement:
        return WeylElement(self.matrices[i], self.words[i])

    def elements(self):
        return [self.element(i) for i in range(len(self))]

    def index_of(self, w) -> int:
        M = w.matrix if isinstance(w, WeylElement) else np.asarray(w, dtype=np.int64)
        return self._index[np.ascontiguousarray(M, dtype=np.int64).tobytes()]

    @property
    def inverses(self) -> list[int]:
        inv = getattr(self, "_inv", None)
        if inv is None:
            inv = [0] * len(self)
            for i in range(len(self)):
                M = self.matrices[i]
                Minv = np.rint(np.linalg.inv(M)).astype(np.int64)
                inv[i] = self.index_of(Minv)
            self._inv = inv
        return inv

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul_cache.get(key)
        if r is None:
            r = self.index_of(self.matrices[i] @ self.matrices[j])
            self._mul_cache[key] = r
        return r

    def right_simple(self, i: int, s: int) -> int:
        """Index of w_i s_s."""
        key = (i, -1 - s)
        r = self._mul_cache.get(key)
        if r is None:
            r = self.index_of(self.matrices[i] @ self._simple[s])
            self._mul_cache[key] = r
        return r

    @property
    def root_permutations(self) -> np.ndarray:
        """perm[w, k] = index of w(root_k)."""
        P = getattr(self, "_perm", None)
        if P is None:
            rd = self.rd
            imgs = np.einsum("wij,kj->wki", self.matrices, rd.roots)
            P = np.empty(imgs.shape[:2], dtype=np.int64)
            lookup = rd._root_index
            for w in range(imgs.shape[0]):
                P[w] = [lookup[tuple(x)] for x in imgs[w].tolist()]
            self._perm = P
        return P

    def conjugacy_class(self, i: int) -> set:
        """Byte keys of {g w_i g^-1 : g in W}, computed in one vectorised product."""
        inv = self.matrices[self.inverses]
        conj = self.matrices @ self.matrices[i] @ inv
        return {c.tobytes() for c in conj}

    def are_conjugate(self, i: int, j: int) -> bool:
        return self.matrices[j].tobytes() in self.conjugacy_class(i)


@lru_cache(maxsize=64)
def _weyl_cached(rd: RootDatum) -> WeylGroup:
    return WeylGroup(rd)


def weyl_group(rd: RootDatum) -> WeylGroup:
    return _weyl_cached(rd)


def coxeter_element(rd: RootDatum, ordering=None) -> WeylElement:
    """Product of the simple reflections in the given order of basis positions."""
    n = len(rd.basis)
    ordering = tuple(range(n)) if ordering is None else tuple(int(i) for i in ordering)
    if sorted(ordering) != list(range(n)):
        raise UsageError("ordering must be a permutation of the root basis")
    return element_from_word(rd, ordering)


def coxeter_number(rd: RootDatum) -> int:
    return coxeter_element(rd).order()


def root_orbits(rd: RootDatum, w: WeylElement) -> list[list[int]]:
    """Orbits of <w> on Φ, each listed from its smallest root index."""
    imgs = rd.roots @ w.matrix.T
    perm = [rd.index(x) for x in imgs.tolist()]
    seen = [False] * rd.num_roots
    out = []
    for k in range(rd.num_roots):
        if seen[k]:
            continue
        orb = []
        j = k
        while not seen[j]:
            seen[j] = True
            orb.append(j)
            j = perm[j]
        out.append(orb)
    return out


def coxeter_lattice_data(rd: RootDatum, w: WeylElement) -> dict:
    """det(1 - w) on M and the invariant factors of its cokernel."""
    A = np.eye(rd.rank, dtype=np.int64) - w.matrix
    d = linalg.int_det(A)
    out = {"det": d, "invariant_factors": None, "cokernel_order": None}
    if d != 0:
        inv = linalg.smith_invariants(A)
        out["invariant_factors"] = [x for x in inv if x != 1] or [1]
        out["cokernel_order"] = math.prod(inv)
    return out


def torsion_eigenspace(rd: RootDatum, w: WeylElement, t: int, q: int) -> np.ndarray:
    """Basis (rows) of {x in M∨ ⊗ F_t : w x = q x}."""
    if math.gcd(q, t) != 1:
        raise UsageError(f"q = {q} is not a unit modulo {t}")
    F = GF(t)
    A = (w.coaction() - (q % t) * np.eye(rd.rank, dtype=np.int64)) % t
    return linalg.nullspace(A, F)


def scaling_stabilizer(rd: RootDatum, v, t: int, W: WeylGroup | None = None) -> list[int]:
    """Indices of w' in W with w'·v in F_t^x · v (exhaustive scan)."""
    W = weyl_group(rd) if W is None else W
    v = np.asarray(v, dtype=np.int64) % t
    if not np.any(v):
        raise UsageError("v must be nonzero")
    co = np.transpose(W.matrices[W.inverses], (0, 2, 1))
    imgs = np.einsum("wij,j->wi", co, v) % t
    pivot = int(np.flatnonzero(v)[0])
    inv_pivot = pow(int(v[pivot]), -1, t)
    out = []
    for k, x in enumerate(imgs):
        lam = int(x[pivot]) * inv_pivot % t
        if lam and np.array_equal(x, lam * v % t):
            out.append(k)
    return out


def powers(w: WeylElement) -> list[WeylElement]:
    out = []
    n = w.matrix.shape[0]
    X = np.eye(n, dtype=np.int64)
    while True:
        out.append(WeylElement(X, ()))
        X = X @ w.matrix
        if np.array_equal(X, np.eye(n, dtype=np.int64)):
            return out


def all_coxeter_orderings_conjugate(rd: RootDatum, W: WeylGroup | None = None) -> bool:
    """Every ordering of the simple reflections gives an element W-conjugate to the standard one."""
    W = weyl_group(rd) if W is None else W
    base = W.index_of(coxeter_element(rd))
    cls = W.conjugacy_class(base)
    seen = set()
    for perm in itertools.permutations(range(len(rd.basis))):
        key = coxeter_element(rd, perm).matrix.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if key not in cls:
            return False
    return True
