"""Root data of the irreducible split types A-G (ranks up to 8).

Lattice coordinates.  For the simply connected datum, M is the weight
lattice written in the fundamental-weight basis and M∨ is the coroot lattice
in the simple-coroot basis.  For the adjoint datum, M is the root lattice in
the simple-root basis and M∨ the coweight lattice in the fundamental-coweight
basis.  In both cases the pairing is the ordinary dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import UnsupportedError, UsageError
from .linalg import smith_invariants

SERIES = "ABCDEFG"


def _valid(series: str, n: int) -> bool:
    if n < 1 or n > 8:
        return False
    return {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(series, False)


def parse_type(tag: str, rank: int | None = None) -> tuple[str, int]:
    """Accept 'A2', ('A', 2) or 'a' with a separate rank."""
    tag = str(tag).strip().upper()
    if rank is None:
        if len(tag) < 2 or not tag[1:].isdigit():
            raise UsageError(f"cannot parse type {tag!r}")
        series, n = tag[0], int(tag[1:])
    else:
        series, n = tag, int(rank)
    if series not in SERIES or not _valid(series, n):
        raise UsageError(f"invalid Dynkin type {series}{n}")
    return series, n


def euclidean_simple_roots(series: str, n: int) -> list[list[Fraction]]:
    """Bourbaki's realisation of the simple roots."""
    half = Fraction(1, 2)

    def e(i, dim):
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    def diff(i, j, dim):
        return [a - b for a, b in zip(e(i, dim), e(j, dim))]

    if series == "A":
        return [diff(i, i + 1, n + 1) for i in range(n)]
    if series == "B":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n)]
    if series == "C":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [[2 * x for x in e(n - 1, n)]]
    if series == "D":
        last = [a + b for a, b in zip(e(n - 2, n), e(n - 1, n))]
        return [diff(i, i + 1, n) for i in range(n - 1)] + [last]
    if series == "G":
        return [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]]
    if series == "F":
        return [
            diff(1, 2, 4),
            diff(2, 3, 4),
            e(3, 4),
            [half, -half, -half, -half],
        ]
    if series == "E":
        a1 = [half] + [-half] * 6 + [half]
        a2 = [a + b for a, b in zip(e(0, 8), e(1, 8))]
        rest = [diff(i, i - 1, 8) for i in range(1, n - 1)]
        return [a1, a2] + rest
    raise UsageError(series)


@lru_cache(maxsize=None)
def cartan_matrix(series: str, n: int) -> np.ndarray:
    """cartan[i, j] = <α_i∨, α_j> = 2(α_i, α_j)/(α_i, α_i)."""
    S = euclidean_simple_roots(series, n)
    dot = lambda u, v: sum(a * b for a, b in zip(u, v))
    C = np.array([[int(2 * dot(S[i], S[j]) / dot(S[i], S[i])) for j in range(n)] for i in range(n)])
    C.flags.writeable = False
    return C


def symmetrizer(cartan: np.ndarray) -> list[int]:
    """Squared simple-root lengths, normalised so the shortest is 1."""
    n = cartan.shape[0]
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i, j] and d[j] is None:
                    # d_i C_ij = d_j C_ji
                    d[j] = d[i] * int(cartan[i, j]) / int(cartan[j, i])
                    stack.append(j)
    m = min(d)
    d = [x / m for x in d]
    assert all(x.denominator == 1 for x in d)
    return [int(x) for x in d]


def _closure(cartan: np.ndarray) -> np.ndarray:
    """Positive roots in simple-root coordinates, closing under reflections."""
    n = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            b = np.array(beta)
            for i in range(n):
                # <β, α_i∨> = Σ_j c_j cartan[i, j]
                k = int(cartan[i] @ b)
                img = tuple(int(x) for x in b - k * np.eye(n, dtype=int)[i])
                if all(x >= 0 for x in img) and any(img) and img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
    pos = sorted(seen, key=lambda c: (sum(c), tuple(-x for x in c)))
    return np.array(pos, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """(M, Φ, M∨, Φ∨) with root basis; roots are rows, paired index-wise with coroots."""

    rank: int
    roots: np.ndarray
    coroots: np.ndarray
    basis: tuple
    series: str
    type_rank: int
    isogeny: str
    # each root in coordinates relative to the root basis
    coords: np.ndarray = field(repr=False)
    # squared lengths of the basis roots, shortest 1
    lengths: tuple = field(repr=False)

    def __post_init__(self):
        for a in (self.roots, self.coroots, self.coords):
            a.flags.writeable = False

    # -- basic queries ----------------------------------------------------
    @property
    def type_tag(self) -> str:
        return f"{self.series}{self.type_rank}"

    @property
    def num_roots(self) -> int:
        return self.roots.shape[0]

    @property
    def semisimple_rank(self) -> int:
        return len(self.basis)

    @property
    def positive(self) -> list[int]:
        return [i for i in range(self.num_roots) if self.coords[i].sum() > 0]

    @property
    def cartan(self) -> np.ndarray:
        """cartan[i, j] = <α_i∨, α_j> for the basis roots."""
        B = list(self.basis)
        return self.coroots[B] @ self.roots[B].T

    def index(self, root) -> int:
        return self._root_index[tuple(int(x) for x in root)]

    @property
    def _root_index(self):
        d = self.__dict__.get("_idx")
        if d is None:
            d = {tuple(int(x) for x in r): i for i, r in enumerate(self.roots)}
            object.__setattr__(self, "_idx", d)
        return d

    def index_of_coords(self, c) -> int | None:
        d = self.__dict__.get("_cidx")
        if d is None:
            d = {tuple(int(x) for x in r): i for i, r in enumerate(self.coords)}
            object.__setattr__(self, "_cidx", d)
        return d.get(tuple(int(x) for x in c))

    def negative_index(self, i: int) -> int:
        return self.index(-self.roots[i])

    def height(self, i: int) -> int:
        return int(self.coords[i].sum())

    def root_length(self, i: int) -> int:
        """Squared length (shortest basis root has length 1)."""
        c = self.coords[i]
        C = self.cartan
        L = self.lengths
        # (α_i, α_j) = L_i C_ij / 2
        G = np.array([[L[a] * C[a, b] for b in range(len(L))] for a in range(len(L))])
        return int(c @ G @ c) // 2

    def pairing(self, x, y) -> int:
        return int(np.dot(x, y))

    def reflection(self, i: int) -> np.ndarray:
        """Matrix of s_a on M (column vectors): x -> x - <x, a∨> a."""
        a, av = self.roots[i], self.coroots[i]
        return np.eye(self.rank, dtype=np.int64) - np.outer(a, av)

    def coreflection(self, i: int) -> np.ndarray:
        a, av = self.roots[i], self.coroots[i]
        return np.eye(self.rank, dtype=np.int64) - np.outer(av, a)

    def simple_reflections(self) -> list[np.ndarray]:
        return [self.reflection(i) for i in self.basis]

    def highest_root(self) -> int:
        pos = self.positive
        return max(pos, key=lambda i: (self.height(i), tuple(self.coords[i])))

    def is_simply_connected(self) -> bool:
        return self.isogeny == "sc"

    def to_json(self) -> dict:
        return {
            "series": self.series,
            "rank": self.type_rank,
            "isogeny": self.isogeny,
            "roots": self.roots.tolist(),
            "coroots": self.coroots.tolist(),
            "basis": list(self.basis),
        }

    def same_as(self, other: "RootDatum") -> bool:
        """Equality up to re-indexing of the root/coroot pairs."""
        a = {(tuple(r), tuple(c)) for r, c in zip(self.roots.tolist(), self.coroots.tolist())}
        b = {(tuple(r), tuple(c)) for r, c in zip(other.roots.tolist(), other.coroots.tolist())}
        basis_a = {tuple(self.roots[i]) for i in self.basis}
        basis_b = {tuple(other.roots[i]) for i in other.basis}
        return self.rank == other.rank and a == b and basis_a == basis_b


def build_root_datum(series: str, rank: int | None = None, isogeny: str = "sc") -> RootDatum:
    """Root datum of the given irreducible type; ``series`` may be 'A2' with rank None."""
    series, n = parse_type(series, rank)
    if isogeny not in ("sc", "ad"):
        raise UsageError(f"isogeny must be 'sc' or 'ad', got {isogeny!r}")
    return _build(series, n, isogeny)


@lru_cache(maxsize=None)
def _build(series: str, n: int, isogeny: str) -> RootDatum:
    C = cartan_matrix(series, n)
    L = symmetrizer(C)
    pos = _closure(C)
    coords = np.vstack([pos, -pos])
    Lv = np.array(L)
    G = np.array([[L[a] * C[a, b] for b in range(n)] for a in range(n)])  # 2(α_a, α_b)
    norms = np.einsum("ki,ij,kj->k", coords, G, coords) // 2
    co = coords * Lv[None, :]
    assert np.all(co % norms[:, None] == 0)
    co = co // norms[:, None]  # coroots in simple-coroot coordinates
    if isogeny == "sc":
        roots = coords @ C.T  # fundamental-weight coordinates: <β, α_i∨>
        coroots = co
    else:
        roots = coords
        coroots = co @ C  # fundamental-coweight coordinates: <α_i, β∨>
    return RootDatum(
        rank=n,
        roots=roots.astype(np.int64),
        coroots=coroots.astype(np.int64),
        basis=tuple(range(n)),
        series=series,
        type_rank=n,
        isogeny=isogeny,
        coords=coords.astype(np.int64),
        lengths=tuple(L),
    )


_DUAL_SERIES = {"B": "C", "C": "B"}


def dual_datum(rd: RootDatum) -> RootDatum:
    """Swap the roles of (M, Φ) and (M∨, Φ∨); index pairing and basis are kept."""
    basis = list(rd.basis)
    L = rd.lengths
    # coroot of β in the coroot basis: c_i L_i / |β|^2
    norms = np.array([rd.root_length(i) for i in range(rd.num_roots)])
    cc = rd.coords * np.array(L)[None, :] // norms[:, None]
    # dual lengths are inverse, rescaled to integers
    inv = [Fraction(1, x) for x in L]
    m = min(inv)
    dl = tuple(int(x / m) for x in inv)
    series = _DUAL_SERIES.get(rd.series, rd.series)
    return RootDatum(
        rank=rd.rank,
        roots=rd.coroots.copy(),
        coroots=rd.roots.copy(),
        basis=tuple(basis),
        series=series,
        type_rank=rd.type_rank,
        isogeny={"sc": "ad", "ad": "sc"}.get(rd.isogeny, rd.isogeny),
        coords=cc.astype(np.int64),
        lengths=dl,
    )


def is_very_good(rd: RootDatum, l: int) -> bool:
    """Very good characteristic for an irreducible type."""
    s, n = rd.series, rd.type_rank
    if s == "A":
        return (n + 1) % l != 0
    if l == 2:
        return False
    if s in "EFG" and l == 3:
        return False
    if s == "E" and n == 8 and l == 5:
        return False
    return True


def center_order(rd: RootDatum) -> int:
    """|M / ZΦ| via Smith normal form of the root matrix."""
    if rd.isogeny != "sc":
        raise UnsupportedError("center_order needs a simply connected datum")
    inv = smith_invariants(rd.roots[list(rd.basis)])
    if len(inv) < rd.rank:
        return 0
    out = 1
    for d in inv:
        out *= d
    return out


def levi_subdatum(rd: RootDatum, I) -> RootDatum:
    """Roots that are Z-combinations of the basis roots in I."""
    I = [int(i) for i in I]
    if any(i not in rd.basis for i in I):
        raise UsageError("Levi set must be a subset of the root basis")
    pos_in_basis = [list(rd.basis).index(i) for i in I]
    others = [k for k in range(len(rd.basis)) if k not in pos_in_basis]
    keep = [k for k in range(rd.num_roots) if not np.any(rd.coords[k, others])]
    index = {old: new for new, old in enumerate(keep)}
    coords = rd.coords[keep][:, pos_in_basis] if pos_in_basis else np.zeros((len(keep), 0), dtype=np.int64)
    return RootDatum(
        rank=rd.rank,
        roots=rd.roots[keep].copy(),
        coroots=rd.coroots[keep].copy(),
        basis=tuple(index[i] for i in I),
        series=rd.series,
        type_rank=rd.type_rank,
        isogeny=rd.isogeny,
        coords=coords.astype(np.int64),
        lengths=tuple(rd.lengths[k] for k in pos_in_basis),
    )


def check_axioms(rd: RootDatum) -> dict:
    """Exhaustive check of the root-datum axioms; returns named booleans."""
    R, Rv = rd.roots, rd.coroots
    pairs_two = bool(np.all(np.einsum("ij,ij->i", R, Rv) == 2))
    root_set = {tuple(r) for r in R.tolist()}
    coroot_set = {tuple(r) for r in Rv.tolist()}
    stable = True
    for i in range(rd.num_roots):
        if {tuple(r) for r in (R @ rd.reflection(i).T).tolist()} != root_set:
            stable = False
        if {tuple(r) for r in (Rv @ rd.coreflection(i).T).tolist()} != coroot_set:
            stable = False
    reduced = True
    for r in R.tolist():
        for k in (2, 3):
            if tuple(k * x for x in r) in root_set:
                reduced = False
    signs = bool(np.all((rd.coords >= 0).all(axis=1) | (rd.coords <= 0).all(axis=1)))
    symmetric = root_set == {tuple(-x for x in r) for r in root_set}
    return {
        "pairing_two": pairs_two,
        "reflection_stable": stable,
        "reduced": reduced,
        "basis_sign_coherent": signs,
        "symmetric": symmetric,
    }
