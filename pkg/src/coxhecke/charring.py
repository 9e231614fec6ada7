"""Characters on the dual torus: orbit sums, irreducible characters, restriction and evaluation.

Weights are integer vectors in the character lattice M of the given root datum
(for the dual group this is X^*(T^) = X_*(T)).  A torus point is recorded by
the values of the coordinate characters e_1, ..., e_r at it, so a weight μ
takes the value prod_i p_i^{μ_i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ResourceError, UsageError
from .fields import FiniteField
from .rootdata import RootDatum, levi_subdatum

REP_DIM_CAP = 10**6


class CharElt:
    """A finitely supported integer combination of weights; zero multiplicities dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        d = {}
        for k, v in dict(terms or {}).items():
            k = tuple(int(x) for x in k)
            v = int(v)
            if v:
                d[k] = d.get(k, 0) + v
        self._terms = {k: v for k, v in d.items() if v}

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __getitem__(self, weight) -> int:
        return self._terms.get(tuple(int(x) for x in weight), 0)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, CharElt) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "CharElt") -> "CharElt":
        d = dict(self._terms)
        for k, v in other._terms.items():
            d[k] = d.get(k, 0) + v
        return CharElt(d)

    def __neg__(self) -> "CharElt":
        return CharElt({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "CharElt") -> "CharElt":
        return self + (-other)

    def scale(self, c: int) -> "CharElt":
        return CharElt({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other: "CharElt") -> "CharElt":
        d = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                k = tuple(i + j for i, j in zip(a, b))
                d[k] = d.get(k, 0) + x * y
        return CharElt(d)

    def dim(self) -> int:
        return sum(self._terms.values())

    def to_json(self) -> list:
        return [{"weight": list(k), "mult": v} for k, v in sorted(self._terms.items())]

    def __repr__(self):
        return f"CharElt({dict(sorted(self._terms.items()))})"


# -- lattice helpers ---------------------------------------------------------------------


def _simple(rd: RootDatum):
    B = list(rd.basis)
    return rd.roots[B], rd.coroots[B]


@lru_cache(maxsize=None)
def _root_coords_solver(rd: RootDatum):
    """Exact left inverse of the simple-root matrix: d -> c with c @ S = d."""
    S, _ = _simple(rd)
    k = S.shape[0]
    G = [[Fraction(int(x)) for x in row] for row in (S @ S.T).tolist()]
    inv = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if G[r][col] != 0)
        G[col], G[piv] = G[piv], G[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = G[col][col]
        G[col] = [x / f for x in G[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(k):
            if r != col and G[r][col] != 0:
                g = G[r][col]
                G[r] = [a - g * b for a, b in zip(G[r], G[col])]
                inv[r] = [a - g * b for a, b in zip(inv[r], inv[col])]
    return S, inv


def root_coords(rd: RootDatum, d):
    """Coordinates of d in the simple roots (Fractions), or None if d is not in their span."""
    S, inv = _root_coords_solver(rd)
    k = S.shape[0]
    Sd = [int(x) for x in S @ np.asarray(d, dtype=np.int64)]
    c = [sum(inv[i][j] * Sd[j] for j in range(k)) for i in range(k)]
    back = [sum(c[i] * int(S[i, j]) for i in range(k)) for j in range(S.shape[1])]
    if back != [int(x) for x in d]:
        return None
    return c


def weight_height(rd: RootDatum, weight) -> Fraction:
    """Sum of the coordinates in the simple roots, projecting off the central part."""
    S, inv = _root_coords_solver(rd)
    k = S.shape[0]
    Sd = [int(x) for x in S @ np.asarray(weight, dtype=np.int64)]
    return sum(sum(inv[i][j] * Sd[j] for j in range(k)) for i in range(k))


def is_dominant(rd: RootDatum, weight) -> bool:
    _, Sv = _simple(rd)
    return bool(np.all(Sv @ np.asarray(weight, dtype=np.int64) >= 0))


def dominant_conjugate(rd: RootDatum, weight) -> tuple:
    S, Sv = _simple(rd)
    mu = np.asarray(weight, dtype=np.int64).copy()
    while True:
        p = Sv @ mu
        neg = np.flatnonzero(p < 0)
        if not neg.size:
            return tuple(int(x) for x in mu)
        i = neg[0]
        mu = mu - p[i] * S[i]


def weyl_orbit(rd: RootDatum, weight) -> list[tuple]:
    S, Sv = _simple(rd)
    start = tuple(int(x) for x in weight)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for mu in frontier:
            m = np.array(mu, dtype=np.int64)
            for i in range(S.shape[0]):
                nu = tuple(int(x) for x in m - int(Sv[i] @ m) * S[i])
                if nu not in seen:
                    seen.add(nu)
                    new.append(nu)
        frontier = new
    return sorted(seen)


def weyl_orbit_sum(rd: RootDatum, weight) -> CharElt:
    return CharElt({mu: 1 for mu in weyl_orbit(rd, weight)})


def is_invariant(rd: RootDatum, chi: CharElt) -> bool:
    S, Sv = _simple(rd)
    for mu, c in chi.terms.items():
        m = np.array(mu, dtype=np.int64)
        for i in range(S.shape[0]):
            if chi[m - int(Sv[i] @ m) * S[i]] != c:
                return False
    return True


# -- irreducible characters ----------------------------------------------------------------


def _positive_pairs(rd: RootDatum):
    pos = rd.positive
    return rd.roots[pos], rd.coroots[pos]


def two_rho(rd: RootDatum) -> np.ndarray:
    R, _ = _positive_pairs(rd)
    return R.sum(axis=0) if len(R) else np.zeros(rd.rank, dtype=np.int64)


def weyl_dimension(rd: RootDatum, highest_weight) -> int:
    lam = np.asarray(highest_weight, dtype=np.int64)
    _, Rv = _positive_pairs(rd)
    r2 = two_rho(rd)
    out = Fraction(1)
    for cv in Rv:
        out *= Fraction(2 * int(cv @ lam) + int(cv @ r2), int(cv @ r2))
    assert out.denominator == 1
    return int(out)


def _form(rd: RootDatum) -> np.ndarray:
    """W-invariant integer form (x, y) = sum over coroots of <x, a∨><y, a∨>."""
    C = rd.coroots
    return C.T @ C if len(C) else np.zeros((rd.rank, rd.rank), dtype=np.int64)


def irreducible_character(rd: RootDatum, highest_weight) -> CharElt:
    """Weight multiplicities of V(λ) by Freudenthal's recursion, checked against Weyl's formula."""
    lam = np.asarray(highest_weight, dtype=np.int64)
    if lam.shape != (rd.rank,):
        raise UsageError(f"weight must have {rd.rank} coordinates")
    if not is_dominant(rd, lam):
        raise UsageError(f"{lam.tolist()} is not dominant")
    dim = weyl_dimension(rd, lam)
    if dim > REP_DIM_CAP:
        raise ResourceError(f"dim V = {dim} exceeds the cap {REP_DIM_CAP}")
    S, _ = _simple(rd)
    lam_t = tuple(int(x) for x in lam)

    def in_hull(mu):
        c = root_coords(rd, lam - np.array(dominant_conjugate(rd, mu)))
        return c is not None and all(x.denominator == 1 and x >= 0 for x in c)

    # dominant weights below λ, reached by subtracting simple roots inside the hull
    seen = {lam_t}
    frontier = [lam_t]
    while frontier:
        new = []
        for mu in frontier:
            for a in S:
                nu = tuple(int(x) for x in np.array(mu) - a)
                if nu not in seen and in_hull(nu):
                    seen.add(nu)
                    new.append(nu)
        frontier = new
    dominant = [mu for mu in seen if is_dominant(rd, mu)]
    dominant.sort(key=lambda mu: (-weight_height(rd, mu), tuple(-x for x in mu)))
    B = _form(rd)
    R, _ = _positive_pairs(rd)
    r2 = two_rho(rd)
    mult = {lam_t: 1}

    def m(mu):
        d = dominant_conjugate(rd, mu)
        return mult.get(d, 0) if d in seen else 0

    top = int((lam @ B @ lam) + (lam @ B @ r2))
    for mu in dominant[1:]:
        v = np.array(mu, dtype=np.int64)
        denom = top - int(v @ B @ v + v @ B @ r2)
        num = 0
        for a in R:
            k = 1
            while True:
                w = v + k * a
                mw = m(w)
                if mw == 0 and not in_hull(w):
                    break
                num += mw * int(w @ B @ a)
                k += 1
        num *= 2
        if denom <= 0 or num % denom:
            raise ArithmeticError(f"Freudenthal step failed at {mu}")
        mult[mu] = num // denom
    chi = CharElt()
    for mu in dominant:
        if mult[mu]:
            chi = chi + weyl_orbit_sum(rd, mu).scale(mult[mu])
    if chi.dim() != dim:
        raise ArithmeticError(f"Freudenthal total {chi.dim()} != Weyl dimension {dim}")
    return chi


# -- expansions ----------------------------------------------------------------------


def _greedy_key(rd: RootDatum, mu):
    # largest height first, lexicographic tie-break
    return (-weight_height(rd, mu), tuple(-x for x in mu))


def chevalley_restriction_expand(rd: RootDatum, chi: CharElt, basis: str = "orbit") -> list[tuple]:
    """Coefficients of an invariant χ in orbit sums (or irreducible characters).

    Greedy: repeatedly take the highest dominant weight left and subtract.
    Returns [(dominant weight, coefficient)] in the order processed.
    """
    if not is_invariant(rd, chi):
        raise UsageError("character is not Weyl-invariant")
    if basis not in ("orbit", "irreducible"):
        raise UsageError("basis must be 'orbit' or 'irreducible'")
    out = []
    rest = chi
    while len(rest):
        dom = [mu for mu in rest if is_dominant(rd, mu)]
        mu = min(dom, key=lambda x: _greedy_key(rd, x))
        c = rest[mu]
        piece = weyl_orbit_sum(rd, mu) if basis == "orbit" else irreducible_character(rd, mu)
        rest = rest - piece.scale(c)
        out.append((mu, c))
    return out


def dominant_weights_up_to(rd: RootDatum, level: int) -> list[tuple]:
    """Dominant weights with sum of <λ, α_i∨> at most level (sc lattice coordinates)."""
    _, Sv = _simple(rd)
    if rd.isogeny != "sc" or len(rd.basis) != rd.rank:
        raise UsageError("level enumeration needs a semisimple simply connected datum")
    # in fundamental-weight coordinates the pairing with simple coroots is the identity
    out = []

    def rec(prefix, budget):
        if len(prefix) == rd.rank:
            out.append(tuple(prefix))
            return
        for a in range(budget + 1):
            rec(prefix + [a], budget - a)

    rec([], level)
    assert all(np.array_equal(Sv @ np.array(mu), np.array(mu)) for mu in out[:1])
    return sorted(out, key=lambda mu: _greedy_key(rd, mu))


def restriction_matrix(rd: RootDatum, level: int):
    """K[λ, μ] = coefficient of the orbit sum m_μ in χ_{V(λ)} on dominant weights up to level."""
    weights = dominant_weights_up_to(rd, level)
    pos = {w: i for i, w in enumerate(weights)}
    K = np.zeros((len(weights), len(weights)), dtype=np.int64)
    for i, lam in enumerate(weights):
        for mu, c in chevalley_restriction_expand(rd, irreducible_character(rd, lam)):
            if mu in pos:
                K[i, pos[mu]] = c
    return weights, K


def is_unitriangular(K: np.ndarray, weights, rd: RootDatum) -> bool:
    """Unit diagonal and K[λ, μ] = 0 unless μ ≤ λ in the dominance order."""
    if not np.all(np.diag(K) == 1):
        return False
    for i, lam in enumerate(weights):
        for j, mu in enumerate(weights):
            if i != j and K[i, j]:
                c = root_coords(rd, np.array(lam) - np.array(mu))
                if c is None or any(x < 0 or x.denominator != 1 for x in c):
                    return False
    return True


def restrict_to_levi(rd: RootDatum, chi: CharElt, I) -> dict:
    """Regroup an invariant character into orbit sums for the Levi with simple roots I."""
    L = levi_subdatum(rd, I)
    if not is_invariant(rd, chi):
        raise UsageError("character is not Weyl-invariant")
    restricted = CharElt(chi.terms)
    if not is_invariant(L, restricted):
        raise ArithmeticError("restriction is not invariant under the Levi Weyl group")
    pieces = []
    for mu, c in chevalley_restriction_expand(L, restricted):
        pieces.append({"weight": list(mu), "orbit_size": len(weyl_orbit(L, mu)), "coeff": c})
    return {"levi": L, "character": restricted, "pieces": pieces}


# -- evaluation, duality, twisting -------------------------------------------------------


def _pow(F, x, e):
    if F is None:
        return Fraction(x) ** e
    return int(F.pow(x, e % (F.q - 1))) if e < 0 else int(F.pow(x, e))


def weight_value(weight, point, F: FiniteField | None):
    out = Fraction(1) if F is None else 1
    for e, p in zip(weight, point):
        v = _pow(F, p, int(e))
        out = out * v if F is None else int(F.mul(out, v))
    return out


def evaluate(chi: CharElt, point, F: FiniteField | None = None):
    """Σ mult · point^weight, in F (or exactly over Q when F is None)."""
    if F is None:
        point = [Fraction(p) for p in point]
        if any(p == 0 for p in point):
            raise UsageError("point coordinates must be units")
        return sum((c * weight_value(mu, point, None) for mu, c in chi.terms.items()), Fraction(0))
    point = [int(p) % F.q if F.m == 1 else int(p) for p in point]
    if any(p == 0 for p in point):
        raise UsageError("point coordinates must be units")
    total = 0
    for mu, c in sorted(chi.terms.items()):
        total = int(F.add(total, F.mul(F.from_int(c), weight_value(mu, point, F))))
    return total


@dataclass(frozen=True)
class LatticeCharacter:
    """A homomorphism X_*(T) -> F^x, given by its values on the lattice basis."""

    values: tuple
    field: FiniteField | None

    def __call__(self, lam) -> int:
        return weight_value(lam, self.values, self.field)


@dataclass(frozen=True)
class TorusPoint:
    """A point of the dual torus, given by the values of the coordinate characters."""

    values: tuple
    field: FiniteField | None

    def character_value(self, weight):
        return weight_value(weight, self.values, self.field)


def to_dual_point(chi: LatticeCharacter) -> TorusPoint:
    return TorusPoint(tuple(chi.values), chi.field)


def from_dual_point(t: TorusPoint) -> LatticeCharacter:
    return LatticeCharacter(tuple(t.values), t.field)


def duality_holds(chi: LatticeCharacter, rank: int) -> bool:
    """λ(χ∨) = χ(λ) for every basis cocharacter λ."""
    t = to_dual_point(chi)
    for i in range(rank):
        lam = [0] * rank
        lam[i] = 1
        if t.character_value(lam) != chi(lam):
            return False
    return from_dual_point(t) == chi


def central_twist(rd: RootDatum, I, s, z, exponent: int, F: FiniteField | None = None) -> dict:
    """z^e · s for z central in the Levi with simple roots I; checks the twisting identity."""
    L = levi_subdatum(rd, I)
    if exponent < 1:
        raise UsageError("exponent must be positive")
    for k in L.basis:
        if weight_value(L.roots[k], z, F) != 1:
            raise UsageError("z does not lie in the centre of the Levi")
    mul = (lambda a, b: a * b) if F is None else (lambda a, b: int(F.mul(a, b)))
    zs = [_pow(F, zi, exponent) for zi in z]
    out = [mul(a, b) for a, b in zip(zs, s)]
    checks = []
    tops = set()
    for i in range(rd.rank):
        for sign in (1, -1):
            e = [0] * rd.rank
            e[i] = sign
            tops.add(dominant_conjugate(L, e))
    for lam in sorted(tops):
        chi = irreducible_character(L, lam)
        omega = _pow(F, weight_value(lam, z, F), exponent)
        lhs = evaluate(chi, out, F)
        rhs = mul(omega, evaluate(chi, s, F))
        checks.append({"highest_weight": list(lam), "holds": lhs == rhs})
    return {"point": [int(x) if F is not None else str(x) for x in out], "checks": checks,
            "passed": all(c["holds"] for c in checks)}
