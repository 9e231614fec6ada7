"""Iwahori-Hecke algebra in the Bernstein presentation over Z[q], and its q = 1 degeneration.

Elements are finite sums Σ c_{λ,w}(q) e_λ T_w with λ in the cocharacter lattice
X = M∨ of the root datum and w indexing the enumerated Weyl group.  Polynomials
are tuples of integers, constant term first.

Conventions (``convention=``):

* ``"written"``: T_s e_λ = e_{sλ} T_s + (q-1)(e_{sλ} - e_λ)/(1 - e_{-α∨}) together
  with T_s^2 = (1-q) T_s + q, the only quadratic relation for which this
  commutation rule gives an associative product.
* ``"standard"``: T_s^2 = (q-1) T_s + q with correction (q-1)(e_λ - e_{sλ})/(1 - e_{-α∨}).
  It is isomorphic to ``"written"`` via T_w -> (-1)^{l(w)} T_w.
* ``"mixed"``: the written commutation rule with the standard quadratic
  relation.  Not associative; kept only to exhibit the obstruction.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import PreconditionError, UsageError
from .fields import GF, FiniteField, multiplicative_order
from .rootdata import RootDatum
from .weyl import WeylGroup, weyl_group

# -- integer polynomials in q -------------------------------------------------------------


def ptrim(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(a, b) -> tuple:
    n = max(len(a), len(b))
    return ptrim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def pmul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim(out)


def peval(p, value: int, modulus: int | None = None) -> int:
    out = 0
    for c in reversed(p):
        out = out * value + c
        if modulus:
            out %= modulus
    return out


Q = (0, 1)
Q_MINUS_1 = (-1, 1)
ONE = (1,)


# Polynomials are packed into integers by q -> 2^128 inside products, which turns
# polynomial arithmetic into integer arithmetic; exact while |coefficients| < 2^126.
_SHIFT = 128
_BASE = 1 << _SHIFT
_HALF = 1 << (_SHIFT - 1)
_LIMIT = 1 << (_SHIFT - 2)


def encode(p) -> int:
    out = 0
    for c in reversed(p):
        out = (out << _SHIFT) + c
    return out


def decode(n: int) -> tuple:
    out = []
    while n:
        r = n & (_BASE - 1)
        if r >= _HALF:
            r -= _BASE
        if abs(r) >= _LIMIT:
            raise OverflowError("coefficient too large for the packed representation")
        out.append(r)
        n = (n - r) >> _SHIFT
    return tuple(out)


def _acc(d: dict, key, poly):
    v = padd(d.get(key, ()), poly)
    if v:
        d[key] = v
    else:
        d.pop(key, None)


# -- the algebra -------------------------------------------------------------------------


CONVENTIONS = {
    # name: (sign of the Bernstein correction, coefficient of T_s in T_s^2)
    "written": (1, (1, -1)),
    "standard": (-1, Q_MINUS_1),
    "mixed": (1, Q_MINUS_1),
}


class HeckeAlgebra:
    def __init__(self, rd: RootDatum, W: WeylGroup | None = None, convention: str = "written"):
        if convention not in CONVENTIONS:
            raise UsageError(f"unknown convention {convention!r}")
        self.convention = convention
        self.sign, self.quad = CONVENTIONS[convention]
        self.rd = rd
        self.W = weyl_group(rd) if W is None else W
        W = self.W
        self.rank = rd.rank
        self.simple_index = [W.index_of(S) for S in rd.simple_reflections()]
        # W acts on cocharacters through the contragredient
        self.coaction = np.array([np.rint(np.linalg.inv(M)).astype(np.int64).T for M in W.matrices])
        self.alpha = [rd.roots[i] for i in rd.basis]
        self.alpha_co = [rd.coroots[i] for i in rd.basis]
        self.identity = 0
        self.telescopes_checked = 0
        self._tx_e = {}
        self._tt = {}
        self._prod = {}

    # -- constructors --
    def e(self, lam) -> "HeckeElement":
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise UsageError(f"cocharacter must have {self.rank} coordinates")
        return HeckeElement(self, {(lam, 0): ONE})

    def T(self, w) -> "HeckeElement":
        if not isinstance(w, (int, np.integer)):
            w = self.W.index_of(w)
        return HeckeElement(self, {((0,) * self.rank, int(w)): ONE})

    def T_word(self, word) -> "HeckeElement":
        M = np.eye(self.rank, dtype=np.int64)
        for i in word:
            M = M @ self.W._simple[i]
        return self.T(self.W.index_of(M))

    def unit(self) -> "HeckeElement":
        return self.T(0)

    def scalar(self, poly) -> "HeckeElement":
        return HeckeElement(self, {((0,) * self.rank, 0): ptrim(poly)})

    def act(self, w: int, lam) -> tuple:
        return tuple(int(x) for x in self.coaction[w] @ np.asarray(lam, dtype=np.int64))

    def reflect(self, i: int, lam) -> tuple:
        lam = np.asarray(lam, dtype=np.int64)
        return tuple(int(x) for x in lam - int(self.alpha[i] @ lam) * self.alpha_co[i])

    # -- the Bernstein fraction --
    def bernstein_fraction(self, i: int, lam) -> dict:
        """(e_{sλ} - e_λ) / (1 - e_{-α∨}) as a lattice polynomial {μ: coeff}.

        For n = <α, λ> > 0 this is -Σ_{k=0}^{n-1} e_{λ-kα∨}; for n < 0 it is
        Σ_{j=1}^{-n} e_{λ+jα∨}.  The result is checked against the defining
        identity F (1 - e_{-α∨}) = e_{sλ} - e_λ on every call.
        """
        lam = np.asarray(lam, dtype=np.int64)
        a, av = self.alpha[i], self.alpha_co[i]
        n = int(a @ lam)
        out = {}
        if n > 0:
            for k in range(n):
                out[tuple(int(x) for x in lam - k * av)] = -1
        elif n < 0:
            for j in range(1, -n + 1):
                out[tuple(int(x) for x in lam + j * av)] = 1
        # independent check by multiplying back
        prod = dict(out)
        for mu, c in out.items():
            key = tuple(x - y for x, y in zip(mu, av.tolist()))
            prod[key] = prod.get(key, 0) - c
        target = {}
        s_lam = self.reflect(i, lam)
        target[s_lam] = target.get(s_lam, 0) + 1
        lt = tuple(int(x) for x in lam)
        target[lt] = target.get(lt, 0) - 1
        clean = lambda d: {k: v for k, v in d.items() if v}
        if clean(prod) != clean(target):
            raise ArithmeticError("Bernstein fraction does not telescope")
        self.telescopes_checked += 1
        return out

    # -- finite Hecke algebra --
    def _left_simple_T(self, s: int, z: int) -> dict:
        """T_s T_z as {w: poly}."""
        W = self.W
        sz = W.mul(self.simple_index[s], z)
        if W.lengths[sz] > W.lengths[z]:
            return {sz: ONE}
        # T_s T_{sz} with l(sz) < l(z): T_s^2 T_{sz} = quad T_z + q T_{sz}
        return {z: self.quad, sz: Q}

    def TT(self, x: int, y: int) -> dict:
        key = (x, y)
        r = self._tt.get(key)
        if r is None:
            cur = {y: ONE}
            for s in reversed(self.W.words[x]):
                nxt = {}
                for z, p in cur.items():
                    for w, c in self._left_simple_T(s, z).items():
                        _acc(nxt, w, pmul(p, c))
                cur = nxt
            self._tt[key] = r = cur
        return r

    def Tx_e(self, x: int, lam: tuple) -> dict:
        """T_x e_λ in the Bernstein basis, {(μ, z): poly}."""
        key = (x, lam)
        r = self._tx_e.get(key)
        if r is not None:
            return r
        if x == 0:
            r = {(lam, 0): ONE}
        else:
            word = self.W.words[x]
            s, rest = word[0], word[1:]
            M = np.eye(self.rank, dtype=np.int64)
            for i in rest:
                M = M @ self.W._simple[i]
            inner = self.Tx_e(self.W.index_of(M), lam)
            r = {}
            for (nu, z), p in inner.items():
                # T_s e_ν T_z = e_{sν} T_s T_z + (q - 1) F(ν) T_z
                s_nu = self.reflect(s, nu)
                for w, c in self._left_simple_T(s, z).items():
                    _acc(r, (s_nu, w), pmul(p, c))
                corr = pmul(p, (-self.sign, self.sign))
                for mu, c in self.bernstein_fraction(s, nu).items():
                    _acc(r, (mu, z), pmul(corr, (c,)))
        self._tx_e[key] = r
        return r

    def _basis_product(self, x: int, mu: tuple, y: int) -> list:
        """T_x e_μ T_y as [((ν, w), encoded poly)]."""
        key = (x, mu, y)
        r = self._prod.get(key)
        if r is None:
            acc = {}
            for (nu, z), c in self.Tx_e(x, mu).items():
                ce = encode(c)
                for w, d in self.TT(z, y).items():
                    acc[(nu, w)] = acc.get((nu, w), 0) + ce * encode(d)
            self._prod[key] = r = [(k, v) for k, v in acc.items() if v]
        return r

    def multiply(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        out = {}
        bt = [(mu, y, encode(r)) for (mu, y), r in b.terms.items()]
        for (lam, x), p in a.terms.items():
            pe = encode(p)
            for mu, y, re in bt:
                pr = pe * re
                for (nu, w), c in self._basis_product(x, mu, y):
                    key = (tuple(u + v for u, v in zip(lam, nu)), w)
                    out[key] = out.get(key, 0) + pr * c
        return HeckeElement(self, {k: decode(v) for k, v in out.items() if v})

    # -- random elements --
    def random_element(self, rng: random.Random, support: int = 4, radius: int = 2, degree: int = 2) -> "HeckeElement":
        d = {}
        for _ in range(rng.randint(1, support)):
            lam = tuple(rng.randint(-radius, radius) for _ in range(self.rank))
            w = rng.randrange(len(self.W))
            poly = ptrim(rng.randint(-3, 3) for _ in range(degree + 1))
            _acc(d, (lam, w), poly)
        return HeckeElement(self, d)

    def orbit_sum(self, lam) -> "HeckeElement":
        """Σ e_μ over the W-orbit of λ (a central element)."""
        orbit = {self.act(w, lam) for w in range(len(self.W))}
        return HeckeElement(self, {(mu, 0): ONE for mu in orbit})


class HeckeElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: HeckeAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: ptrim(v) for k, v in terms.items() if ptrim(v)}

    def __add__(self, other):
        d = dict(self.terms)
        for k, v in other.terms.items():
            _acc(d, k, v)
        return HeckeElement(self.alg, d)

    def __neg__(self):
        return HeckeElement(self.alg, {k: tuple(-c for c in v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def scale(self, poly) -> "HeckeElement":
        poly = (poly,) if isinstance(poly, int) else tuple(poly)
        return HeckeElement(self.alg, {k: pmul(v, poly) for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        W = self.alg.W
        rows = [{"lambda": list(lam), "w_word": list(W.words[w]), "coeff": list(p)}
                for (lam, w), p in sorted(self.terms.items())]
        return {"terms": rows}

    def __repr__(self):
        return f"HeckeElement({self.to_json()['terms']})"


def element_from_json(alg: HeckeAlgebra, data: dict) -> HeckeElement:
    out = HeckeElement(alg, {})
    for row in data.get("terms", []):
        x = alg.e(row["lambda"]) * alg.T_word(row.get("w_word", []))
        out = out + x.scale(tuple(int(c) for c in row["coeff"]))
    return out


@lru_cache(maxsize=16)
def hecke_algebra(rd: RootDatum, convention: str = "written") -> HeckeAlgebra:
    return HeckeAlgebra(rd, convention=convention)


def sign_twist(x: HeckeElement, target: HeckeAlgebra) -> HeckeElement:
    """e_λ T_w -> (-1)^{l(w)} e_λ T_w, transported into another convention."""
    L = x.alg.W.lengths
    return HeckeElement(target, {(lam, w): p if L[w] % 2 == 0 else tuple(-c for c in p)
                                 for (lam, w), p in x.terms.items()})


def sign_twist_check(rd: RootDatum, samples: int = 100, seed: int = 0) -> dict:
    """The sign twist is multiplicative from the written to the standard convention."""
    A, B = hecke_algebra(rd, "written"), hecke_algebra(rd, "standard")
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        a, b = A.random_element(rng), A.random_element(rng)
        if sign_twist(a * b, B) != sign_twist(a, B) * sign_twist(b, B):
            failures.append(k)
    return {"samples": samples, "failures": failures[:10], "passed": not failures}


# -- checks -----------------------------------------------------------------------------


def associativity_check(alg: HeckeAlgebra, samples: int = 500, seed: int = 0) -> dict:
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        a, b, c = (alg.random_element(rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            failures.append(k)
    return {"samples": samples, "failures": failures[:10], "passed": not failures}


def center_commute_check(alg: HeckeAlgebra, f: HeckeElement, samples: int = 50, seed: int = 0) -> dict:
    """f x = x f for every T(s), sampled e(λ), and sampled random elements."""
    rng = random.Random(seed)
    tests = [("T", s, alg.T(alg.simple_index[s])) for s in range(len(alg.simple_index))]
    for _ in range(samples):
        lam = tuple(rng.randint(-2, 2) for _ in range(alg.rank))
        tests.append(("e", list(lam), alg.e(lam)))
        tests.append(("random", None, alg.random_element(rng)))
    failures = []
    for kind, label, x in tests:
        if f * x != x * f:
            failures.append({"kind": kind, "label": label})
    return {"tested": len(tests), "failures": failures[:10], "passed": not failures}


def specialize_q(a: HeckeElement, value: int = 1, modulus: int | None = None) -> dict:
    """Substitute q = value; at q = 1, e_λ T_w goes to the group element (λ, w)."""
    out = {}
    for key, p in a.terms.items():
        c = peval(p, value, modulus)
        if modulus:
            c %= modulus
        if c:
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def semidirect_multiply(alg: HeckeAlgebra, x: dict, y: dict, modulus: int | None = None) -> dict:
    """Product in Z[X ⋊ W]: (λ, w)(μ, v) = (λ + w(μ), wv)."""
    out = {}
    for (lam, w), c in x.items():
        for (mu, v), d in y.items():
            wm = alg.act(w, mu)
            key = (tuple(a + b for a, b in zip(lam, wm)), alg.W.mul(w, v))
            out[key] = out.get(key, 0) + c * d
            if modulus:
                out[key] %= modulus
    return {k: v for k, v in out.items() if v}


def degeneration_check(alg: HeckeAlgebra, samples: int = 300, seed: int = 0, modulus: int | None = None) -> dict:
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        a, b = alg.random_element(rng), alg.random_element(rng)
        lhs = specialize_q(a * b, 1, modulus)
        rhs = semidirect_multiply(alg, specialize_q(a, 1, modulus), specialize_q(b, 1, modulus), modulus)
        if lhs != rhs:
            failures.append(k)
    return {"samples": samples, "failures": failures[:10], "passed": not failures}


def quadratic_relation(alg: HeckeAlgebra, i: int = 0) -> HeckeElement:
    s = alg.T(alg.simple_index[i])
    return s * s


def worked_identity(alg: HeckeAlgebra, i: int = 0) -> dict:
    """T(s) e(α∨) against e(-α∨) T(s) - (q-1)(e(α∨) + e(0)) for a simple root."""
    av = tuple(int(x) for x in alg.alpha_co[i])
    s = alg.T(alg.simple_index[i])
    lhs = s * alg.e(av)
    zero = (0,) * alg.rank
    rhs = alg.e(tuple(-x for x in av)) * s - (alg.e(av) + alg.e(zero)).scale(Q_MINUS_1)
    return {"lhs": lhs.to_json(), "rhs": rhs.to_json(), "passed": lhs == rhs}


# -- the finite degenerate algebra and the projector ----------------------------------------


class DegenerateModel:
    """k[(X/nX) ⋊ W] acting on its regular representation."""

    def __init__(self, rd: RootDatum, n: int, l: int):
        self.alg = hecke_algebra(rd)
        self.rd, self.n, self.l = rd, n, l
        r = rd.rank
        m = multiplicative_order(l, n) if n > 1 else 1
        self.field = GF(l, m)
        self.lattice = [tuple(int(x) for x in v) for v in itertools.product(range(n), repeat=r)]
        self.lat_index = {v: i for i, v in enumerate(self.lattice)}
        self.nW = len(self.alg.W)
        self.dim = len(self.lattice) * self.nW

    def basis_index(self, lam, w) -> int:
        lam = tuple(int(x) % self.n for x in lam)
        return self.lat_index[lam] * self.nW + w

    def left_perm(self, lam, w) -> np.ndarray:
        """Permutation p with (λ, w) · b_j = b_{p[j]}."""
        alg = self.alg
        p = np.empty(self.dim, dtype=np.int64)
        for mu in self.lattice:
            wm = alg.act(w, mu)
            base = tuple(a + b for a, b in zip(lam, wm))
            for v in range(self.nW):
                p[self.basis_index(mu, v)] = self.basis_index(base, alg.W.mul(w, v))
        return p

    def matrix_of(self, combo) -> np.ndarray:
        """Left multiplication by Σ c (λ, w), combo = [(λ, w, c)], as a matrix on columns."""
        F = self.field
        A = np.zeros((self.dim, self.dim), dtype=np.int64)
        cols = np.arange(self.dim)
        for lam, w, c in combo:
            p = self.left_perm(lam, w)
            A[p, cols] = F.add(A[p, cols], np.full(self.dim, c, dtype=np.int64))
        return A


def character_orbit(model: DegenerateModel, chi) -> list[tuple]:
    """(wχ)(λ) = χ(w^{-1} λ) on the lattice basis, one tuple per w."""
    F = model.field
    alg = model.alg
    inv = alg.W.inverses
    out = []
    for w in range(model.nW):
        vals = []
        for i in range(model.rd.rank):
            b = [0] * model.rd.rank
            b[i] = 1
            lam = alg.act(inv[w], b)
            vals.append(_char_value(F, chi, lam))
        out.append(tuple(vals))
    return out


def _char_value(F: FiniteField, chi, lam) -> int:
    v = 1
    for c, e in zip(chi, lam):
        v = int(F.mul(v, F.pow(c, int(e) % (F.q - 1))))
    return v


def regular_character(rd: RootDatum, n: int, l: int):
    """Lexicographically first character of X/n with trivial W-stabilizer, or None."""
    model = DegenerateModel(rd, n, l)
    F = model.field
    mu_n = sorted({int(x) for x in F.pow(np.arange(1, F.q), (F.q - 1) // n)})
    for chi in itertools.product(mu_n, repeat=rd.rank):
        orbit = character_orbit(model, chi)
        if len(set(orbit)) == model.nW:
            return list(chi)
    return None


def _joint_kernel(mats, F, basis=None) -> np.ndarray:
    """Rows spanning the common kernel of the matrices (restricted to a row basis)."""
    K = None
    for A in mats:
        if K is None:
            K = linalg.nullspace(A, F) if basis is None else _restricted_kernel(A, basis, F)
        else:
            K = _restricted_kernel(A, K, F)
        if K.shape[0] == 0:
            break
    return K


def _restricted_kernel(A, basis, F) -> np.ndarray:
    # vectors v = c·basis with A v = 0
    img = linalg.matmul(A, basis.T, F)
    c = linalg.nullspace(img, F)
    if c.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return linalg.matmul(c, basis, F)


def projector_model(rd: RootDatum, n: int, l: int, chi=None) -> dict:
    """Localise the regular module at a regular W-orbit of characters and test [U] = Σ w."""
    W = weyl_group(rd)
    if len(W) % l == 0:
        raise PreconditionError(f"l = {l} divides |W| = {len(W)}")
    if n % l == 0:
        raise PreconditionError("n must be prime to l for X/n to have nontrivial characters")
    model = DegenerateModel(rd, n, l)
    F = model.field
    if chi is None:
        chi = regular_character(rd, n, l)
        if chi is None:
            raise PreconditionError("no character with trivial stabilizer")
    chi = [int(c) for c in chi]
    if any(int(F.pow(c, n)) != 1 for c in chi):
        raise UsageError("character values must be n-th roots of unity")
    orbit = character_orbit(model, chi)
    if len(set(orbit)) != model.nW:
        raise PreconditionError("character has nontrivial stabilizer in W")
    r = rd.rank
    ident = linalg.identity(model.dim)
    basis_vecs = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    e_mats = [model.matrix_of([(b, 0, 1)]) for b in basis_vecs]

    # localisation at the maximal ideal of the invariants: orbit sums m_λ act by m_λ(χ)
    reps = sorted({min(alg_orbit(model, lam)) for lam in model.lattice})
    inv_ops = []
    for lam in reps:
        orb = alg_orbit(model, lam)
        value = 0
        for mu in orb:
            value = int(F.add(value, _char_value(F, chi, mu)))
        M = model.matrix_of([(mu, 0, 1) for mu in orb])
        inv_ops.append(F.sub(M, F.mul(value, ident)))
    M_loc = _joint_kernel(inv_ops, F)

    pieces = []
    for psi in orbit:
        ops = [F.sub(E, F.mul(c, ident)) for E, c in zip(e_mats, psi)]
        pieces.append(_joint_kernel(ops, F, basis=M_loc))
    dims = [int(p.shape[0]) for p in pieces]
    stacked = np.concatenate(pieces, axis=0)
    direct = linalg.rank(stacked, F) == sum(dims) == M_loc.shape[0]

    U = model.matrix_of([((0,) * r, w, 1) for w in range(model.nW)])
    local = pieces[0]
    img_local = linalg.matmul(U, local.T, F).T
    img_all = linalg.matmul(U, M_loc.T, F).T
    rank_local = linalg.rank(img_local, F)
    rank_all = linalg.rank(img_all, F)
    same_image = linalg.rank(np.concatenate([img_local, img_all]), F) == rank_all
    injective = rank_local == local.shape[0]
    return {
        "type": rd.type_tag, "n": n, "l": l, "field": F.descriptor(), "character": chi,
        "module_dim": model.dim, "localized_dim": int(M_loc.shape[0]),
        "orbit_size": len(orbit), "piece_dims": dims, "decomposition": bool(direct),
        "rank_local": int(rank_local), "rank_image": int(rank_all),
        "isomorphism": bool(injective and same_image and rank_local == rank_all),
        "passed": bool(direct and injective and same_image),
    }


def alg_orbit(model: DegenerateModel, lam) -> list[tuple]:
    alg = model.alg
    return sorted({tuple(int(x) % model.n for x in alg.act(w, lam)) for w in range(model.nW)})
