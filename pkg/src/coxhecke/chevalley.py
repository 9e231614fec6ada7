"""Chevalley bases, adjoint automorphisms and type-A matrix-group models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg, polys
from .errors import PreconditionError, ResourceError, UnsupportedError, UsageError
from .fields import GF, FiniteField
from .rootdata import RootDatum, is_very_good
from .weyl import WeylElement, coxeter_number

# -- structure constants over Z ---------------------------------------------


class StructureConstants:
    """N[a, b] for root indices with [e_a, e_b] = N[a, b] e_{a+b}.

    Signs come from the extraspecial-pair algorithm: for each positive
    non-simple root ξ, the extraspecial pair (ε1, ε2) has ε1 the first
    positive root (in the datum's order) with ξ - ε1 positive, and
    N[ε1, ε2] = p + 1.
    """

    def __init__(self, rd: RootDatum):
        self.rd = rd
        n = len(rd.basis)
        C = rd.cartan
        L = rd.lengths
        self._gram2 = np.array([[L[a] * C[a, b] for b in range(n)] for a in range(n)])
        self.pos = rd.positive
        self._order = {k: i for i, k in enumerate(self.pos)}
        self._cache = {}
        self._extraspecial = {}
        for xi in self.pos:
            if rd.height(xi) < 2:
                continue
            for e1 in self.pos:
                j = self.add(xi, -1, e1)
                if j is not None and j in self._order:
                    self._extraspecial[xi] = (e1, j)
                    break

    # (a, b) as an exact rational
    def ip(self, a: int, b: int) -> Fraction:
        ca, cb = self.rd.coords[a], self.rd.coords[b]
        return Fraction(int(ca @ self._gram2 @ cb), 2)

    def norm(self, a: int) -> Fraction:
        return self.ip(a, a)

    def add(self, a: int, sign: int, b: int):
        """Index of root_a + sign * root_b, or None."""
        c = self.rd.coords[a] + sign * self.rd.coords[b]
        return self.rd.index_of_coords(c)

    def string_p(self, a: int, b: int) -> int:
        """Largest p with b - p a a root."""
        p = 0
        c = self.rd.coords[b]
        while self.rd.index_of_coords(c - (p + 1) * self.rd.coords[a]) is not None:
            p += 1
        return p

    def is_positive(self, a: int) -> bool:
        return a in self._order

    def neg(self, a: int) -> int:
        return self.rd.index_of_coords(-self.rd.coords[a])

    def __call__(self, a: int, b: int) -> int:
        key = (a, b)
        v = self._cache.get(key)
        if v is None:
            v = self._compute(a, b)
            self._cache[key] = v
        return v

    def _compute(self, a: int, b: int) -> int:
        s = self.add(a, 1, b)
        if s is None:
            return 0
        pa, pb = self.is_positive(a), self.is_positive(b)
        if pa and pb:
            if self._order[a] > self._order[b]:
                return -self(b, a)
            e1, e2 = self._extraspecial[s]
            if (a, b) == (e1, e2):
                return self.string_p(a, b) + 1
            n_ext = self(e1, e2)
            total = Fraction(0)
            x = self.add(b, -1, e1)
            if x is not None:
                total += Fraction(self(b, self.neg(e1)) * self(a, self.neg(e2))) / self.norm(x)
            y = self.add(a, -1, e1)
            if y is not None:
                total += Fraction(self(self.neg(e1), a) * self(b, self.neg(e2))) / self.norm(y)
            val = self.norm(s) / n_ext * total
            assert val.denominator == 1, "non-integral structure constant"
            return int(val)
        if not pa and not pb:
            return -self(self.neg(a), self.neg(b))
        if not pa and pb:
            return -self(b, a)
        # a > 0 > b
        if self.is_positive(s):
            # N_{a,b} = -(s,s)/(a,a) N_{-b,s}
            val = -self.norm(s) / self.norm(a) * self(self.neg(b), s)
        else:
            g = self.neg(s)
            val = self.norm(g) / self.norm(b) * self(g, a)
        assert val.denominator == 1
        return int(val)


@lru_cache(maxsize=None)
def _integral_structure(rd: RootDatum):
    """Dense integer bracket tensor c[x, y, :] = [b_x, b_y] over Z."""
    N = StructureConstants(rd)
    r = len(rd.basis)
    nr = rd.num_roots
    dim = r + nr
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    C = rd.cartan
    # coroot of each root in the simple-coroot basis
    L = np.array(rd.lengths)
    norms = np.array([rd.root_length(k) for k in range(nr)])
    co = rd.coords * L[None, :] // norms[:, None]
    pair = rd.coords @ C.T  # pair[k, i] = <root_k, α_i∨>
    for i in range(r):
        for k in range(nr):
            c[i, r + k, r + k] = pair[k, i]
            c[r + k, i, r + k] = -pair[k, i]
    for a in range(nr):
        for b in range(nr):
            s = N.add(a, 1, b)
            if s is not None:
                c[r + a, r + b, r + s] = N(a, b)
            elif np.all(rd.coords[a] == -rd.coords[b]):
                c[r + a, r + b, :r] = co[a]
    c.flags.writeable = False
    return N, c, co


def jacobi_holds(c: np.ndarray) -> bool:
    """[ad_x, ad_y] = ad_[x,y] for all basis pairs (exact, via float64 products of small integers)."""
    dim = c.shape[0]
    # ad[x][i, j] = coefficient of b_i in [b_x, b_j]
    ad = np.transpose(c, (0, 2, 1)).astype(np.float64)
    flat = ad.reshape(dim, dim * dim)
    for x in range(dim):
        left = np.matmul(ad[x][None], ad) - np.matmul(ad, ad[x][None])
        right = (c[x].astype(np.float64) @ flat).reshape(dim, dim, dim)
        if not np.array_equal(left, right):
            return False
    return True


@lru_cache(maxsize=None)
def _jacobi_cached(rd: RootDatum) -> bool:
    return jacobi_holds(_integral_structure(rd)[1])


@dataclass(eq=False)
class ChevalleyAlgebra:
    """ĝ over a finite field: basis h_0..h_{r-1}, then e_root for each root index."""

    rd: RootDatum
    field: FiniteField
    N: StructureConstants = field(repr=False)
    brackets: np.ndarray = field(repr=False)  # over Z
    coroot_coords: np.ndarray = field(repr=False)
    jacobi_checked: bool = False

    @property
    def dim(self) -> int:
        return self.brackets.shape[0]

    @property
    def r(self) -> int:
        return len(self.rd.basis)

    def e_index(self, root: int) -> int:
        return self.r + root

    @property
    def ad_integral(self) -> np.ndarray:
        """ad[x] over Z, acting on column coordinate vectors."""
        a = getattr(self, "_adz", None)
        if a is None:
            a = np.ascontiguousarray(np.transpose(self.brackets, (0, 2, 1)))
            self._adz = a
        return a

    @property
    def ad_matrices(self) -> np.ndarray:
        a = getattr(self, "_ad", None)
        if a is None:
            a = self.field.from_int(self.ad_integral)
            self._ad = a
        return a

    def bracket(self, x, y) -> np.ndarray:
        """[x, y] for coordinate vectors over the field."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        ad_x = self.ad_of(x)
        return linalg.matmul(ad_x, y, F)

    def ad_of(self, x) -> np.ndarray:
        F = self.field
        flat = self.ad_matrices.reshape(self.dim, -1)
        return linalg.matmul(np.asarray(x, dtype=np.int64)[None, :], flat, F).reshape(self.dim, self.dim)

    def max_structure_constant(self) -> int:
        return int(np.abs(self.brackets[self.r :, self.r :, self.r :]).max()) if self.rd.num_roots else 0

    def nilpotency_index(self, root: int) -> int:
        A = self.ad_integral[self.e_index(root)]
        P = A.copy()
        k = 1
        while np.any(P):
            P = P @ A
            k += 1
        return k


def chevalley_algebra(rd: RootDatum, l: int, m: int = 1, check_jacobi: bool | None = None) -> ChevalleyAlgebra:
    if not is_very_good(rd, l):
        raise PreconditionError(f"{l} is not a very good prime for {rd.type_tag}")
    F = GF(l, m)
    N, c, co = _integral_structure(rd)
    if check_jacobi is None:
        check_jacobi = c.shape[0] <= 133
    ok = _jacobi_cached(rd) if check_jacobi else False
    if check_jacobi and not ok:
        raise AssertionError("Jacobi identity fails for the computed structure constants")
    return ChevalleyAlgebra(rd=rd, field=F, N=N, brackets=c, coroot_coords=co, jacobi_checked=bool(check_jacobi))


# -- automorphisms ------------------------------------------------------------


@dataclass(eq=False)
class AlgebraAutomorphism:
    matrix: np.ndarray
    tag: str
    alg: ChevalleyAlgebra = field(repr=False)

    def __matmul__(self, other: "AlgebraAutomorphism") -> "AlgebraAutomorphism":
        return AlgebraAutomorphism(linalg.matmul(self.matrix, other.matrix, self.alg.field), "product", self.alg)

    def __eq__(self, other):
        return isinstance(other, AlgebraAutomorphism) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def power(self, e: int) -> "AlgebraAutomorphism":
        return AlgebraAutomorphism(linalg.matpow(self.matrix, e, self.alg.field), "product", self.alg)

    def order(self, bound: int = 10**6) -> int:
        return linalg.multiplicative_order(self.matrix, self.alg.field, bound)

    def fixed_space(self) -> np.ndarray:
        F = self.alg.field
        A = F.sub(self.matrix, linalg.identity(self.alg.dim))
        return linalg.nullspace(A, F)

    def preserves_bracket(self) -> bool:
        return preserves_bracket(self.alg, self.matrix)


def preserves_bracket(alg: ChevalleyAlgebra, g: np.ndarray) -> bool:
    """g [x, y] = [g x, g y] on all basis pairs, i.e. ad(g b_x) g = g ad(b_x)."""
    F = alg.field
    dim = alg.dim
    flat = alg.ad_matrices.reshape(dim, dim * dim)
    # ad(g b_x) for all x at once: rows of g^T combine the ad matrices
    ad_img = linalg.matmul(np.ascontiguousarray(g.T), flat, F).reshape(dim, dim, dim)
    for x in range(dim):
        if not np.array_equal(linalg.matmul(ad_img[x], g, F), linalg.matmul(g, alg.ad_matrices[x], F)):
            return False
    return True


def root_character_values(alg: ChevalleyAlgebra, point) -> np.ndarray:
    """α(point) for every root, point given by values on the basis of M."""
    F = alg.field
    point = [int(x) for x in point]
    if len(point) != alg.rd.rank:
        raise UsageError("torus point must have one value per lattice coordinate")
    if any(x % F.q == 0 for x in point):
        raise UsageError("torus point values must be units")
    vals = []
    for root in alg.rd.roots:
        v = 1
        for x, e in zip(point, root):
            v = F.mul(v, F.pow(x, int(e)))
        vals.append(v)
    return np.array(vals, dtype=np.int64)


def torus_adjoint(alg: ChevalleyAlgebra, point) -> AlgebraAutomorphism:
    vals = root_character_values(alg, point)
    diag = np.concatenate([np.ones(alg.r, dtype=np.int64), vals])
    return AlgebraAutomorphism(np.diag(diag), "torus point", alg)


def _exp_nilpotent_integral(A: np.ndarray) -> np.ndarray:
    """exp(A) over Z for a nilpotent integer matrix whose divided powers are integral."""
    n = A.shape[0]
    out = np.eye(n, dtype=np.int64)
    P = np.eye(n, dtype=np.int64)
    k = 0
    while True:
        k += 1
        P = P @ A
        if not np.any(P):
            break
        if np.any(P % math.factorial(k)):
            raise AssertionError("divided power not integral")
        out = out + P // math.factorial(k)
    return out


@lru_cache(maxsize=None)
def _simple_lift_integral(rd: RootDatum, i: int) -> np.ndarray:
    N, c, co = _integral_structure(rd)
    r = len(rd.basis)
    ad = np.transpose(c, (0, 2, 1))
    a = rd.basis[i]
    e = ad[r + a]
    f = ad[r + rd.negative_index(a)]
    ee = _exp_nilpotent_integral(e)
    ff = _exp_nilpotent_integral(-f)
    M = ee @ ff @ ee
    M.flags.writeable = False
    return M


def weyl_lift_adjoint(alg: ChevalleyAlgebra, w: WeylElement) -> AlgebraAutomorphism:
    """Compose exp(ad e)exp(ad(-f))exp(ad e) over the simple reflections of w.word."""
    h = coxeter_number(alg.rd)
    if alg.field.p <= h:
        raise PreconditionError(f"need l > h = {h} for the Weyl lift, got l = {alg.field.p}")
    F = alg.field
    g = linalg.identity(alg.dim)
    for i in w.word:
        g = linalg.matmul(g, F.from_int(_simple_lift_integral(alg.rd, int(i))), F)
    return AlgebraAutomorphism(g, "weyl lift", alg)


def maps_root_lines(alg: ChevalleyAlgebra, g: np.ndarray, w: WeylElement) -> bool:
    """g e_β is a multiple of e_{wβ} for every root β, and g|𝔱 is w on coroots."""
    rd = alg.rd
    r = alg.r
    imgs = rd.roots @ w.matrix.T
    for k, img in enumerate(imgs.tolist()):
        target = r + rd.index(img)
        col = g[:, r + k].copy()
        if col[target] == 0:
            return False
        col[target] = 0
        if np.any(col):
            return False
    # on 𝔱 (coroot coordinates) w acts through its coaction written in the simple-coroot basis
    co_simple = rd.coroots[list(rd.basis)]
    for i in range(r):
        img = co_simple[i] @ w.coaction().T
        coeffs = np.linalg.lstsq(co_simple.T.astype(float), img.astype(float), rcond=None)[0]
        coeffs = np.rint(coeffs).astype(np.int64)
        if not np.array_equal(alg.field.from_int(coeffs), g[:r, i]) or np.any(g[r:, i]):
            return False
    return True


def semisimple_by_order(g: AlgebraAutomorphism, group_order_hint: int) -> bool:
    return g.order(bound=max(group_order_hint, 1)) % g.alg.field.p != 0


def semisimple_by_minpoly(g: AlgebraAutomorphism) -> bool:
    """The radical of the characteristic polynomial kills g."""
    F = g.alg.field
    cp = linalg.charpoly(g.matrix, F)
    rad = [1]
    for f, _ in polys.factor(cp, F):
        rad = polys.mul(rad, f, F)
    return not np.any(linalg.poly_eval_matrix(rad, g.matrix, F))


def is_regular_semisimple(alg: ChevalleyAlgebra, g: AlgebraAutomorphism, group_order_hint: int) -> bool:
    """dim ker(g - 1) = rank, for g of order prime to l."""
    order = g.order(bound=max(group_order_hint, 1))
    if order % alg.field.p == 0:
        raise UnsupportedError("element order divisible by the characteristic")
    return g.fixed_space().shape[0] == alg.rd.rank


# -- type A matrix models -----------------------------------------------------


@dataclass(eq=False)
class SLGroup:
    """SL_n over GF(l^m) with the standard Coxeter lift."""

    n: int
    field: FiniteField

    @property
    def order(self) -> int:
        q = self.field.q
        out = q ** (self.n * (self.n - 1) // 2)
        for k in range(2, self.n + 1):
            out *= q**k - 1
        return out

    def simple_lift(self, i: int) -> np.ndarray:
        """exp(E)exp(-F)exp(E) in the (i, i+1) block: [[0, 1], [-1, 0]]."""
        F = self.field
        M = linalg.identity(self.n)
        M[i, i] = 0
        M[i + 1, i + 1] = 0
        M[i, i + 1] = 1
        M[i + 1, i] = F.neg(1)
        return M

    def weyl_lift(self, word) -> np.ndarray:
        g = linalg.identity(self.n)
        for i in word:
            g = linalg.matmul(g, self.simple_lift(int(i)), self.field)
        return g

    def coxeter_lift(self) -> np.ndarray:
        return self.weyl_lift(range(self.n - 1))

    def coxeter_lift_order(self) -> int:
        return linalg.multiplicative_order(self.coxeter_lift(), self.field)

    def is_scalar(self, g) -> bool:
        g = np.asarray(g)
        return np.array_equal(g, g[0, 0] * np.eye(self.n, dtype=np.int64)) if g[0, 0] else False

    def generators(self) -> list[np.ndarray]:
        """Transvections I + a E_{i,i±1} for a in a power basis of the field."""
        F = self.field
        scalars = [F.pow(F.generator, k) for k in range(F.m)] if F.m > 1 else [1]
        gens = []
        for i in range(self.n - 1):
            for a in scalars:
                for (x, y) in ((i, i + 1), (i + 1, i)):
                    M = linalg.identity(self.n)
                    M[x, y] = a
                    gens.append(M)
        return gens

    def enumerate(self, cap: int = 10**5):
        from .finitegrp import generate_group

        if self.order > cap:
            raise ResourceError(f"|SL_{self.n}(F_{self.field.q})| = {self.order} exceeds {cap}")
        return generate_group(self.generators(), self.field, cap=cap)


def sl_group(n: int, l: int, m: int = 1) -> SLGroup:
    if n < 2:
        raise UsageError("need n >= 2")
    return SLGroup(n, GF(l, m))


# -- type A identification of ĝ with sl_n ---------------------------------------


@lru_cache(maxsize=None)
def _type_a_embedding(rd: RootDatum):
    """Integer n x n matrices for each Chevalley basis vector of (A, n-1)."""
    if rd.series != "A" or len(rd.basis) != rd.type_rank:
        raise UnsupportedError("matrix identification only for type A")
    N, c, co = _integral_structure(rd)
    r = len(rd.basis)
    n = r + 1
    nr = rd.num_roots
    mats = [None] * (r + nr)

    def E(i, j):
        M = np.zeros((n, n), dtype=np.int64)
        M[i, j] = 1
        return M

    for i in range(r):
        mats[i] = E(i, i) - E(i + 1, i + 1)
        mats[r + rd.basis[i]] = E(i, i + 1)
        mats[r + rd.negative_index(rd.basis[i])] = E(i + 1, i)
    for sign in (1, -1):
        order = sorted((k for k in range(nr) if np.sign(rd.coords[k].sum()) == sign), key=rd.height)
        for k in order:
            if mats[r + k] is not None:
                continue
            for i in range(r):
                simple = rd.basis[i] if sign > 0 else rd.negative_index(rd.basis[i])
                rest = N.add(k, -1, simple)
                if rest is not None and mats[r + rest] is not None:
                    X, Y = mats[r + simple], mats[r + rest]
                    comm = X @ Y - Y @ X
                    nval = N(simple, rest)
                    mats[r + k] = comm // nval
                    break
    return np.array(mats)


def type_a_adjoint_matrix(alg: ChevalleyAlgebra, g: np.ndarray) -> np.ndarray:
    """Matrix of X -> g X g^-1 on sl_n in the Chevalley basis."""
    F = alg.field
    basis = _type_a_embedding(alg.rd)
    dim, n = basis.shape[0], basis.shape[1]
    B = F.from_int(basis.reshape(dim, n * n))
    ginv = linalg.inverse(g, F)
    cols = []
    for x in range(dim):
        X = F.from_int(basis[x])
        Y = linalg.matmul(linalg.matmul(g, X, F), ginv, F)
        sol = linalg.solve(B.T, Y.reshape(-1), F)
        if sol is None:
            raise AssertionError("image outside sl_n")
        cols.append(sol)
    return np.array(cols).T


def type_a_embedding_is_homomorphism(rd: RootDatum) -> bool:
    N, c, co = _integral_structure(rd)
    mats = _type_a_embedding(rd)
    dim = mats.shape[0]
    for x in range(dim):
        for y in range(dim):
            lhs = np.einsum("k,kij->ij", c[x, y], mats)
            rhs = mats[x] @ mats[y] - mats[y] @ mats[x]
            if not np.array_equal(lhs, rhs):
                return False
    return True
