"""Finite matrix groups over finite fields, their modules, H^0, H^1 and module chopping."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg, polys
from .errors import PreconditionError, ResourceError, UnsupportedError, UsageError
from .fields import FiniteField

GROUP_CAP = 200_000
MODULE_DIM_CAP = 256


class FiniteGroup:
    """Breadth-first enumeration of the group generated by invertible matrices.

    Element 0 is the identity.  ``parent[g] = (x, s)`` records the spanning
    tree of the right Cayley graph: element g = x * gens[s].
    """

    def __init__(self, gens, F: FiniteField, cap: int = GROUP_CAP):
        gens = [linalg.as_field_matrix(g, F) for g in gens]
        if not gens:
            raise UsageError("need at least one generator")
        n = gens[0].shape[0]
        for g in gens:
            if g.shape != (n, n):
                raise UsageError("generators must be square matrices of one size")
            if linalg.det(g, F) == 0:
                raise UsageError("generators must be invertible")
        self.field = F
        self.n = n
        self.gens = gens
        ident = linalg.identity(n)
        elems = [ident]
        index = {ident.tobytes(): 0}
        parent = [None]
        frontier = [0]
        while frontier:
            stack = np.array([elems[i] for i in frontier])
            new = []
            for s, g in enumerate(gens):
                prods = linalg.batch_matmul(stack, g, F)
                for k, P in enumerate(prods):
                    key = P.tobytes()
                    if key not in index:
                        index[key] = len(elems)
                        elems.append(P)
                        parent.append((frontier[k], s))
                        new.append(index[key])
                        if len(elems) > cap:
                            raise ResourceError(f"group order exceeds the cap {cap}")
            frontier = new
        self.elements = np.array(elems)
        self.elements.flags.writeable = False
        self.parent = parent
        self._index = index
        self._right = None
        self._inv = None

    def __len__(self):
        return self.elements.shape[0]

    @property
    def order(self) -> int:
        return len(self)

    def index_of(self, g) -> int:
        return self._index[np.ascontiguousarray(g, dtype=np.int64).tobytes()]

    def contains(self, g) -> bool:
        return np.ascontiguousarray(g, dtype=np.int64).tobytes() in self._index

    @property
    def right(self) -> np.ndarray:
        """right[g, s] = index of g * gens[s] (the full Cayley graph)."""
        if self._right is None:
            R = np.empty((len(self), len(self.gens)), dtype=np.int64)
            for s, g in enumerate(self.gens):
                prods = linalg.batch_matmul(self.elements, g, self.field)
                R[:, s] = [self._index[P.tobytes()] for P in prods]
            self._right = R
        return self._right

    def mul(self, i: int, j: int) -> int:
        return self.index_of(linalg.matmul(self.elements[i], self.elements[j], self.field))

    @property
    def inverses(self) -> list[int]:
        if self._inv is None:
            inv = [0] * len(self)
            for i in range(len(self)):
                if inv[i]:
                    continue
                # walk powers until the identity
                x = self.elements[i]
                prev = linalg.identity(self.n)
                cur = x
                while not np.array_equal(cur, linalg.identity(self.n)):
                    prev = cur
                    cur = linalg.matmul(cur, x, self.field)
                inv[i] = self.index_of(prev)
            self._inv = inv
        return self._inv

    def element_order(self, i: int) -> int:
        return linalg.multiplicative_order(self.elements[i], self.field, bound=len(self))

    def word(self, i: int) -> list[int]:
        """Generator word for element i along the spanning tree."""
        out = []
        while self.parent[i] is not None:
            i, s = self.parent[i]
            out.append(s)
        return out[::-1]


def generate_group(gens, F: FiniteField, cap: int = GROUP_CAP) -> FiniteGroup:
    return FiniteGroup(gens, F, cap)


def special_linear_group(n: int, F: FiniteField) -> FiniteGroup:
    """SL_n over a prime field, generated by the elementary matrices I + E_{i,i+1}, I + E_{i+1,i}."""
    if F.m != 1:
        raise UnsupportedError("elementary generators only cover SL_n over prime fields")
    gens = []
    for i in range(n - 1):
        for a, b in ((i, i + 1), (i + 1, i)):
            g = np.eye(n, dtype=np.int64)
            g[a, b] = 1
            gens.append(g)
    return FiniteGroup(gens, F)


@dataclass(eq=False)
class GroupModule:
    """A linear action of a FiniteGroup on F^dim, given on generators (column vectors)."""

    group: FiniteGroup
    gen_matrices: list
    field: FiniteField = field(init=False)

    def __post_init__(self):
        self.field = self.group.field
        self.gen_matrices = [linalg.as_field_matrix(g, self.field) for g in self.gen_matrices]
        if len(self.gen_matrices) != len(self.group.gens):
            raise UsageError("one action matrix per group generator required")
        if self.gen_matrices and self.gen_matrices[0].shape[0] > MODULE_DIM_CAP:
            raise ResourceError(f"module dimension exceeds the cap {MODULE_DIM_CAP}")
        self._all = None

    @property
    def dim(self) -> int:
        return self.gen_matrices[0].shape[0]

    def matrices(self) -> np.ndarray:
        """ρ(g) for every element, built along the spanning tree."""
        if self._all is None:
            G, F = self.group, self.field
            out = np.empty((len(G), self.dim, self.dim), dtype=np.int64)
            out[0] = linalg.identity(self.dim)
            for g in range(1, len(G)):
                x, s = G.parent[g]
                out[g] = linalg.matmul(out[x], self.gen_matrices[s], F)
            self._all = out
        return self._all

    def is_homomorphism(self) -> bool:
        """ρ(g) ρ(s) = ρ(g s) on every edge of the Cayley graph."""
        R = self.group.right
        mats = self.matrices()
        for s, A in enumerate(self.gen_matrices):
            prods = linalg.batch_matmul(mats, A, self.field)
            if not np.array_equal(prods, mats[R[:, s]]):
                return False
        return True

    def dual(self) -> "GroupModule":
        """Contragredient: g acts by the inverse transpose."""
        F = self.field
        return GroupModule(self.group, [linalg.inverse(A, F).T.copy() for A in self.gen_matrices])

    def restrict(self, basis) -> "GroupModule":
        """Action on a G-stable subspace spanned by the rows of ``basis``."""
        F = self.field
        B = np.asarray(basis, dtype=np.int64)
        mats = []
        for A in self.gen_matrices:
            imgs = linalg.matmul(A, B.T, F)
            cols = []
            for j in range(B.shape[0]):
                x = linalg.solve(B.T, imgs[:, j], F)
                if x is None:
                    raise UsageError("subspace is not invariant")
                cols.append(x)
            mats.append(np.array(cols).T)
        return GroupModule(self.group, mats)

    def is_invariant(self, basis) -> bool:
        B = np.asarray(basis, dtype=np.int64)
        if B.shape[0] == 0:
            return True
        r = linalg.rank(B, self.field)
        for A in self.gen_matrices:
            imgs = linalg.matmul(A, B.T, self.field).T
            if linalg.rank(np.vstack([B, imgs]), self.field) != r:
                return False
        return True


def natural_module(G: FiniteGroup) -> GroupModule:
    return GroupModule(G, [g.copy() for g in G.gens])


def trivial_module(G: FiniteGroup, dim: int = 1) -> GroupModule:
    return GroupModule(G, [linalg.identity(dim) for _ in G.gens])


def sl_basis(n: int) -> np.ndarray:
    """Basis of trace-zero n x n matrices: off-diagonal units, then E_ii - E_{i+1,i+1}."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                M = np.zeros((n, n), dtype=np.int64)
                M[i, j] = 1
                out.append(M)
    for i in range(n - 1):
        M = np.zeros((n, n), dtype=np.int64)
        M[i, i] = 1
        M[i + 1, i + 1] = -1
        out.append(M)
    return np.array(out)


def conjugation_module(G: FiniteGroup) -> GroupModule:
    """X -> g X g^-1 on trace-zero matrices."""
    F = G.field
    basis = sl_basis(G.n)
    dim = basis.shape[0]
    B = F.from_int(basis.reshape(dim, -1))
    mats = []
    for g in G.gens:
        ginv = linalg.inverse(g, F)
        cols = []
        for X in basis:
            Y = linalg.matmul(linalg.matmul(g, F.from_int(X), F), ginv, F)
            cols.append(linalg.solve(B.T, Y.reshape(-1), F))
        mats.append(np.array(cols).T)
    return GroupModule(G, mats)


# -- cohomology ------------------------------------------------------------------


def h0(M: GroupModule):
    """Fixed vectors: simultaneous kernel of ρ(s) - 1 over the generators."""
    F = M.field
    I = linalg.identity(M.dim)
    A = np.vstack([F.sub(g, I) for g in M.gen_matrices])
    B = linalg.nullspace(A, F)
    return B.shape[0], B


class _RowAccumulator:
    """Keeps the row space of a growing set of linear constraints reduced."""

    def __init__(self, ncols: int, F: FiniteField):
        self.F = F
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pending = []
        self.npending = 0
        self.ncols = ncols

    def add(self, rows):
        rows = np.asarray(rows, dtype=np.int64)
        rows = rows[np.any(rows, axis=1)]
        if rows.shape[0]:
            self.pending.append(rows)
            self.npending += rows.shape[0]
            if self.npending >= max(self.ncols, 64):
                self.flush()

    def flush(self):
        if self.pending:
            self.rows = linalg.row_space(np.vstack([self.rows] + self.pending), self.F)
            self.pending = []
            self.npending = 0

    def rank(self) -> int:
        self.flush()
        return self.rows.shape[0]


def cocycle_space_dim(M: GroupModule) -> int:
    """dim Z^1 by propagating along the Cayley spanning tree.

    A cocycle is fixed by its values u_s on the generators; along a tree edge
    f(x s) = f(x) + ρ(x) u_s, and every non-tree edge adds the constraint
    that this recursion agrees with the value already assigned.
    """
    G, F = M.group, M.field
    d, k = M.dim, len(G.gens)
    mats = M.matrices()
    R = G.right
    L = np.zeros((len(G), d, d * k), dtype=np.int64)
    done = np.zeros(len(G), dtype=bool)
    done[0] = True
    for g in range(1, len(G)):
        x, s = G.parent[g]
        L[g] = L[x]
        L[g][:, s * d : (s + 1) * d] = F.add(L[g][:, s * d : (s + 1) * d], mats[x])
        done[g] = True
    acc = _RowAccumulator(d * k, F)
    for s in range(k):
        # predicted L at x s minus stored L at x s, for all x at once
        pred = L.copy()
        pred[:, :, s * d : (s + 1) * d] = F.add(pred[:, :, s * d : (s + 1) * d], mats)
        diff = F.sub(pred, L[R[:, s]])
        acc.add(diff.reshape(-1, d * k))
    return d * k - acc.rank()


def h1(M: GroupModule) -> int:
    """dim H^1 = dim Z^1 - dim B^1, with dim B^1 = dim M - dim M^G."""
    return cocycle_space_dim(M) - (M.dim - h0(M)[0])


def h1_naive(M: GroupModule, max_order: int = 200) -> int:
    """Independent oracle: unknowns f(g) for all g, constraints for all pairs."""
    G, F = M.group, M.field
    if len(G) > max_order:
        raise ResourceError(f"naive H^1 limited to groups of order <= {max_order}")
    n, d = len(G), M.dim
    mats = M.matrices()
    acc = _RowAccumulator(n * d, F)
    I = linalg.identity(d)
    for g in range(n):
        for h in range(n):
            gh = G.mul(g, h)
            # f(gh) - f(g) - ρ(g) f(h) = 0
            rows = np.zeros((d, n * d), dtype=np.int64)
            rows[:, gh * d : (gh + 1) * d] = I
            rows[:, g * d : (g + 1) * d] = F.sub(rows[:, g * d : (g + 1) * d], I)
            rows[:, h * d : (h + 1) * d] = F.sub(rows[:, h * d : (h + 1) * d], mats[g])
            acc.add(rows)
    z1 = n * d - acc.rank()
    # coboundaries m -> (g -> g m - m)
    B = np.vstack([F.sub(mats[g], I) for g in range(n)])
    b1 = linalg.rank(B, F)
    return z1 - b1


# -- chopping ----------------------------------------------------------------------


def spin(M: GroupModule, v) -> np.ndarray:
    """Basis (echelon rows) of the submodule generated by v."""
    F = M.field
    basis = linalg.row_space(np.atleast_2d(v), F)
    frontier = basis
    while frontier.shape[0]:
        imgs = np.vstack([linalg.matmul(A, frontier.T, F).T for A in M.gen_matrices])
        new = linalg.row_space(np.vstack([basis, imgs]), F)
        if new.shape[0] == basis.shape[0]:
            break
        frontier = new
        basis = new
    return basis


def _transpose_module(M: GroupModule) -> GroupModule:
    return GroupModule(M.group, [A.T.copy() for A in M.gen_matrices])


def _random_algebra_element(M: GroupModule, rng: random.Random) -> np.ndarray:
    F = M.field
    mats = M.matrices()
    theta = np.zeros((M.dim, M.dim), dtype=np.int64)
    for _ in range(min(len(mats), 6)):
        g = rng.randrange(len(mats))
        c = rng.randrange(1, F.q)
        theta = F.add(theta, F.mul(c, mats[g]))
    return theta


def find_proper_submodule(M: GroupModule, rng: random.Random, attempts: int = 60):
    """A proper nonzero submodule basis, or None when M is irreducible (Norton's test)."""
    F = M.field
    d = M.dim
    if d <= 1:
        return None
    MT = _transpose_module(M)
    for _ in range(attempts):
        theta = _random_algebra_element(M, rng)
        cp = linalg.charpoly(theta, F)
        for f, _mult in polys.factor(cp, F, seed=rng.randrange(1 << 30)):
            K = linalg.nullspace(linalg.poly_eval_matrix(f, theta, F), F)
            if K.shape[0] == 0:
                continue
            S = spin(M, K[0])
            if 0 < S.shape[0] < d:
                return S
            if K.shape[0] != len(f) - 1:
                continue
            # kernel has the minimal possible dimension: the test is decisive
            KT = linalg.nullspace(linalg.poly_eval_matrix(f, theta.T, F), F)
            ST = spin(MT, KT[0])
            if ST.shape[0] < d:
                # annihilator of a proper submodule of the dual
                return linalg.nullspace(ST, F)
            return None
    raise AssertionError("chopping failed to decide irreducibility")


def _complement(M: GroupModule, U: np.ndarray) -> np.ndarray:
    """G-stable complement by averaging a projection (needs |G| invertible)."""
    F = M.field
    d = M.dim
    k = U.shape[0]
    # extend U to a basis of F^d
    R, pivots = linalg.rref(U, F)
    extra = [c for c in range(d) if c not in pivots]
    E = np.zeros((len(extra), d), dtype=np.int64)
    for i, c in enumerate(extra):
        E[i, c] = 1
    basis = np.vstack([U, E])  # rows
    Binv = linalg.inverse(basis.T, F)
    Pdiag = np.zeros((d, d), dtype=np.int64)
    Pdiag[np.arange(k), np.arange(k)] = 1
    P = linalg.matmul(linalg.matmul(basis.T, Pdiag, F), Binv, F)
    mats = M.matrices()
    inv = M.group.inverses
    avg = np.zeros((d, d), dtype=np.int64)
    for g in range(len(mats)):
        term = linalg.matmul(linalg.matmul(mats[g], P, F), mats[inv[g]], F)
        avg = F.add(avg, term)
    avg = F.mul(F.inv(F.from_int(len(mats))), avg)
    return linalg.nullspace(avg, F)


def _chop(M: GroupModule, rng: random.Random):
    U = find_proper_submodule(M, rng)
    if U is None:
        return [linalg.identity(M.dim)]
    C = _complement(M, U)
    out = []
    for part in (U, C):
        sub = M.restrict(part)
        for piece in _chop(sub, rng):
            out.append(linalg.matmul(piece, part, M.field))
    return out


def hom_dimension(A: GroupModule, B: GroupModule) -> int:
    """dim Hom_G(A, B): X with X ρ_A(s) = ρ_B(s) X for all generators."""
    F = A.field
    a, b = A.dim, B.dim
    rows = []
    # unknown X is b x a, flattened row-major
    for RA, RB in zip(A.gen_matrices, B.gen_matrices):
        # (X RA)_{ij} = sum_k X_ik RA_kj ; (RB X)_{ij} = sum_k RB_ik X_kj
        if F.m == 1:
            T = np.kron(np.eye(b, dtype=np.int64), RA.T)
            S = np.kron(RB, np.eye(a, dtype=np.int64))
            rows.append((T - S) % F.p)
        else:
            T = np.zeros((a * b, a * b), dtype=np.int64)
            for i in range(b):
                for j in range(a):
                    for k in range(a):
                        T[i * a + j, i * a + k] = F.add(T[i * a + j, i * a + k], RA[k, j])
                    for k in range(b):
                        T[i * a + j, k * a + j] = F.sub(T[i * a + j, k * a + j], RB[i, k])
            rows.append(T)
    return a * b - linalg.rank(np.vstack(rows), F)


def simple_submodules(M: GroupModule, seed: int = 0):
    """Decompose a semisimple module into simple submodules.

    Returns a list of dicts with the basis (rows, ambient coordinates), its
    dimension and an isotype label shared by isomorphic pieces.
    """
    F = M.field
    if len(M.group) % F.p == 0:
        raise UnsupportedError("modular case: |G| divisible by the characteristic")
    rng = random.Random(seed)
    pieces = _chop(M, rng)
    pieces.sort(key=lambda B: (B.shape[0], B.tolist()))
    mods = [M.restrict(B) for B in pieces]
    labels = []
    reps = []
    for k, S in enumerate(mods):
        label = None
        for j, (lab, T) in enumerate(reps):
            if T.dim == S.dim and hom_dimension(S, T) > 0:
                label = lab
                break
        if label is None:
            label = len(reps)
            reps.append((label, S))
        labels.append(label)
    return [{"basis": B, "dim": int(B.shape[0]), "isotype": lab} for B, lab in zip(pieces, labels)]


def cohomology_report(M: GroupModule, seed: int = 0) -> dict:
    """H^0, H^1 and the simple constituents (None in the modular case)."""
    try:
        simples = sorted(s["dim"] for s in simple_submodules(M, seed=seed))
    except UnsupportedError:
        simples = None
    return {
        "group_order": len(M.group),
        "module_dim": M.dim,
        "h0": h0(M)[0],
        "h1": h1(M),
        "simples": simples,
        "seed": seed,
    }


def is_irreducible(M: GroupModule, seed: int = 0) -> bool:
    return find_proper_submodule(M, random.Random(seed)) is None


def isotypic_components(M: GroupModule, simples) -> dict:
    """Sum of the simple pieces of each isotype (rows in ambient coordinates)."""
    F = M.field
    out = {}
    for s in simples:
        out.setdefault(s["isotype"], []).append(s["basis"])
    return {k: linalg.row_space(np.vstack(v), F) for k, v in out.items()}


# -- unipotent lifts ----------------------------------------------------------------------


def _matpow_mod(A: np.ndarray, e: int, mod: int) -> np.ndarray:
    n = A.shape[0]
    R = np.eye(n, dtype=np.int64)
    A = A % mod
    while e:
        if e & 1:
            R = R @ A % mod
        A = A @ A % mod
        e >>= 1
    return R


def unipotent_lift_order(n: int, l: int, trials: int = 100, seed: int = 0, u=None) -> dict:
    """Check that no lift of γ = I + u to GL_n(Z/l^2) has order l.

    For each tested v, (I + ũ + l v)^l is compared with (I + ũ)^l and with I.
    """
    if l <= 2 * n:
        raise PreconditionError(f"need l > 2n, got l = {l}, n = {n}")
    if u is None:
        u = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            u[i, i + 1] = 1
    u = np.asarray(u, dtype=np.int64) % l
    if np.any(np.tril(u)):
        raise UsageError("u must be strictly upper triangular")
    mod = l * l
    I = np.eye(n, dtype=np.int64)
    gamma = (I + u) % l
    report = {"n": n, "l": l, "trials": trials, "seed": seed, "gamma": gamma.tolist()}
    if not np.any(u):
        report.update(status="skipped", passed=True, reason="gamma is not of exact order l")
        return report
    base = _matpow_mod(I + u, l, mod)
    rng = np.random.default_rng(seed)
    witnesses = []
    ok = not np.array_equal(base, I)
    vs = [np.zeros((n, n), dtype=np.int64)] + [rng.integers(0, l, size=(n, n)) for _ in range(trials)]
    for v in vs:
        P = _matpow_mod(I + u + l * v, l, mod)
        good = np.array_equal(P, base) and not np.array_equal(P, I)
        if not good:
            ok = False
            witnesses.append({"v": v.tolist(), "power": P.tolist()})
    report.update(
        status="checked",
        passed=bool(ok),
        lift_power=base.tolist(),
        tested=len(vs),
        counterexamples=witnesses,
    )
    return report


# -- homomorphisms into matrix groups -------------------------------------------------


class MatrixHom:
    """A homomorphism from an enumerated group, given by generator images."""

    def __init__(self, domain: FiniteGroup, images, F: FiniteField):
        self.domain = domain
        self.field = F
        self.images = [linalg.as_field_matrix(x, F) for x in images]
        if len(self.images) != len(domain.gens):
            raise UsageError("one image per domain generator required")
        self._values = None

    @property
    def n(self) -> int:
        return self.images[0].shape[0]

    def values(self) -> np.ndarray:
        """Image of every domain element, propagated along the spanning tree."""
        if self._values is None:
            G, F = self.domain, self.field
            out = np.empty((len(G), self.n, self.n), dtype=np.int64)
            out[0] = linalg.identity(self.n)
            for g in range(1, len(G)):
                x, s = G.parent[g]
                out[g] = linalg.matmul(out[x], self.images[s], F)
            self._values = out
        return self._values

    def is_homomorphism(self) -> bool:
        vals = self.values()
        R = self.domain.right
        for s, A in enumerate(self.images):
            if not np.array_equal(linalg.batch_matmul(vals, A, self.field), vals[R[:, s]]):
                return False
        return True

    def conjugate(self, g) -> "MatrixHom":
        F = self.field
        ginv = linalg.inverse(g, F)
        return MatrixHom(self.domain, [linalg.matmul(linalg.matmul(g, x, F), ginv, F) for x in self.images], F)

    def image_group(self) -> FiniteGroup:
        return generate_group(self.images, self.field)


def char_coefficients(mats, F: FiniteField) -> np.ndarray:
    """Coefficients e_1..e_{n-1} of the characteristic polynomial of each matrix.

    These are the traces of the fundamental representations.
    """
    mats = np.asarray(mats, dtype=np.int64)
    n = mats.shape[-1]
    if n == 2:
        return F.add(mats[:, 0, 0], mats[:, 1, 1])[:, None]
    out = np.empty((mats.shape[0], n - 1), dtype=np.int64)
    for k, A in enumerate(mats):
        cp = linalg.charpoly(A, F)  # x^n - e1 x^{n-1} + e2 ...
        for j in range(1, n):
            c = cp[n - j]
            out[k, j - 1] = c if j % 2 == 0 else F.neg(c)
    return out


def pgl_representatives(n: int, F: FiniteField, cap: int = 10**5) -> np.ndarray:
    """One matrix per element of PGL_n(F): invertible, first nonzero entry 1."""
    q = F.q
    count = q ** (n * (n - 1) // 2)
    for k in range(1, n + 1):
        count *= q**k - 1
    count //= q - 1
    if count > cap:
        raise ResourceError(f"|PGL_{n}(F_{q})| = {count} exceeds {cap}")
    grids = np.array(np.meshgrid(*[np.arange(q)] * (n * n), indexing="ij")).reshape(n * n, -1).T
    first = np.argmax(grids != 0, axis=1)
    lead = grids[np.arange(grids.shape[0]), first]
    grids = grids[lead == 1]
    mats = grids.reshape(-1, n, n)
    if n == 2:
        d = F.sub(F.mul(mats[:, 0, 0], mats[:, 1, 1]), F.mul(mats[:, 0, 1], mats[:, 1, 0]))
    else:
        d = np.array([linalg.det(M, F) for M in mats])
    mats = mats[d != 0]
    assert mats.shape[0] == count
    return np.ascontiguousarray(mats)


def conjugating_elements(A_list, B_list, F: FiniteField, candidates: np.ndarray) -> np.ndarray:
    """Indices k with candidates[k] A candidates[k]^-1 = B for every pair (A, B)."""
    mask = np.ones(candidates.shape[0], dtype=bool)
    for A, B in zip(A_list, B_list):
        left = linalg.batch_matmul(candidates, A, F)
        right = linalg.batch_matmul(B, candidates, F)
        mask &= np.all(left == right, axis=(1, 2))
    return np.flatnonzero(mask)
