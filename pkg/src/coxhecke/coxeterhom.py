"""Coxeter homomorphisms Z/t ⋊ Z/h -> Aut(ĝ) and the checks made on them."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .chevalley import (
    AlgebraAutomorphism,
    ChevalleyAlgebra,
    chevalley_algebra,
    sl_group,
    torus_adjoint,
    type_a_adjoint_matrix,
    weyl_lift_adjoint,
)
from .errors import ConstructionError, ResourceError, SearchExhaustedError, UnsupportedError, UsageError
from .fields import is_prime, multiplicative_order
from .finitegrp import (
    FiniteGroup,
    GroupModule,
    MatrixHom,
    char_coefficients,
    conjugating_elements,
    generate_group,
    h0,
    h1,
    natural_module,
    pgl_representatives,
    simple_submodules,
    trivial_module,
)
from .rootdata import RootDatum, is_very_good
from .weyl import (
    WeylElement,
    coxeter_element,
    coxeter_number,
    root_orbits,
    torsion_eigenspace,
    weyl_group,
    weyl_order_formula,
)


def coxeter_prime(rd: RootDatum, q: int, search_bound: int | None = None) -> int:
    """Smallest prime t not dividing |W| with q of exact order h modulo t.

    Any such t divides q^h - 1, so the default bound makes the search exhaustive.
    """
    h = coxeter_number(rd)
    bound = max(h * h, q**h - 1) if search_bound is None else search_bound
    if bound < h * h:
        raise UsageError(f"search bound must be at least h^2 = {h * h}")
    if q < 2:
        raise UsageError("q must be at least 2")
    order_w = weyl_order_formula(rd.series, rd.type_rank)
    for t in range(2, bound + 1):
        if not is_prime(t) or order_w % t == 0 or q % t == 0:
            continue
        if multiplicative_order(q, t) == h:
            return t
    raise SearchExhaustedError(f"no prime t <= {bound} with ord_t({q}) = {h}")


@dataclass(eq=False)
class CoxeterHomomorphism:
    rd: RootDatum
    w: WeylElement
    t: int
    q: int
    l: int
    m: int
    eigenvector: np.ndarray  # x in M∨ ⊗ F_t with w x = q x
    zeta: int  # primitive t-th root of unity in GF(l^m)
    alg: ChevalleyAlgebra = field(repr=False)
    torus_gen: AlgebraAutomorphism = field(repr=False)
    weyl_gen: AlgebraAutomorphism = field(repr=False)
    _group: FiniteGroup | None = field(default=None, repr=False)

    @property
    def h(self) -> int:
        return coxeter_number(self.rd)

    @property
    def field(self):
        return self.alg.field

    @property
    def point(self) -> list[int]:
        F = self.field
        return [F.pow(self.zeta, int(x)) for x in self.eigenvector]

    @property
    def group(self) -> FiniteGroup:
        """Image in Aut(ĝ), generated by the torus point then the Weyl lift."""
        if self._group is None:
            self._group = generate_group([self.torus_gen.matrix, self.weyl_gen.matrix], self.field)
        return self._group

    def module(self) -> GroupModule:
        return natural_module(self.group)

    def with_generators(self, torus=None, weyl=None) -> "CoxeterHomomorphism":
        """Copy with one generator replaced (for negative checks)."""
        return dataclasses.replace(
            self,
            torus_gen=self.torus_gen if torus is None else torus,
            weyl_gen=self.weyl_gen if weyl is None else weyl,
            _group=None,
        )

    def descriptor(self) -> dict:
        return {
            "type": self.rd.type_tag,
            "t": self.t,
            "q": self.q,
            "l": self.l,
            "m": self.m,
            "h": self.h,
            "field": self.field.descriptor(),
            "eigenvector": [int(x) for x in self.eigenvector],
            "zeta": int(self.zeta),
            "torus_point": [int(x) for x in self.point],
            "w_word": list(self.w.word),
        }


def build_coxeter_hom(rd: RootDatum, q: int, t: int, l: int, m: int | None = None) -> CoxeterHomomorphism:
    """Realise Z/t ⋊ Z/h on ĝ over GF(l^m), m = ord_t(l) unless given."""
    if rd.isogeny != "sc":
        raise UnsupportedError("Coxeter homomorphisms are built for simply connected data")
    h = coxeter_number(rd)
    order_w = weyl_order_formula(rd.series, rd.type_rank)

    def need(cond, name):
        if not cond:
            raise ConstructionError(f"condition failed: {name}")

    need(is_prime(t), "t prime")
    need(is_prime(l), "l prime")
    need(order_w % t != 0, "t does not divide |W|")
    need(t % h == 1, "t = 1 mod h")
    need(math.gcd(q, t) == 1 and multiplicative_order(q, t) == h, "q has exact order h mod t")
    need(l > 2 * h - 2, "l > 2h - 2")
    need((t * h) % l != 0, "l does not divide t*h")
    need(is_very_good(rd, l), "l very good")
    m_min = multiplicative_order(l, t)
    if m is None:
        m = m_min
    need(m % m_min == 0, "t divides l^m - 1")
    alg = chevalley_algebra(rd, l, m)
    w = coxeter_element(rd)
    E = torsion_eigenspace(rd, w, t, q)
    need(E.shape[0] == 1, "eigenspace is one-dimensional")
    x = E[0]
    F = alg.field
    zeta = F.root_of_unity(t)
    point = [F.pow(zeta, int(c)) for c in x]
    v = torus_adjoint(alg, point)
    ww = weyl_lift_adjoint(alg, w)
    phi = CoxeterHomomorphism(rd, w, t, q, l, m, x, zeta, alg, v, ww)
    need(v.fixed_space().shape[0] == rd.rank, "torus generator regular semisimple")
    return phi


# -- verification ----------------------------------------------------------------


def _root_permutation(alg: ChevalleyAlgebra, g: np.ndarray):
    """Permutation of roots induced by g if g is monomial on root lines and preserves 𝔱."""
    r = alg.r
    if np.any(g[r:, :r]) or np.any(g[:r, r:]):
        return None
    perm = []
    for k in range(alg.rd.num_roots):
        col = g[r:, r + k]
        nz = np.flatnonzero(col)
        if nz.size != 1:
            return None
        perm.append(int(nz[0]))
    return tuple(perm)


def verify_definition(phi: CoxeterHomomorphism) -> dict:
    """Normaliser condition: the image normalises T and maps onto <w> with w Coxeter.

    Torus condition: the image meets T in a group of order t on which w acts as
    the q-th power map.
    """
    rd, alg, F = phi.rd, phi.alg, phi.field
    G = phi.group
    W = weyl_group(rd)
    perms = W.root_permutations
    perm_index = {tuple(int(x) for x in p): i for i, p in enumerate(perms)}
    images = []
    normalises = True
    for g in range(len(G)):
        p = _root_permutation(alg, G.elements[g])
        if p is None or p not in perm_index:
            normalises = False
            images.append(None)
        else:
            images.append(perm_index[p])
    report = {"normalises_torus": normalises}
    if normalises:
        proj = sorted(set(images))
        cox = W.index_of(coxeter_element(rd))
        cls = W.conjugacy_class(cox)
        gen_candidates = [i for i in proj if W.element(i).order() == len(proj)]
        cyclic_coxeter = any(W.matrices[i].tobytes() in cls for i in gen_candidates)
        report["projection_order"] = len(proj)
        report["projection_cyclic_coxeter"] = bool(cyclic_coxeter)
        diag = [g for g in range(len(G)) if images[g] == 0]
    else:
        report["projection_order"] = None
        report["projection_cyclic_coxeter"] = False
        diag = []
    report["normaliser_condition"] = bool(normalises and report["projection_cyclic_coxeter"])
    report["torus_part_order"] = len(diag)
    # w-conjugation on the torus part is the q-power map (checked on a generator)
    q_power = False
    if len(diag) == phi.t:
        d = next((g for g in diag if g != 0), None)
        D = G.elements[d]
        Wg = phi.weyl_gen.matrix
        conj = linalg.matmul(linalg.matmul(Wg, D, F), linalg.inverse(Wg, F), F)
        q_power = bool(np.array_equal(conj, linalg.matpow(D, phi.q, F)))
    report["w_acts_by_q_power"] = q_power
    report["torus_condition"] = bool(len(diag) == phi.t and q_power)
    report["image_order"] = len(G)
    report["image_order_is_th"] = len(G) == phi.t * phi.h
    report["passed"] = bool(report["normaliser_condition"] and report["torus_condition"])
    return report


def _chop_dims(M: GroupModule, seed: int):
    return sorted(s["dim"] for s in simple_submodules(M, seed=seed))


def adjoint_decomposition(phi: CoxeterHomomorphism, seed: int = 0) -> list[dict]:
    """𝔱 plus one induced piece per w-orbit of roots, each checked and chopped."""
    G = phi.group
    F = phi.field
    if len(G) % F.p == 0:
        raise UnsupportedError("l divides the image order")
    M = phi.module()
    alg = phi.alg
    r, dim = alg.r, alg.dim
    pieces = []
    torus = np.zeros((r, dim), dtype=np.int64)
    torus[np.arange(r), np.arange(r)] = 1
    pieces.append(("torus", torus))
    for orb in root_orbits(phi.rd, phi.w):
        B = np.zeros((len(orb), dim), dtype=np.int64)
        for i, k in enumerate(sorted(orb)):
            B[i, r + k] = 1
        pieces.append(("induced", B))
    out = []
    for kind, B in pieces:
        stable = M.is_invariant(B)
        sub = M.restrict(B) if stable else None
        simple_dims = _chop_dims(sub, seed) if stable else None
        out.append({
            "kind": kind,
            "basis": B,
            "dim": int(B.shape[0]),
            "stable": bool(stable),
            "irreducible": bool(stable and simple_dims == [B.shape[0]]),
            "simple_dims": simple_dims,
        })
    return out


# -- type A group-level model -------------------------------------------------------


def type_a_group_generators(phi: CoxeterHomomorphism):
    """SL_n lifts: the torus point diag(ζ^{x_j - x_{j-1}}) and the signed Coxeter permutation."""
    if phi.rd.series != "A":
        raise UnsupportedError("group-level model only for type A")
    F = phi.field
    n = phi.rd.type_rank + 1
    x = [0] + [int(c) for c in phi.eigenvector] + [0]
    diag = [F.pow(phi.zeta, (x[j + 1] - x[j]) % phi.t) for j in range(n)]
    v = np.diag(np.array(diag, dtype=np.int64))
    w = sl_group(n, F.p, F.m).weyl_lift(phi.w.word)
    return v, w


def type_a_model_consistent(phi: CoxeterHomomorphism) -> bool:
    v, w = type_a_group_generators(phi)
    return bool(
        np.array_equal(type_a_adjoint_matrix(phi.alg, v), phi.torus_gen.matrix)
        and np.array_equal(type_a_adjoint_matrix(phi.alg, w), phi.weyl_gen.matrix)
    )


def _centralizer_in_sl(gamma: np.ndarray, F, cap: int = 10**5):
    """Brute-force centralizer of gamma in SL_n(F), or None when too large."""
    n = gamma.shape[0]
    try:
        reps = pgl_representatives(n, F, cap=cap)
    except ResourceError:
        return None
    # lift PGL representatives to GL, keep those commuting with gamma, then scale into SL
    idx = conjugating_elements([gamma], [gamma], F, reps)
    out = []
    for k in idx:
        g = reps[k]
        d = linalg.det(g, F)
        for c in range(1, F.q):
            if F.pow(c, n) == F.inv(d):
                out.append(linalg.scalar_mul(c, g, F))
    return out


def _commutes_only_with_polynomials(gamma: np.ndarray, F) -> bool:
    """The commutant of gamma in M_n(F) has dimension n (so it is F[gamma])."""
    n = gamma.shape[0]
    I = np.eye(n, dtype=np.int64)
    if F.m == 1:
        A = (np.kron(I, gamma.T) - np.kron(gamma, I)) % F.p
    else:
        A = np.zeros((n * n, n * n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    A[i * n + j, i * n + k] = F.add(A[i * n + j, i * n + k], gamma[k, j])
                    A[i * n + j, k * n + j] = F.sub(A[i * n + j, k * n + j], gamma[i, k])
    return n * n - linalg.rank(A, F) == n


def _group_level_centralizer_connected(phi, gamma_index: int):
    """Type A only: centralizer of a lift of γ in SL_n is abelian inside F[γ]."""
    if phi.rd.series != "A":
        return {"performed": False, "reason": "group-level check only in type A"}
    v, w = type_a_group_generators(phi)
    F = phi.field
    word = phi.group.word(gamma_index)
    gens = [v, w]
    gamma = linalg.identity(v.shape[0])
    for s in word:
        gamma = linalg.matmul(gamma, gens[s], F)
    regular = _commutes_only_with_polynomials(gamma, F)
    cent = _centralizer_in_sl(gamma, F)
    if cent is None:
        return {"performed": False, "commutant_is_polynomial": bool(regular),
                "reason": "SL_n(F) too large for brute force"}
    abelian = all(
        np.array_equal(linalg.matmul(a, b, F), linalg.matmul(b, a, F)) for a in cent for b in cent[:8]
    )
    return {
        "performed": True,
        "centralizer_order": len(cent),
        "abelian": bool(abelian),
        "commutant_is_polynomial": bool(regular),
        "connected": bool(abelian and regular),
    }


def abundance_report(phi: CoxeterHomomorphism, H: FiniteGroup | None = None, seed: int = 0) -> dict:
    """The four cohomology groups and a regular semisimple witness for each simple W ⊂ ĝ∨."""
    H = phi.group if H is None else H
    F = phi.field
    if len(H) % F.p == 0:
        raise UnsupportedError("l divides |H|")
    M = natural_module(H)
    Md = M.dual()
    report = {
        "group_order": len(H),
        "h0_adjoint": h0(M)[0],
        "h0_dual": h0(Md)[0],
        "h1_dual": h1(Md),
        "h1_trivial": h1(trivial_module(H)),
    }
    cohomology_ok = all(report[k] == 0 for k in ("h0_adjoint", "h0_dual", "h1_dual", "h1_trivial"))
    report["cohomology_vanishes"] = bool(cohomology_ok)
    report["maschke_consistent"] = report["h1_dual"] == 0 and report["h1_trivial"] == 0
    rank = phi.rd.rank
    ident = linalg.identity(M.dim)
    mats = M.matrices()
    dual_mats = Md.matrices()
    # regular semisimple elements of H and their centralizer data
    regular = []
    for g in range(len(H)):
        fixed = linalg.nullspace(F.sub(mats[g], ident), F).shape[0]
        if fixed == rank:
            regular.append(g)
    simples = simple_submodules(Md, seed=seed) if M.dim else []
    witnesses = []
    all_found = True
    for s in simples:
        B = s["basis"]
        found = None
        for g in regular:
            # fixed vectors of γ on W: restrict the single element's matrix
            imgs = linalg.matmul(dual_mats[g], B.T, F)
            A = np.array([linalg.solve(B.T, imgs[:, j], F) for j in range(B.shape[0])]).T
            if linalg.nullspace(F.sub(A, linalg.identity(B.shape[0])), F).shape[0] > 0:
                split = bool(np.array_equal(linalg.matpow(mats[g], F.q - 1, F), ident))
                found = {
                    "element": int(g),
                    "word": H.word(g) if H is phi.group else None,
                    "order": H.element_order(g),
                    "fixed_dim_on_adjoint": rank,
                    "split_torus": split,
                }
                if H is phi.group:
                    found["group_level"] = _group_level_centralizer_connected(phi, g)
                break
        if found is None:
            all_found = False
        witnesses.append({"dim": s["dim"], "witness": found})
    report["simple_dims"] = [s["dim"] for s in simples]
    report["witnesses"] = witnesses
    split_ok = all(w["witness"] is not None and w["witness"]["split_torus"] for w in witnesses)
    connected_ok = all(
        w["witness"] is not None
        and w["witness"].get("group_level", {}).get("connected", True) is not False
        for w in witnesses
    )
    report["witnesses_found"] = bool(all_found)
    report["split_tori"] = bool(split_ok)
    report["centralizers_connected"] = bool(connected_ok)
    report["seed"] = seed
    report["abundant"] = bool(cohomology_ok and all_found and split_ok and connected_ok)
    return report


def centralizer_report(phi: CoxeterHomomorphism, restrict_to_torus: bool = False) -> dict:
    """Fixed space of the image on ĝ, type-A brute-force centralizer, torus uniqueness."""
    F = phi.field
    gens = [phi.torus_gen.matrix] if restrict_to_torus else [phi.torus_gen.matrix, phi.weyl_gen.matrix]
    ident = linalg.identity(phi.alg.dim)
    fixed = linalg.nullspace(np.vstack([F.sub(g, ident) for g in gens]), F)
    out = {"fixed_dim": int(fixed.shape[0])}
    # the t-part fixes exactly 𝔱
    r = phi.alg.r
    tfix = phi.torus_gen.fixed_space()
    torus = np.zeros((r, phi.alg.dim), dtype=np.int64)
    torus[np.arange(r), np.arange(r)] = 1
    out["torus_unique"] = bool(tfix.shape[0] == r and linalg.rank(np.vstack([tfix, torus]), F) == r)
    if phi.rd.series == "A":
        v, w = type_a_group_generators(phi)
        group_gens = [v] if restrict_to_torus else [v, w]
        n = v.shape[0]
        from .pseudochar import _regular_diagonal, monomial_representatives

        try:
            reps = pgl_representatives(n, F)
            out["brute_force"] = "pgl"
        except ResourceError:
            # a regular diagonal v is centralised only inside the torus normaliser
            try:
                reps = monomial_representatives(n, F) if _regular_diagonal(v) else None
            except ResourceError:
                reps = None
            out["brute_force"] = "monomial" if reps is not None else "not performed"
        if reps is not None:
            # the adjoint group acts on SL_n by conjugation, so commuting is exact
            mask = conjugating_elements(group_gens, group_gens, F, reps)
            out["pgl_centralizer_order"] = int(mask.size)
    trivial = out["fixed_dim"] == 0 and out.get("pgl_centralizer_order", 1) == 1
    out["trivial"] = bool(trivial)
    return out


def centralizer_triviality(phi: CoxeterHomomorphism, restrict_to_torus: bool = False) -> bool:
    r = centralizer_report(phi, restrict_to_torus)
    return bool(r["trivial"] and r["torus_unique"])


def _coxeter_domain_hom(phi: CoxeterHomomorphism) -> MatrixHom:
    """The group-level Coxeter image in SL_n viewed as a homomorphism from itself."""
    v, w = type_a_group_generators(phi)
    D = generate_group([v, w], phi.field)
    return MatrixHom(D, [v, w], phi.field)


def fundamental_table(hom: MatrixHom) -> np.ndarray:
    """Traces of the fundamental representations on the image of every domain element."""
    return char_coefficients(hom.values(), hom.field)


def conjugacy_by_invariants(phi: MatrixHom, psi: MatrixHom, cap: int = 10**5) -> dict:
    """Compare fundamental-character tables, then search for a conjugator."""
    from .pseudochar import reconstruct_conjugator

    return reconstruct_conjugator(phi, psi, cap=cap)


def reduction_consistency(rd: RootDatum, q: int, t: int, l1: int, l2: int) -> dict:
    out = {}
    for l in (l1, l2):
        phi = build_coxeter_hom(rd, q, t, l)
        rep = verify_definition(phi)
        out[str(l)] = {"m": phi.m, "passed": rep["passed"], "image_order": rep["image_order"]}
    out["passed"] = all(v["passed"] for v in out.values())
    return out


def field_enlargement_comparison(rd: RootDatum, q: int, t: int, l: int, seed: int = 0) -> dict:
    """Rerun the checks with m replaced by 2m and record what changes."""
    rows = {}
    for label, factor in (("m", 1), ("2m", 2)):
        m0 = multiplicative_order(l, t)
        phi = build_coxeter_hom(rd, q, t, l, m=m0 * factor)
        dec = adjoint_decomposition(phi, seed=seed)
        rows[label] = {
            "m": phi.m,
            "definition": verify_definition(phi)["passed"],
            "piece_dims": sorted(d for p in dec for d in p["simple_dims"]),
            "induced_irreducible": all(p["irreducible"] for p in dec if p["kind"] == "induced"),
            "fixed_dim": centralizer_report(phi)["fixed_dim"],
        }
    rows["sensitive"] = {k for k in rows["m"] if k != "m" and rows["m"][k] != rows["2m"][k]}
    rows["sensitive"] = sorted(rows["sensitive"])
    return rows
