"""Acceptance checks, grouped into suites.

Each check returns {name, pass, details, witnesses}; suites run their checks
in name order so reports are canonical.
"""
from __future__ import annotations

import json
import time

import numpy as np

from . import charring, coxeterhom, finitegrp, hecke, linalg, pseudochar
from .errors import CoxHeckeError
from .fields import GF, is_prime
from .rootdata import build_root_datum, cartan_matrix, is_very_good
from .weyl import (
    all_coxeter_orderings_conjugate,
    coxeter_element,
    coxeter_lattice_data,
    powers,
    root_orbits,
    scaling_stabilizer,
    torsion_eigenspace,
    weyl_group,
    weyl_order_formula,
)

STRUCTURE_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"]
TABLE_TYPES = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(3, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


def jsonable(x):
    """Recursively convert numpy and tuple values to plain JSON types."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, int):
        return str(x)
    return x


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _check(name, passed, details, witnesses=None) -> dict:
    return {"name": name, "pass": bool(passed), "details": details, "witnesses": witnesses or []}


# -- 1-4: lattices and Weyl groups ---------------------------------------------------


def c01_coxeter_structure(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for tag in STRUCTURE_TYPES:
        rd = build_root_datum(tag)
        W = weyl_group(rd)
        w = coxeter_element(rd)
        h = w.order()
        orbits = root_orbits(rd, w)
        free = all(len(o) == h for o in orbits)
        conj = all_coxeter_orderings_conjugate(rd, W) if len(W) <= 51840 else None
        row = {
            "weyl_order": len(W),
            "weyl_order_formula": weyl_order_formula(rd.series, rd.type_rank),
            "h": h,
            "num_roots": rd.num_roots,
            "rank": rd.rank,
            "orbits": len(orbits),
            "free": free,
            "orderings_conjugate": conj,
        }
        row["pass"] = bool(
            row["weyl_order"] == row["weyl_order_formula"]
            and rd.num_roots == rd.rank * h
            and free
            and len(orbits) == rd.rank
            and conj is not False
        )
        ok &= row["pass"]
        rows[tag] = row
    return _check("c01_coxeter_structure", ok, rows)


def c02_coxeter_cokernel(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for tag in STRUCTURE_TYPES:
        rd = build_root_datum(tag)
        data = coxeter_lattice_data(rd, coxeter_element(rd))
        det_c = linalg.int_det(cartan_matrix(rd.series, rd.type_rank))
        row = {"cokernel_order": data["cokernel_order"], "invariant_factors": data["invariant_factors"],
               "det_cartan": det_c}
        row["pass"] = data["cokernel_order"] == det_c
        ok &= row["pass"]
        rows[tag] = row
    return _check("c02_coxeter_cokernel", ok, rows)


def c03_eigenspace(seed: int = 0) -> dict:
    rows = {}
    ok = True
    witnesses = []
    for tag, t, q in (("A1", 3, 2), ("A2", 7, 2), ("G2", 7, 3)):
        rd = build_root_datum(tag)
        W = weyl_group(rd)
        w = coxeter_element(rd)
        E = torsion_eigenspace(rd, w, t, q)
        row = {"t": t, "q": q, "eigenspace_dim": int(E.shape[0])}
        if E.shape[0] == 1:
            stab = sorted(scaling_stabilizer(rd, E[0], t, W))
            cyc = sorted(W.index_of(p) for p in powers(w))
            row["stabilizer_order"] = len(stab)
            row["stabilizer_is_cyclic_span"] = stab == cyc
            witnesses.append({"type": tag, "eigenvector": E[0].tolist()})
        row["pass"] = bool(E.shape[0] == 1 and row.get("stabilizer_is_cyclic_span"))
        ok &= row["pass"]
        rows[tag] = row
    return _check("c03_eigenspace", ok, rows, witnesses)


def _bad_primes_table(series: str, n: int, l: int) -> bool:
    """Very good characteristic, as tabulated by type."""
    if series == "A":
        return (n + 1) % l != 0
    if l == 2:
        return False
    if series in "EFG" and l == 3:
        return False
    if series == "E" and n == 8 and l == 5:
        return False
    return True


def c04_very_good_table(seed: int = 0) -> dict:
    primes = [p for p in range(2, 32) if is_prime(p)]
    rows = {}
    ok = True
    mismatches = []
    for tag in TABLE_TYPES:
        rd = build_root_datum(tag)
        good = [p for p in primes if is_very_good(rd, p)]
        expected = [p for p in primes if _bad_primes_table(rd.series, rd.type_rank, p)]
        # primes prime to |W| are always very good
        order = weyl_order_formula(rd.series, rd.type_rank)
        coprime_ok = all(p in good for p in primes if order % p)
        row_ok = good == expected and coprime_ok
        if not row_ok:
            mismatches.append({"type": tag, "computed": good, "expected": expected})
        ok &= row_ok
        rows[tag] = [p for p in primes if p not in good]
    return _check("c04_very_good_table", ok, {"bad_primes_up_to_31": rows}, mismatches)


# -- 5-6: Coxeter homomorphisms --------------------------------------------------------


def _coxeter_setups():
    return [("A1", 2, 3, 13), ("A2", 2, 7, 29)]


def c05_adjoint_decomposition(seed: int = 0) -> dict:
    rows = {}
    ok = True
    expected = {"A1": [[1, 2]], "A2": [[2, 3, 3], [1, 1, 3, 3]]}
    for tag, q, t, l in _coxeter_setups():
        rd = build_root_datum(tag)
        phi = coxeterhom.build_coxeter_hom(rd, q, t, l)
        dec = coxeterhom.adjoint_decomposition(phi, seed=seed)
        piece_dims = sorted(p["dim"] for p in dec)
        simple_dims = sorted(d for p in dec for d in (p["simple_dims"] or []))
        induced_irr = all(p["irreducible"] for p in dec if p["kind"] == "induced")
        row = {"l": l, "m": phi.m, "piece_dims": piece_dims, "simple_dims": simple_dims,
               "induced_irreducible": induced_irr, "all_stable": all(p["stable"] for p in dec)}
        row["pass"] = bool(piece_dims in expected[tag] and induced_irr and row["all_stable"])
        ok &= row["pass"]
        rows[tag] = row
    # with ζ_3 adjoined the A2 torus piece splits
    rd = build_root_datum("A2")
    phi = coxeterhom.build_coxeter_hom(rd, 2, 7, 29, m=2)
    dec = coxeterhom.adjoint_decomposition(phi, seed=seed)
    split = sorted(d for p in dec for d in (p["simple_dims"] or []))
    rows["A2_over_F29^2"] = {"simple_dims": split, "pass": split in expected["A2"]}
    ok &= rows["A2_over_F29^2"]["pass"]
    return _check("c05_adjoint_decomposition", ok, rows)


def c06_abundance(seed: int = 0) -> dict:
    rd = build_root_datum("A1")
    phi = coxeterhom.build_coxeter_hom(rd, 2, 3, 13)
    rep = coxeterhom.abundance_report(phi, seed=seed)
    witnesses = rep.pop("witnesses")
    return _check("c06_abundance", rep["abundant"], rep, witnesses)


def coxeter_definition(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for tag, q, t, l in _coxeter_setups():
        phi = coxeterhom.build_coxeter_hom(build_root_datum(tag), q, t, l)
        rep = coxeterhom.verify_definition(phi)
        rep["descriptor"] = phi.descriptor()
        rows[tag] = rep
        ok &= rep["passed"]
    return _check("coxeter_definition", ok, rows)


def coxeter_centralizer(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for tag, q, t, l in _coxeter_setups():
        phi = coxeterhom.build_coxeter_hom(build_root_datum(tag), q, t, l)
        rep = coxeterhom.centralizer_report(phi)
        rows[tag] = rep
        ok &= rep["trivial"] and rep["torus_unique"]
    return _check("coxeter_centralizer", ok, rows)


def coxeter_conjugacy(seed: int = 0) -> dict:
    """Conjugate Coxeter homs share tables; a torus twist by a non-power of q separates."""
    rd = build_root_datum("A2")
    phi = coxeterhom.build_coxeter_hom(rd, 2, 7, 29)
    base = coxeterhom._coxeter_domain_hom(phi)
    same = coxeterhom.conjugacy_by_invariants(base, pseudochar.twist_torus_part(base, 2))
    other = coxeterhom.conjugacy_by_invariants(base, pseudochar.twist_torus_part(base, 6))
    ok = same["tables_equal"] and same["witness"] is not None and not other["tables_equal"]
    details = {"twist_2": {k: same[k] for k in ("tables_equal", "search", "candidates")},
               "twist_6": {"tables_equal": other["tables_equal"]}}
    return _check("coxeter_conjugacy", ok, details, [{"conjugator": same["witness"]}])


# -- 7-8: cohomology ------------------------------------------------------------------


def _cohomology_battery():
    out = []
    for p in (3, 5):
        G = finitegrp.special_linear_group(2, GF(p))
        out += [(f"SL2(F{p}) sl2", finitegrp.conjugation_module(G)),
                (f"SL2(F{p}) natural", finitegrp.natural_module(G)),
                (f"SL2(F{p}) trivial", finitegrp.trivial_module(G))]
    F3 = GF(3)
    S3 = finitegrp.FiniteGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]], F3)
    out += [("S3 permutation F3", finitegrp.natural_module(S3)), ("S3 trivial F3", finitegrp.trivial_module(S3))]
    C3 = finitegrp.FiniteGroup([[[1, 1], [0, 1]]], F3)
    out += [("C3 unipotent F3", finitegrp.natural_module(C3)), ("C3 trivial F3", finitegrp.trivial_module(C3))]
    for tag, q, t, l in _coxeter_setups():
        phi = coxeterhom.build_coxeter_hom(build_root_datum(tag), q, t, l)
        out += [(f"{tag} Coxeter image adjoint", phi.module()),
                (f"{tag} Coxeter image dual", phi.module().dual())]
    return out


def c07_cohomology(seed: int = 0) -> dict:
    G = finitegrp.special_linear_group(2, GF(7))
    main = finitegrp.cohomology_report(finitegrp.conjugation_module(G), seed=seed)
    rows = {}
    agree = True
    for name, M in _cohomology_battery():
        if len(M.group) > 200:
            continue
        a, b = finitegrp.h1(M), finitegrp.h1_naive(M)
        rows[name] = {"order": len(M.group), "dim": M.dim, "h1_tree": a, "h1_naive": b}
        agree &= a == b
    ok = main["h1"] == 0 and agree
    return _check("c07_cohomology", ok, {"SL2(F7) sl2": main, "solver_agreement": rows})


def c08_unipotent_lift(seed: int = 0) -> dict:
    rep = finitegrp.unipotent_lift_order(2, 5, trials=100, seed=seed)
    witnesses = rep.pop("counterexamples")
    return _check("c08_unipotent_lift", rep["passed"] and rep["tested"] == 101, rep, witnesses)


# -- 9-10: pseudocharacters -----------------------------------------------------------


def c09_pseudochar_bijection(seed: int = 0) -> dict:
    rep = pseudochar.bijection_battery(13)
    return _check("c09_pseudochar_bijection", rep.pop("passed"), rep)


def c10_torus_conjugacy(seed: int = 0) -> dict:
    rep = pseudochar.torus_battery(13)
    return _check("c10_torus_conjugacy", rep.pop("passed"), rep)


def pseudochar_axioms(seed: int = 0) -> dict:
    """Tables from a Coxeter hom satisfy the axioms; a corrupted entry is caught."""
    phi = coxeterhom.build_coxeter_hom(build_root_datum("A1"), 2, 3, 13)
    tab = pseudochar.table_from_rep(coxeterhom._coxeter_domain_hom(phi))
    good = pseudochar.verify_axioms(tab, samples=200, seed=seed)
    key = sorted(tab.entries)[-1]
    index = (1,) * tab.entries[key].ndim
    bad = pseudochar.verify_axioms(pseudochar.corrupt(tab, key, index), samples=200, seed=seed)
    details = {"clean": {k: good[k] for k in ("passed", "checked")},
               "corrupted": {k: bad[k] for k in ("passed", "checked")}}
    return _check("pseudochar_axioms", good["passed"] and not bad["passed"], details)


# -- 11-12: Hecke algebras --------------------------------------------------------------


def c11_hecke(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for tag in ("A1", "A2"):
        rd = build_root_datum(tag)
        alg = hecke.hecke_algebra(rd)
        assoc = hecke.associativity_check(alg, 500, seed)
        worked = hecke.worked_identity(alg)
        weights = [(1,) + (0,) * (rd.rank - 1), (0,) * (rd.rank - 1) + (1,), (2,) + (0,) * (rd.rank - 1)]
        center = {}
        for lam in weights:
            f = alg.orbit_sum(lam)
            center[str(list(lam))] = hecke.center_commute_check(alg, f, samples=10, seed=seed)["passed"]
        degen = hecke.degeneration_check(alg, 300, seed)
        rows[tag] = {
            "associativity": assoc,
            "worked_identity": worked["passed"],
            "central_orbit_sums": center,
            "degeneration": degen,
        }
        ok &= assoc["passed"] and worked["passed"] and all(center.values()) and degen["passed"]
    return _check("c11_hecke", ok, rows)


def c12_projector(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for tag, n, l in (("A1", 4, 5), ("A2", 6, 7)):
        rep = hecke.projector_model(build_root_datum(tag), n, l)
        rows[tag] = rep
        ok &= rep["passed"] and rep["isomorphism"]
    return _check("c12_projector", ok, rows)


# -- 13: characters -------------------------------------------------------------------


CHARACTER_WEIGHTS = {
    "A1": [(1,), (2,), (3,), (5,)],
    "A2": [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (3, 0)],
    "A3": [(1, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 0), (0, 2, 0)],
    "G2": [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)],
}


def c13_characters(seed: int = 0) -> dict:
    dims = {}
    ok = True
    for tag, ws in CHARACTER_WEIGHTS.items():
        rd = build_root_datum(tag)
        for lam in ws:
            chi = charring.irreducible_character(rd, lam)
            d, wd = chi.dim(), charring.weyl_dimension(rd, lam)
            dims[f"{tag} {list(lam)}"] = [d, wd]
            ok &= d == wd
    g2 = charring.irreducible_character(build_root_datum("G2"), (1, 0)).dim()
    a2 = build_root_datum("A2")
    adj = charring.irreducible_character(a2, (1, 1))
    zero_mult = adj.terms.get((0, 0), 0)
    tri = {}
    for tag in ("A1", "A2", "A3", "G2"):
        rd = build_root_datum(tag)
        weights, K = charring.restriction_matrix(rd, 6)
        tri[tag] = {"weights": len(weights), "unitriangular": charring.is_unitriangular(K, weights, rd)}
    levi = charring.restrict_to_levi(a2, charring.irreducible_character(a2, (1, 0)), [0])
    sizes = sorted((p["orbit_size"] * p["coeff"] for p in levi["pieces"]), reverse=True)
    ok &= g2 == 7 and zero_mult == 2 and all(v["unitriangular"] for v in tri.values()) and sizes == [2, 1]
    details = {"dimensions": dims, "G2_short_fundamental_dim": g2, "A2_adjoint_zero_multiplicity": zero_mult,
               "unitriangular_level_6": tri, "levi_split": sizes}
    return _check("c13_characters", ok, details)


# -- 14: determinism ------------------------------------------------------------------


DETERMINISM_PROBES = ("c03_eigenspace", "c06_abundance", "c08_unipotent_lift", "c12_projector")


def c14_determinism(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for name in DETERMINISM_PROBES:
        fn = CHECKS[name]
        a, b = dumps(fn(seed)), dumps(fn(seed))
        rows[name] = a == b
        ok &= a == b
    return _check("c14_determinism", ok, rows)


CHECKS = {
    f.__name__: f
    for f in (
        c01_coxeter_structure, c02_coxeter_cokernel, c03_eigenspace, c04_very_good_table,
        c05_adjoint_decomposition, c06_abundance, c07_cohomology, c08_unipotent_lift,
        c09_pseudochar_bijection, c10_torus_conjugacy, c11_hecke, c12_projector,
        c13_characters, c14_determinism, coxeter_definition, coxeter_centralizer,
        coxeter_conjugacy, pseudochar_axioms,
    )
}

SUITES = {
    "rootdata": ["c04_very_good_table"],
    "weyl": ["c01_coxeter_structure", "c02_coxeter_cokernel", "c03_eigenspace"],
    "coxeter": [
        "c01_coxeter_structure", "c02_coxeter_cokernel", "c03_eigenspace",
        "c05_adjoint_decomposition", "c06_abundance", "coxeter_centralizer",
        "coxeter_conjugacy", "coxeter_definition",
    ],
    "cohomology": ["c07_cohomology", "c08_unipotent_lift"],
    "pseudochar": ["c09_pseudochar_bijection", "c10_torus_conjugacy", "pseudochar_axioms"],
    "hecke": ["c11_hecke", "c12_projector"],
    "char": ["c13_characters"],
    "determinism": ["c14_determinism"],
}
SUITES["all"] = sorted(CHECKS)


def run_check(name: str, seed: int = 0) -> tuple[dict, float]:
    """Run one check; library errors become a failed check carrying the exit code."""
    start = time.perf_counter()
    try:
        res = CHECKS[name](seed)
    except CoxHeckeError as exc:
        res = _check(name, False, {"error": type(exc).__name__, "message": str(exc),
                                   "exit_code": exc.exit_code})
    return res, time.perf_counter() - start


def run_suite(suite: str, seed: int = 0) -> tuple[list[dict], dict]:
    names = sorted(SUITES[suite])
    checks, timing = [], {}
    for name in names:
        res, dt = run_check(name, seed)
        checks.append(res)
        timing[name] = round(dt, 3)
    return checks, timing


def suite_exit_code(checks) -> int:
    codes = [c["details"].get("exit_code") for c in checks if isinstance(c["details"], dict)]
    if 3 in codes:
        return 3
    return 0 if all(c["pass"] for c in checks) else 1

