"""Command-line interface: every command prints a JSON run report.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or precondition
error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import acceptance, charring, chevalley, coxeterhom, finitegrp, hecke, pseudochar
from .acceptance import dumps
from .charring import REP_DIM_CAP
from .errors import CheckFailed, CoxHeckeError, UsageError
from .fields import GF
from .finitegrp import GROUP_CAP, MODULE_DIM_CAP
from .rootdata import build_root_datum, center_order, check_axioms, is_very_good
from .weyl import (
    WEYL_CAP,
    coxeter_element,
    coxeter_lattice_data,
    powers,
    root_orbits,
    scaling_stabilizer,
    torsion_eigenspace,
    weyl_group,
    weyl_order_formula,
)


def _check(name, passed, details=None, witnesses=None) -> dict:
    return {"name": name, "pass": bool(passed), "details": details if details is not None else {},
            "witnesses": witnesses or []}


def _ints(text, name):
    if text is None:
        return None
    try:
        return [int(x) for x in str(text).replace("[", "").replace("]", "").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated integers, got {text!r}") from None


def _datum(args):
    if not args.type:
        raise UsageError("--type is required")
    return build_root_datum(args.type, args.rank, args.isogeny)


def _load_json(text):
    if text is None:
        raise UsageError("--json is required for this command")
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


# -- commands --------------------------------------------------------------------------


def cmd_rootdata(args):
    rd = _datum(args)
    axioms = check_axioms(rd)
    checks = [_check(f"axiom_{k}", v) for k, v in sorted(axioms.items())]
    info = rd.to_json()
    info.update(cartan=rd.cartan.tolist(), center_order=center_order(rd), positive_roots=len(rd.positive))
    if args.l is not None:
        info["very_good"] = is_very_good(rd, args.l)
    checks.append(_check("datum", True, info))
    return checks


def cmd_weyl(args):
    rd = _datum(args)
    W = weyl_group(rd)
    w = coxeter_element(rd)
    h = w.order()
    orbits = root_orbits(rd, w)
    checks = [
        _check("weyl_order", len(W) == weyl_order_formula(rd.series, rd.type_rank),
               {"order": len(W), "formula": weyl_order_formula(rd.series, rd.type_rank)}),
        _check("coxeter_free_action", all(len(o) == h for o in orbits) and len(orbits) == len(rd.basis),
               {"h": h, "w_word": list(w.word), "orbits": len(orbits), "num_roots": rd.num_roots}),
    ]
    lattice = coxeter_lattice_data(rd, w)
    if rd.is_simply_connected() and len(rd.basis) == rd.rank:
        checks.append(_check("coxeter_cokernel", lattice["cokernel_order"] == center_order(rd), lattice))
    if args.t is not None and args.q is not None:
        E = torsion_eigenspace(rd, w, args.t, args.q)
        details = {"t": args.t, "q": args.q, "dim": int(E.shape[0]), "basis": E.tolist()}
        ok = E.shape[0] == 1
        if ok:
            stab = sorted(scaling_stabilizer(rd, E[0], args.t, W))
            ok = stab == sorted(W.index_of(p) for p in powers(w))
            details["stabilizer_order"] = len(stab)
        checks.append(_check("eigenspace", ok, details))
    return checks


def cmd_chevalley(args):
    rd = _datum(args)
    if args.l is None:
        raise UsageError("--l is required")
    alg = chevalley.chevalley_algebra(rd, args.l, args.m or 1)
    details = {"dim": alg.dim, "field": alg.field.descriptor(), "max_structure_constant": alg.max_structure_constant()}
    return [_check("jacobi", alg.jacobi_checked, details)]


def cmd_cohomology(args):
    rd = _datum(args)
    if rd.series != "A" or args.l is None:
        raise UsageError("cohomology is computed for SL_n(F_l): give --type A<n> and --l")
    G = finitegrp.special_linear_group(rd.type_rank + 1, GF(args.l))
    build = {"adjoint": finitegrp.conjugation_module, "natural": finitegrp.natural_module,
             "trivial": finitegrp.trivial_module}
    M = build[args.module](G)
    rep = finitegrp.cohomology_report(M, seed=args.seed)
    checks = [_check("cohomology", True, rep)]
    if len(G) <= 200:
        naive = finitegrp.h1_naive(M)
        checks.append(_check("h1_naive_agrees", naive == rep["h1"], {"naive": naive}))
    return checks


def _coxeter_hom(args):
    rd = _datum(args)
    q = 2 if args.q is None else args.q
    t = coxeterhom.coxeter_prime(rd, q) if args.t is None else args.t
    if args.l is None:
        raise UsageError("--l is required")
    return coxeterhom.build_coxeter_hom(rd, q, t, args.l, args.m)


def cmd_coxeter(args):
    phi = _coxeter_hom(args)
    desc = phi.descriptor()
    if args.action == "build":
        return [_check("build", True, desc)]
    if args.action == "verify":
        rep = coxeterhom.verify_definition(phi)
        cen = coxeterhom.centralizer_report(phi)
        return [_check("definition", rep["passed"], rep), _check("centralizer_trivial", cen["trivial"], cen),
                _check("descriptor", True, desc)]
    if args.action == "decompose":
        dec = coxeterhom.adjoint_decomposition(phi, seed=args.seed)
        pieces = [{k: v for k, v in p.items() if k != "basis"} for p in dec]
        ok = all(p["stable"] for p in dec) and all(p["irreducible"] for p in dec if p["kind"] == "induced")
        return [_check("adjoint_decomposition", ok, {"pieces": pieces, "descriptor": desc})]
    rep = coxeterhom.abundance_report(phi, seed=args.seed)
    witnesses = rep.pop("witnesses")
    return [_check("abundance", rep["abundant"], rep, witnesses)]


def cmd_pseudochar(args):
    if args.action == "battery":
        rep = pseudochar.bijection_battery(args.l or 13)
        return [_check("bijection_battery", rep.pop("passed"), rep)]
    if args.action == "torus":
        rep = pseudochar.torus_battery(args.l or 13)
        return [_check("torus_battery", rep.pop("passed"), rep)]
    phi = _coxeter_hom(args)
    hom = coxeterhom._coxeter_domain_hom(phi)
    tab = pseudochar.table_from_rep(hom, n_max=args.slots, word_bound=2)
    rep = pseudochar.verify_axioms(tab, samples=args.samples or 500, seed=args.seed)
    checks = [_check("axioms", rep["passed"], {k: rep[k] for k in ("checked", "samples", "samples_passed")},
                     rep["counterexamples"])]
    if args.out_table:
        with open(args.out_table, "w") as fh:
            fh.write(dumps({"domain_order": len(hom.domain), "field": tab.field.descriptor(),
                            "rows": tab.to_rows()}))
    checks.append(_check("table", True, {"domain_order": len(hom.domain), "entries": len(tab.entries),
                                         "one_slot": tab.one_slot().tolist()}))
    return checks


def cmd_char(args):
    rd = _datum(args)
    lam = tuple(_ints(args.weight, "weight") or [])
    if len(lam) != rd.rank:
        raise UsageError(f"--weight needs {rd.rank} coordinates")
    chi = charring.irreducible_character(rd, lam)
    wd = charring.weyl_dimension(rd, lam)
    checks = [_check("weyl_dimension", chi.dim() == wd, {"dim": chi.dim(), "weyl_dimension": wd})]
    if args.action == "irrep":
        expand = charring.chevalley_restriction_expand(rd, chi)
        checks.append(_check("character", True, {"character": chi.to_json(),
                                                  "orbit_expansion": [[list(m), c] for m, c in expand]}))
        return checks
    levi = _ints(args.levi, "levi")
    if levi is None:
        raise UsageError("--levi is required for restrict")
    rep = charring.restrict_to_levi(rd, chi, levi)
    total = sum(p["orbit_size"] * p["coeff"] for p in rep["pieces"])
    checks.append(_check("levi_restriction", total == chi.dim(), {"levi": levi, "pieces": rep["pieces"]}))
    return checks


def cmd_hecke(args):
    if args.action == "projector":
        rd = _datum(args)
        n = args.n if args.n is not None else (4 if rd.rank == 1 else 6)
        l = args.l if args.l is not None else 5
        rep = hecke.projector_model(rd, n, l, chi=_ints(args.weight, "weight"))
        return [_check("projector", rep["passed"], rep)]
    rd = _datum(args)
    alg = hecke.hecke_algebra(rd, args.convention)
    samples = args.samples
    if args.action == "mul":
        data = _load_json(args.json)
        if not isinstance(data, list) or len(data) < 2:
            raise UsageError("--json must hold a list of at least two elements")
        prod = hecke.element_from_json(alg, data[0])
        for d in data[1:]:
            prod = prod * hecke.element_from_json(alg, d)
        return [_check("product", True, prod.to_json())]
    if args.action == "assoc":
        rep = hecke.associativity_check(alg, samples or 500, args.seed)
        return [_check("associativity", rep["passed"], rep)]
    if args.action == "center":
        lam = tuple(_ints(args.weight, "weight") or [1] + [0] * (rd.rank - 1))
        rep = hecke.center_commute_check(alg, alg.orbit_sum(lam), samples or 50, args.seed)
        return [_check("center", rep["passed"], {"weight": list(lam), **rep})]
    if args.action == "degenerate":
        rep = hecke.degeneration_check(alg, samples or 300, args.seed)
        return [_check("degeneration", rep["passed"], rep)]
    rep = hecke.worked_identity(alg)
    quad = hecke.quadratic_relation(alg).to_json()
    return [_check("worked_identity", rep["passed"], rep), _check("quadratic", True, quad)]


def cmd_acceptance(args):
    checks, timing = acceptance.run_suite(args.suite, args.seed)
    args._timing = timing
    return checks


COMMANDS = {
    "rootdata": cmd_rootdata, "weyl": cmd_weyl, "chevalley": cmd_chevalley, "cohomology": cmd_cohomology,
    "coxeter": cmd_coxeter, "pseudochar": cmd_pseudochar, "char": cmd_char, "hecke": cmd_hecke,
    "acceptance": cmd_acceptance,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type, e.g. A2 or A with --rank 2")
    common.add_argument("--rank", type=int)
    common.add_argument("--isogeny", default="sc", choices=["sc", "ad"])
    common.add_argument("--l", type=int, help="characteristic of the coefficient field")
    common.add_argument("--m", type=int, help="field degree")
    common.add_argument("--t", type=int, help="order of the torus part")
    common.add_argument("--q", type=int)
    common.add_argument("--n", type=int, help="torus level for the projector model")
    common.add_argument("--weight", help="comma-separated weight or character values")
    common.add_argument("--levi", help="comma-separated simple-root indices")
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--json", help="JSON input, inline or @path")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")

    p = argparse.ArgumentParser(prog="coxhecke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("rootdata", "weyl", "chevalley"):
        sub.add_parser(name, parents=[common])
    c = sub.add_parser("cohomology", parents=[common])
    c.add_argument("--module", default="adjoint", choices=["adjoint", "natural", "trivial"])
    c = sub.add_parser("coxeter", parents=[common])
    c.add_argument("action", choices=["build", "verify", "decompose", "abundance"])
    c = sub.add_parser("pseudochar", parents=[common])
    c.add_argument("action", choices=["table", "battery", "torus"])
    c.add_argument("--slots", type=int, default=2)
    c.add_argument("--out-table", help="write the pseudocharacter table rows here")
    c = sub.add_parser("char", parents=[common])
    c.add_argument("action", choices=["irrep", "restrict"])
    c = sub.add_parser("hecke", parents=[common])
    c.add_argument("action", choices=["mul", "assoc", "center", "degenerate", "projector", "identity"])
    c.add_argument("--convention", default="written", choices=sorted(hecke.CONVENTIONS))
    c = sub.add_parser("acceptance", parents=[common])
    c.add_argument("--suite", default="all", choices=sorted(acceptance.SUITES))
    return p


def _config(args) -> dict:
    keys = ("type", "rank", "isogeny", "l", "m", "t", "q", "n", "weight", "levi", "samples", "seed")
    cfg = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    for k in ("action", "suite", "module", "convention"):
        if getattr(args, k, None) is not None:
            cfg[k] = getattr(args, k)
    cfg["caps"] = {"group": GROUP_CAP, "weyl": WEYL_CAP, "module_dim": MODULE_DIM_CAP, "rep_dim": REP_DIM_CAP}
    return cfg


def _emit(report, args):
    text = dumps(report)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = {"command": [args.command] + argv[1:], "config": _config(args)}
    start = time.perf_counter()
    try:
        checks = COMMANDS[args.command](args)
    except CheckFailed as exc:
        checks, code = [_check("error", False, {"message": str(exc)})], 1
    except CoxHeckeError as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        report["checks"], report["pass"] = [], False
        _emit(report, args)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    else:
        code = acceptance.suite_exit_code(checks)
    report["checks"] = sorted(checks, key=lambda c: c["name"])
    report["pass"] = all(c["pass"] for c in checks)
    if args.timing:
        report["timing"] = {"total": round(time.perf_counter() - start, 3), **getattr(args, "_timing", {})}
    _emit(report, args)
    return code

