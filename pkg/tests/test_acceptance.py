"""The fourteen acceptance criteria, each under its stated time limit."""
import subprocess
import sys
import time

import pytest

from coxhecke import acceptance

CRITERIA = [
    (1, "c01_coxeter_structure", 30),
    (2, "c02_coxeter_cokernel", 5),
    (3, "c03_eigenspace", 10),
    (4, "c04_very_good_table", None),
    (5, "c05_adjoint_decomposition", 60),
    (6, "c06_abundance", 60),
    (7, "c07_cohomology", 120),
    (8, "c08_unipotent_lift", 5),
    (9, "c09_pseudochar_bijection", 300),
    (10, "c10_torus_conjugacy", None),
    (11, "c11_hecke", 60),
    (12, "c12_projector", 30),
    (13, "c13_characters", 30),
    (14, "c14_determinism", None),
]


@pytest.mark.parametrize("number,name,limit", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, name, limit, capsys):
    start = time.perf_counter()
    res, _ = acceptance.run_check(name, seed=0)
    elapsed = time.perf_counter() - start
    within = limit is None or elapsed < limit
    ok = res["pass"] and within
    bound = f"< {limit} s" if limit else "no limit"
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {name}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s, {bound})")
    assert res["pass"], acceptance.dumps(res)[:4000]
    assert within


def test_cli_rerun_byte_identical(capsys):
    cmd = [sys.executable, "-m", "coxhecke", "acceptance", "--suite", "coxeter", "--seed", "42"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.returncode == 0 and a.stdout == b.stdout
    with capsys.disabled():
        print(f"\ncriterion 14 cli rerun: {'PASS' if ok else 'FAIL'} (exit {a.returncode}, {len(a.stdout)} bytes)")
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_suites_cover_every_check_once():
    assert sorted(acceptance.SUITES["all"]) == sorted(acceptance.CHECKS)
    listed = [n for k, v in acceptance.SUITES.items() if k != "all" for n in v]
    assert set(listed) == set(acceptance.CHECKS)
