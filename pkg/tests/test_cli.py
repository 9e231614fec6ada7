import json
import subprocess
import sys


from coxhecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_invalid_type_exits_2(capsys):
    code, report = run(capsys, "rootdata", "--type", "Q", "--rank", "9")
    assert code == 2
    assert report["error"]["kind"] == "UsageError"


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_rootdata_report_shape(capsys):
    code, report = run(capsys, "rootdata", "--type", "B2", "--l", "3")
    assert code == 0 and report["pass"]
    assert set(report) == {"command", "config", "checks", "pass"}
    for c in report["checks"]:
        assert set(c) == {"name", "pass", "details", "witnesses"}
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)


def test_weyl_eigenspace(capsys):
    code, report = run(capsys, "weyl", "--type", "G2", "--t", "7", "--q", "3")
    assert code == 0
    eig = [c for c in report["checks"] if c["name"] == "eigenspace"][0]
    assert eig["details"]["dim"] == 1 and eig["details"]["stabilizer_order"] == 6


def test_cohomology_json(capsys):
    code, report = run(capsys, "cohomology", "--type", "A1", "--l", "7")
    assert code == 0
    rep = report["checks"][0]["details"]
    assert set(rep) == {"group_order", "module_dim", "h0", "h1", "simples", "seed"}
    assert rep["h1"] == 0


def test_cohomology_nonzero_is_reported_not_failed(capsys):
    code, report = run(capsys, "cohomology", "--type", "A1", "--l", "5")
    assert code == 0
    assert report["checks"][0]["details"]["h1"] == 1


def test_coxeter_subcommands(capsys):
    for action in ("build", "verify", "decompose", "abundance"):
        code, report = run(capsys, "coxeter", action, "--type", "A1", "--l", "13")
        assert code == 0, action
    code, report = run(capsys, "coxeter", "abundance", "--type", "A2", "--l", "29")
    assert code == 1 and not report["pass"]
    code, _ = run(capsys, "coxeter", "build", "--type", "A2", "--t", "5", "--l", "29")
    assert code == 2


def test_char_and_hecke(capsys):
    code, report = run(capsys, "char", "irrep", "--type", "A2", "--weight", "1,1")
    assert code == 0
    code, report = run(capsys, "char", "restrict", "--type", "A2", "--weight", "1,0", "--levi", "0")
    assert code == 0
    code, _ = run(capsys, "char", "irrep", "--type", "A2", "--weight", "1")
    assert code == 2
    elem = {"terms": [{"lambda": [1], "w_word": [0], "coeff": [0, 1]}]}
    code, report = run(capsys, "hecke", "mul", "--type", "A1", "--json", json.dumps([elem, elem]))
    assert code == 0 and report["checks"][0]["details"]["terms"]
    code, report = run(capsys, "hecke", "center", "--type", "A1", "--samples", "5")
    assert code == 0
    code, report = run(capsys, "hecke", "identity", "--type", "A1", "--convention", "standard")
    assert code == 1


def test_resource_exit_code(capsys):
    code, report = run(capsys, "char", "irrep", "--type", "E8", "--weight", "9,9,9,9,9,9,9,9")
    assert code == 3


def test_pseudochar_table_export(tmp_path, capsys):
    out = tmp_path / "rows.json"
    code, report = run(capsys, "pseudochar", "table", "--type", "A1", "--l", "13", "--samples", "50",
                       "--out-table", str(out))
    assert code == 0
    rows = json.loads(out.read_text())["rows"]
    assert set(rows[0]) == {"word", "rep", "tuple_indices", "value"}


def test_out_file_and_timing(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["weyl", "--type", "A2", "--out", str(out), "--timing"]) == 0
    report = json.loads(out.read_text())
    assert "timing" in report
    assert capsys.readouterr().out == ""


def test_hecke_assoc_example():
    proc = subprocess.run([sys.executable, "-m", "coxhecke", "hecke", "assoc", "--type", "A2",
                           "--samples", "500", "--seed", "7"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"]
