import csv
import json
import subprocess
import sys

import pytest

from hyperkl.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_exact(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "compute", "--p", "7", "--n", "3", "--mode", "exact", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert list(doc) == ["p", "k", "n", "conductor", "values"]
    assert len(doc["values"]) == 6
    assert all(isinstance(c, str) for v in doc["values"] for c in v["coeffs"])


def test_compute_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "compute", "--p", "5", "--k", "2", "--n", "2", "--out", str(a))
    run(capsys, "compute", "--p", "5", "--k", "2", "--n", "2", "--out", str(b), "--no-cache")
    assert a.read_bytes() == b.read_bytes()


def test_compute_float_csv(tmp_path, capsys):
    out = tmp_path / "k.csv"
    code, _, _ = run(capsys, "compute", "--p", "11", "--n", "2", "--mode", "float", "--u", "1", "2", "--out", str(out))
    assert code == 0
    for u in (1, 2):
        rows = list(csv.DictReader((tmp_path / f"k_u{u}.csv").open()))
        assert len(rows) == 10 and list(rows[0]) == ["a_dlog", "re", "im", "abs"]


def test_gen_check(capsys):
    code, out, _ = run(capsys, "gen-check", "--n", "3", "--ell", "3")
    assert code == 0 and "order 5616" in out


def test_gen_check_cap_fallback(capsys):
    code, out, _ = run(capsys, "gen-check", "--n", "3", "--ell", "5", "--cap", "1000")
    assert code == 0 and "order 372000" in out


def test_weil_check(capsys):
    code, out, _ = run(capsys, "weil-check", "--p", "101", "--n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["max_ratio"] < 1 and doc["ok"]


def test_reduce_and_trace_field(capsys):
    code, out, _ = run(capsys, "reduce", "--p", "5", "--n", "2", "--ell", "11")
    assert code == 0 and [v["value"] for v in json.loads(out)["values"]] == [7, 4, 6, 2]
    code, out, _ = run(capsys, "trace-field", "--p", "13", "--n", "2", "--ell", "5")
    assert code == 0 and json.loads(out)["degree"] == 2


def test_other_subcommands(capsys):
    assert run(capsys, "twist-check", "--p", "7", "--n", "3")[0] == 0
    code, out, _ = run(capsys, "gauss", "--p", "7")
    assert code == 0 and json.loads(out)["expected"] == -7
    code, out, _ = run(capsys, "sato-tate", "--primes", "101", "211", "--K", "2")
    assert code == 0 and len(json.loads(out)[0]["moments"]) == 4
    code, out, _ = run(capsys, "inertia", "--p", "13", "--n", "3", "--ell", "53", "--sweep", "--pairing")
    doc = json.loads(out)
    assert code == 0 and doc["sweep"]["failures"] == 0 and doc["pairing"]["dim"] == 0
    code, out, _ = run(capsys, "normalizer-check", "--n", "2", "--ell", "3", "--L-degree", "2")
    assert code == 0 and json.loads(out)["examined"] == 720
    code, out, _ = run(capsys, "classify", "--n", "7", "--ell", "1000003")
    doc = json.loads(out)
    assert code == 0 and {"family": "G2", "l": 2, "a": 1, "m_S": 7, "out_order": 1} in doc["candidates"]


@pytest.mark.parametrize("argv", [
    ["compute", "--p", "7"],
    ["compute", "--p", "7", "--n", "2", "--bogus"],
    ["compute", "--p", "9", "--n", "2"],
    ["reduce", "--p", "5", "--n", "2", "--ell", "5"],
    ["inertia", "--p", "11", "--n", "3"],
    ["gen-check", "--n", "1", "--ell", "3"],
    ["normalizer-check", "--n", "3", "--ell", "2", "--L-degree", "3"],
    ["nonsense"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hyperkl", "gen-check", "--n", "2", "--ell", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "order 24" in res.stdout


def test_verify_all(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "verify-all", "--quiet", "--out", str(out))
    assert code == 0 and "13/13 criteria passed" in stdout
    assert all(r["passed"] for r in json.loads(out.read_text()))
