import csv
import io
import json
import subprocess
import sys

import pytest

from rapidity.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_compose_plain():
    code, out, _ = run("compose", "0.5", "0.5")
    assert code == 0
    assert "beta 0.8\n" in out


def test_compose_identity_operands():
    code, out, _ = run("compose", "0.3", "0", "0", "--format", "json")
    assert code == 0
    assert json.loads(out)["beta"] == 0.3


def test_compose_extended_excluded_pair():
    code, out, err = run("compose", "--extended", "1", "-1")
    assert code == 2
    assert out == ""
    assert "excluded pair" in err


def test_compose_extended_absorbs():
    code, out, _ = run("compose", "--extended", "1", "0.3", "--format", "json")
    assert code == 0 and json.loads(out)["beta"] == 1.0


def test_compose_domain_errors():
    assert run("compose", "1", "0.5")[0] == 2
    assert run("compose", "0.5")[0] == 2
    assert run("compose", "abc", "0.5")[0] == 2
    assert run("compose", "nan", "0.5")[0] == 2


def test_compose_physical_units():
    c = "299792458"
    code, out, _ = run("compose", "149896229", "149896229", "--c", c, "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["beta"] == 0.8
    assert d["velocity"] == pytest.approx(0.8 * 299792458)


def test_natural_and_c_are_exclusive():
    assert run("compose", "0.1", "0.2", "--natural", "--c", "2")[0] == 2


def test_global_flags_before_subcommand():
    code, out, _ = run("--format", "json", "compose", "0.5", "0.5")
    assert code == 0 and json.loads(out)["beta"] == 0.8


def test_compose_csv():
    code, out, _ = run("compose", "0.5", "0.5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["velocity", "beta", "saturated"]
    assert float(rows[1][1]) == 0.8


def test_rapidity_to_and_from():
    code, out, _ = run("rapidity", "to", "0.5", "--k", "0.5")
    assert code == 0 and out.strip() == "0.549306"
    code, out, _ = run("rapidity", "from", "0")
    assert code == 0 and float(out) == 0.0
    code, out, _ = run("rapidity", "from", "0.5493061443340548", "--k", "0.5", "--format", "json")
    assert json.loads(out)["beta"] == pytest.approx(0.5, abs=1e-15)


def test_rapidity_to_boundary_is_rejected():
    assert run("rapidity", "to", "1")[0] == 2
    assert run("rapidity", "to", "0.5", "--k", "-1")[0] == 2


def test_chain_csv():
    code, out, _ = run("chain", "0.1", "10", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["step", "sr_beta", "newton_value", "rapidity"]
    assert len(rows) == 12


def test_chain_json_matches_csv():
    _, out_csv, _ = run("chain", "0.1", "10", "--format", "csv")
    _, out_json, _ = run("chain", "0.1", "10", "--format", "json")
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    data = json.loads(out_json)
    assert len(data) == len(rows) == 11
    for r, d in zip(rows, data):
        assert int(r["step"]) == d["step"]
        for key in ("sr_beta", "newton_value", "rapidity"):
            assert float(r[key]) == d[key]


def test_chain_plain():
    code, out, _ = run("chain", "0.1", "3")
    assert code == 0
    assert out.splitlines()[0].split() == ["step", "sr_beta", "newton_value", "rapidity"]


@pytest.mark.parametrize("args", [("1.5", "10"), ("0", "10"), ("0.1", "0"), ("0.1", "1000001")])
def test_chain_range_errors(args):
    assert run("chain", *args)[0] == 2


def test_verify_commutativity():
    code, out, _ = run("verify", "commutativity", "--count", "200", "--format", "json")
    (report,) = json.loads(out)
    assert code == 0
    assert report["max_abs_violation"] == 0.0


def test_verify_failure_exit_code():
    code, out, _ = run("verify", "associativity", "--count", "500", "--tol", "1e-300")
    assert code == 1
    assert out.startswith("FAIL")


def test_verify_bad_arguments():
    assert run("verify", "closure")[0] == 2
    assert run("verify", "all", "--count", "0")[0] == 2
    assert run("verify", "all", "--tol", "-1")[0] == 2


def test_verify_csv():
    code, out, _ = run("verify", "identity", "inverse", "--count", "100", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["law_name"] for r in rows] == ["identity", "inverse"]


def test_format_env_var(monkeypatch):
    monkeypatch.setenv("RAPIDITY_FORMAT", "json")
    code, out, _ = run("compose", "0.5", "0.5")
    assert json.loads(out)["beta"] == 0.8
    # the flag wins over the environment
    code, out, _ = run("compose", "0.5", "0.5", "--format", "plain")
    assert out.startswith("velocity")
    monkeypatch.setenv("RAPIDITY_FORMAT", "xml")
    assert run("compose", "0.5", "0.5")[0] == 2


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "rapidity", "compose", "0.5", "0.5", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["beta"] == 0.8
