import csv
import json
from importlib import resources

import jsonschema
import pytest

from qagt import cli


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("qagt").joinpath("report.schema.json").read_text())


def run(tmp_path, *args, name="r.json"):
    out = tmp_path / name
    code = cli.main(["run", *args, "--out", str(out)])
    return code, out


def test_recursion_campaign(tmp_path, schema):
    code, out = run(tmp_path, "--suites", "recursion", "--max-level", "3", "--points", "2", "--seed", "42")
    assert code == 0
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, schema)
    recs = rep["suites"]["recursion"]
    assert len(recs) == 3 * 2
    assert all(r["pass"] and r["actual"] == {"num": [], "den": ["1/1"]} for r in recs)
    assert rep["summary"] == {"gated_checks": 6, "gated_failures": 0, "diagnostics": 0, "passed": True}


def test_invalid_configs_exit_2(tmp_path, capsys):
    for args in (["--max-level", "-1"], ["--points", "0"], ["--suites", "nope"], ["--suites", ","], ["--seed", "-3"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", *args])
        assert exc.value.code == 2
    capsys.readouterr()


def test_all_suites_deterministic_and_valid(tmp_path, schema, monkeypatch):
    monkeypatch.setenv("QAGT_THREADS", "2")
    monkeypatch.setattr(cli.os, "cpu_count", lambda: 4)
    assert cli.worker_count(8) == 2
    args = ("--max-level", "2", "--points", "2", "--seed", "5")
    code1, a = run(tmp_path, *args, name="a.json")
    monkeypatch.setenv("QAGT_THREADS", "1")
    code2, b = run(tmp_path, *args, name="b.json")
    assert code1 == code2 == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    jsonschema.validate(rep, schema)
    assert set(rep["suites"]) == set(cli.SUITES)
    pref = [r for r in rep["suites"]["agt"] if r["check"] == "agt-prefactor"]
    assert pref[0]["actual"] == "(q/t)^n" and not pref[0]["gated"]
    checks = {r["check"] for r in rep["suites"]["agt"]}
    assert {"agt-conjecture", "f-recursion-conjecture"} <= checks


def test_csv_rows_and_columns(tmp_path):
    code, out = run(tmp_path, "--suites", "poles,duality", "--max-level", "2", "--points", "1", "--format", "csv", name="r.csv")
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert tuple(rows[0]) == cli.CSV_COLUMNS
    assert len(rows) - 1 == 2 + (2 + 5)
    assert {r[0] for r in rows[1:]} == {"poles", "duality"}


def test_timings_are_opt_in(tmp_path, schema):
    code, out = run(tmp_path, "--suites", "poles", "--max-level", "1", "--points", "1", "--timings")
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, schema)
    assert all("runtime_ms" in r for r in rep["suites"]["poles"])


def test_failed_check_gives_exit_1(tmp_path, monkeypatch):
    monkeypatch.setattr(cli.nekrasov, "duality_check", lambda *a: (1, 2))
    code, out = run(tmp_path, "--suites", "duality", "--max-level", "1", "--points", "1")
    assert code == 1
    rep = json.loads(out.read_text())
    assert rep["summary"]["gated_failures"] == 2 and not rep["summary"]["passed"]


def test_errors_become_failed_records(tmp_path, monkeypatch):
    def boom(*a):
        raise ZeroDivisionError("synthetic")

    monkeypatch.setattr(cli.nekrasov, "pole_report", boom)
    code, out = run(tmp_path, "--suites", "poles", "--max-level", "1", "--points", "1")
    rec = json.loads(out.read_text())["suites"]["poles"][0]
    assert code == 1 and rec["actual"] == {"error": "ZeroDivisionError: synthetic"}


def test_show(tmp_path, capsys):
    code, out = run(tmp_path, "--suites", "kac,agt", "--max-level", "2", "--points", "2")
    capsys.readouterr()
    assert cli.main(["show", str(out)]) == 0
    text = capsys.readouterr().out
    assert "AGT prefactor: (q/t)^n" in text and "overall: PASS" in text
    assert cli.main(["show", str(tmp_path / "missing.json")]) == 1


def test_threads_env(monkeypatch):
    monkeypatch.setenv("QAGT_THREADS", "1")
    assert cli.worker_count(10) == 1
    monkeypatch.setenv("QAGT_THREADS", "many")
    with pytest.raises(cli.ConfigError):
        cli.worker_count(4)
    monkeypatch.delenv("QAGT_THREADS")
    assert 1 <= cli.worker_count(3) <= 3


def test_rational_serialisation():
    assert cli.rat(5) == "5/1" and cli.rat(cli.Fraction(-2, 6)) == "-1/3"
