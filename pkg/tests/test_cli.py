import csv
import io
import json
import subprocess
import sys

import pytest

from bctforge.cli import flatten, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys):
    code, out, _ = run(capsys, "--p", "7", "--k", "1", "field-info")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["q"] == 7 and doc["result"]["field_size"] == 49
    assert set(doc["meta"]) == {"p", "k", "q", "d", "modulus", "generator"}


def test_field_info_q27(capsys):
    code, out, _ = run(capsys, "--p", "3", "--k", "3", "field-info")
    assert code == 0 and json.loads(out)["result"]["field_size"] == 729


def test_not_prime(capsys):
    code, out, err = run(capsys, "--p", "4", "--k", "1", "field-info")
    assert code == 2 and "not prime" in err and out == ""


def test_missing_p(capsys):
    code, _, err = run(capsys, "spectrum")
    assert code == 2 and "--p" in err


def test_spectrum(capsys):
    code, out, _ = run(capsys, "--p", "7", "--k", "1", "--map", "f1", "spectrum")
    res = json.loads(out)["result"]
    assert code == 0 and res["omega"]["5"] == 1 and res["max_delta"] == 5


def test_spectrum_naive_per_b(capsys):
    code, out, _ = run(capsys, "--p", "3", "--map", "f2", "spectrum", "--naive", "--per-b")
    res = json.loads(out)["result"]
    assert code == 0 and res["oracle_checked"] and len(res["per_b"]) == 9


def test_bct_f1(capsys):
    code, out, _ = run(capsys, "--p", "7", "--k", "1", "--map", "f1", "bct")
    assert code == 0 and json.loads(out)["result"]["beta"] == 2


def test_bct_f2_naive(capsys):
    code, out, _ = run(capsys, "--p", "7", "--k", "1", "--map", "f2", "bct", "--naive")
    res = json.loads(out)["result"]
    assert code == 0 and res["beta"] == 2 and res["oracle_checked"] is True


def test_custom_map(capsys):
    code, out, _ = run(capsys, "--p", "5", "--map", "custom", "--d", "7", "bct")
    assert code == 0 and json.loads(out)["meta"]["d"] == 7
    code, _, err = run(capsys, "--p", "5", "--map", "custom", "bct")
    assert code == 2
    code, _, _ = run(capsys, "--p", "5", "--map", "custom", "--d", "24", "bct")
    assert code == 2


def test_ddt(capsys):
    code, out, _ = run(capsys, "--p", "7", "ddt", "--a", "9")
    res = json.loads(out)["result"]
    assert code == 0 and res["row"]["0"] == 5 and sum(res["row"].values()) == 49


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--subjects", "theorem1,theorem2", "--q", "7,19,27")
    assert code == 0
    assert all(r["overall"] == "pass" for r in json.loads(out)["result"])

    code, out, _ = run(capsys, "verify", "--subjects", "lemma1", "--q", "5")
    assert code == 0 and json.loads(out)["result"][0]["overall"] == "hypotheses_not_met"

    assert run(capsys, "verify", "--subjects", "theorem1", "--q", "3")[0] == 1
    assert run(capsys, "verify", "--subjects", "theorem1", "--q", "3", "--allow-unattained")[0] == 0


@pytest.mark.parametrize("qs", ["7,x", "", "4", "15", "1"])
def test_verify_malformed(capsys, qs):
    assert run(capsys, "verify", "--subjects", "lemma1", "--q", qs)[0] == 2


def test_verify_bad_subject(capsys):
    assert run(capsys, "verify", "--subjects", "lemma9", "--q", "7")[0] == 2


def test_json_roundtrip(capsys):
    _, out, _ = run(capsys, "--p", "7", "--map", "f2", "bct")
    assert json.dumps(json.loads(out), indent=2) + "\n" == out
    _, out, _ = run(capsys, "verify", "--subjects", "lemma2", "--q", "7")
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


@pytest.mark.parametrize("argv", [["--p", "7", "bct"], ["--p", "7", "spectrum", "--per-b"],
                                  ["verify", "--subjects", "theorem1", "--q", "7"]])
def test_csv_matches_json(capsys, argv):
    _, js, _ = run(capsys, *argv, "--format", "json")
    _, cs, _ = run(capsys, *argv, "--format", "csv")
    rows = list(csv.reader(io.StringIO(cs)))
    assert rows[0] == ["section", "key", "value"]
    expected = [[s, k, v if isinstance(v, str) else json.dumps(v)]
                for s, k, v in flatten(json.loads(js))]
    assert rows[1:] == expected


def test_csv_one_row_per_b(capsys):
    _, js, _ = run(capsys, "--p", "7", "bct")
    _, cs, _ = run(capsys, "--p", "7", "bct", "--format", "csv")
    per_b = json.loads(js)["result"]["per_b"]
    rows = [r for r in csv.reader(io.StringIO(cs)) if r[0] == "result.per_b"]
    assert {r[1]: int(r[2]) for r in rows} == per_b


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "--p", "7", "bct", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["beta"] == 2
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


def test_size_cap_env():
    proc = subprocess.run([sys.executable, "-m", "bctforge", "--p", "7", "field-info"],
                          capture_output=True, text=True,
                          env={"BCTFORGE_SIZE_CAP": "10", "PATH": ""})
    assert proc.returncode == 2 and "cap" in proc.stderr
