import json
import random
import subprocess
import sys

import pytest

from hooklab.cli import main, run


def ok(*argv):
    code, out, err = run(list(argv))
    assert code == 0, err
    return json.loads(out)


def test_worked_decompositions():
    assert ok("decompose", "--mode", "phi", "-r", "3", "5,4,4,1") == {"core": [2], "quotient": [[], [1, 1], [2]]}
    assert ok("decompose", "--mode", "psi", "-r", "3", "14,6,6,1") == {"kernel": [5, 3, 3, 1], "cofactor": [3, 1, 1]}


def test_compact_json_is_byte_exact():
    code, out, _ = run(["decompose", "--mode", "phi", "-r", "3", "5,4,4,1"])
    assert out == '{"core":[2],"quotient":[[],[1,1],[2]]}\n'


def _random_partition(rng):
    return sorted((rng.randint(1, 9) for _ in range(rng.randint(0, 8))), reverse=True)


@pytest.mark.parametrize("mode", ["phi", "psi"])
def test_invert_round_trip(mode):
    rng = random.Random(7)
    for _ in range(100):
        lam, r = _random_partition(rng), rng.randint(1, 5)
        text = ",".join(map(str, lam))
        code, out, err = run(["decompose", "--mode", mode, "-r", str(r), text])
        assert code == 0, err
        assert ok("decompose", "--mode", mode, "-r", str(r), "--invert", out.strip()) == lam


def test_empty_partition_round_trip():
    out = ok("decompose", "--mode", "phi", "-r", "2", "")
    assert out == {"core": [], "quotient": [[], []]}
    assert ok("decompose", "--mode", "phi", "-r", "2", "--invert", json.dumps(out)) == []


def test_hooks_and_bf():
    assert ok("hooks", "-r", "1", "--bottom", "6,5,5,3,1,1") == {"1": 4, "2": 2}
    assert ok("bf", "-a", "2", "-b", "1", "7,6,4,4,2,1")["statistic"] == 5
    bf = ok("bf", "-a", "4", "-b", "2", "7,6,4,4,2,1")
    assert bf["statistic"] == 2 == len(bf["squares"])


def test_cores():
    assert ok("cores", "-r", "2", "--max-size", "6") == [[], [1], [2, 1], [3, 2, 1]]


def test_list():
    code, out, _ = run(["list"])
    assert code == 0 and "NO_MOD" in out and "conjecture" in out
    rows = ok("list", "--json")
    assert len(rows) >= 30
    assert {"id", "title", "conjecture", "parameters", "default_caps"} <= set(rows[0])


def test_ctable():
    rows = ok("ctable", "--p-cap", "1")
    assert rows and all(len(row) == 5 for row in rows)


def test_verify_json_report():
    rep = ok("verify", "NO", "--cap", "T=8", "--json")
    assert rep["status"] == "PASS"
    assert rep["first_mismatch"] is None
    assert set(rep) == {"identity", "params", "status", "first_mismatch", "elapsed_ms"}
    assert rep["params"]["caps"] == {"T": 8}


def test_verify_several_ids_in_parallel(monkeypatch):
    monkeypatch.setenv("HOOKLAB_THREADS", "2")
    reps = ok("verify", "GF_PART", "GF_CORES", "NO", "--json")
    assert [r["identity"] for r in reps] == ["GF_PART", "GF_CORES", "NO"]
    assert {r["status"] for r in reps} == {"PASS"}


def test_verify_human_table():
    code, out, _ = run(["verify", "GF_PART", "CONJ_QT_MOD", "--cap", "T=4"])
    assert code == 0
    assert "CONJECTURE-CONSISTENT" in out and "PASS" in out


@pytest.mark.parametrize("argv", [
    ["decompose", "--mode", "xi", "-r", "3", "1"],
    ["decompose", "--mode", "phi", "-r", "0", "1"],
    ["decompose", "--mode", "phi", "-r", "3", "1,2"],
    ["decompose", "--mode", "phi", "-r", "3", "--invert", "not json"],
    ["decompose", "--mode", "phi", "-r", "3", "--invert", '{"core":[2],"quotient":[[]]}'],
    ["hooks", "--bogus", "1"],
    ["verify", "NOPE"],
    ["verify", "NO", "--cap", "T"],
    ["verify", "NO", "--rho", "CONST_Z"],
    ["verify", "MULT_NEW", "-r", "2", "--core", "2"],
    [],
])
def test_errors_exit_three_with_one_line(argv):
    code, out, err = run(argv)
    assert code == 3
    if argv[:1] != ["verify"] or argv[1] == "NOPE":
        assert out == ""  # verify still prints the ERROR report for a known id
    assert err.startswith("hooklab: error: ") and err.count("\n") == 1


def test_bad_thread_count(monkeypatch):
    monkeypatch.setenv("HOOKLAB_THREADS", "many")
    assert run(["verify", "NO", "GF_PART"])[0] == 3


def test_main_writes_streams(capsys):
    assert main(["cores", "-r", "3", "--max-size", "2"]) == 0
    assert capsys.readouterr().out == "[[],[1],[2],[1,1]]\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hooklab", "verify", "GF_PART", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "PASS"
