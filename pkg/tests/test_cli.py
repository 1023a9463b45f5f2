from __future__ import annotations

import json
import subprocess
import sys

import pytest

from planex import __version__
from planex.cli import SCHEMA, main, result_digest
from planex.graph import complete, join, path
from planex.graph6 import decode, encode


def run(capsys, *argv: str) -> tuple[int, dict | None, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_construct_report_schema(capsys):
    code, rep, _ = run(capsys, "construct", "K2_N2", "--n", "8")
    assert code == 0
    assert rep["schema"] == SCHEMA
    man = rep["manifest"]
    assert set(man) == {"command", "parameters", "version", "seed", "elapsed", "digest"}
    assert man["command"] == "construct" and man["version"] == __version__
    assert man["digest"] == result_digest(rep["result"])
    assert rep["result"]["edges"] == 12
    assert decode(rep["result"]["graph6"]).num_edges == 12


def test_digest_stable_across_runs(capsys):
    _, a, _ = run(capsys, "turan", "--n", "6", "--pattern", "2C")
    _, b, _ = run(capsys, "turan", "--n", "6", "--pattern", "2C", "--jobs", "2")
    assert a["manifest"]["digest"] == b["manifest"]["digest"]
    assert a["result"]["optimum"] == 11


def test_digest_ignores_timing():
    assert result_digest({"x": 1, "elapsed": 3.0}) == result_digest({"x": 1, "elapsed": 9.0})
    assert result_digest({"x": 1}) != result_digest({"x": 2})


def test_construct_gn_member_needs_seed(capsys):
    code, _, err = run(capsys, "construct", "GN_MEMBER", "--n", "9")
    assert code == 2 and "--seed" in err
    code, a, _ = run(capsys, "construct", "GN_MEMBER", "--n", "9", "--seed", "4")
    _, b, _ = run(capsys, "construct", "GN_MEMBER", "--n", "9", "--seed", "4")
    assert code == 0 and a["result"] == b["result"]
    assert a["manifest"]["seed"] == 4


def test_construct_bad_parameter(capsys):
    code, _, err = run(capsys, "construct", "DOUBLE_WHEEL", "--n", "3")
    assert code == 2 and "n >= 5" in err


def test_check_exit_codes(capsys):
    code, rep, _ = run(capsys, "check", "--graph6", "C~", "--pattern", "C4")
    assert code == 1 and rep["result"]["free"] is False
    assert len(rep["result"]["witness"]["cycles"][0]) == 4
    code, rep, _ = run(capsys, "check", "--graph6", "C~", "--pattern", "2C")
    assert code == 0 and rep["result"]["free"] is True
    assert rep["result"]["two_cycles"] == {"certificate": "wheel"}
    assert rep["result"]["faces"]["sizes"] == {"3": 4}


def test_check_fan_witness_and_embedding(capsys):
    fan = encode(join(complete(1), path(4)))
    code, rep, _ = run(capsys, "check", "--graph6", fan, "--pattern", "K1P4", "--embedding")
    assert code == 1
    w = rep["result"]["witness"]
    assert len(w["path"]) == 4 and "apex" in w
    assert "rotation" in rep["result"]["embedding"]


def test_check_bad_graph6(capsys):
    code, rep, err = run(capsys, "check", "--graph6", "C~~", "--pattern", "C4")
    assert code == 2 and rep is None
    assert "byte offset 2" in err


def test_check_graph6_file(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(">>graph6<<Bw\n")
    code, rep, _ = run(capsys, "check", "--graph6-file", str(f), "--pattern", "C3")
    assert code == 1
    empty = tmp_path / "empty.g6"
    empty.write_text("\n")
    code, _, _ = run(capsys, "check", "--graph6-file", str(empty), "--pattern", "C3")
    assert code == 2
    code, _, _ = run(capsys, "check", "--pattern", "C3")
    assert code == 2


def test_check_bad_pattern(capsys):
    code, _, err = run(capsys, "check", "--graph6", "C~", "--pattern", "Q7")
    assert code == 2 and "Q7" in err


def test_spectral(capsys):
    code, rep, _ = run(capsys, "spectral", "--graph6", "C~", "--vector")
    assert code == 0
    assert rep["result"]["rho"] == pytest.approx(3.0)
    assert rep["result"]["x"] == pytest.approx([1.0] * 4)


def test_turan_witness_file(capsys, tmp_path):
    f = tmp_path / "w.g6"
    code, rep, _ = run(capsys, "turan", "--n", "7", "--pattern", "C4", "--witnesses", str(f))
    assert code == 0
    lines = f.read_text().split()
    assert lines == rep["result"]["witnesses"] and lines
    assert all(decode(s).num_edges == rep["result"]["optimum"] for s in lines)


def test_turan_capacity_exit(capsys):
    code, _, err = run(capsys, "turan", "--n", "11", "--pattern", "C4")
    assert code == 3 and "cap" in err


def test_spex_forest_scope(capsys):
    code, rep, _ = run(capsys, "spex", "--scope", "K2_JOIN_LINEAR_FOREST", "--n", "20", "--pattern", "2C3")
    assert code == 0
    assert rep["result"]["details"]["winners"] == [[3] + [1] * 15]
    code, _, _ = run(capsys, "spex", "--n", "6")
    assert code == 2


def test_out_file(capsys, tmp_path):
    f = tmp_path / "r.json"
    code, rep, _ = run(capsys, "construct", "J_N", "--n", "7", "--out", str(f))
    assert code == 0
    assert json.loads(f.read_text()) == rep


def test_verify_requires_seed_for_sampling_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "grown-family")
    assert code == 2 and "--seed" in err
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2


def test_verify_matrix(capsys):
    code, rep, err = run(capsys, "verify", "--suite", "face-identities", "--suite", "perron-window")
    assert code == 0 and rep["result"]["all_passed"]
    assert [s["name"] for s in rep["result"]["suites"]] == ["face-identities", "perron-window"]
    assert err.count("PASS") == 2


def test_usage_errors_from_argparse():
    with pytest.raises(SystemExit) as info:
        main(["construct", "NOPE", "--n", "5"])
    assert info.value.code == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "planex.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and __version__ in out.stdout
