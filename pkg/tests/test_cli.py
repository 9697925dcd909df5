import json
import subprocess
import sys
from pathlib import Path

import pytest

from weylreduce.cli import main

FIXTURE = Path(__file__).parent / "fixtures" / "example_chain.json"
EXAMPLE = ["--group", "SL", "--rank", "5", "--mu", "2,1,0,-1,-2", "--w", "4321234"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_example(capsys):
    code, out, err = run(capsys, "reduce", *EXAMPLE, "--kappa", "0")
    assert code == 0
    cert = json.loads(out)
    assert 4 <= len(cert["steps"]) <= 6
    assert cert["elliptic"] is True
    assert cert["group"] == "SL_5"
    assert "non-empty" in err


def test_reduce_not_reuman(capsys):
    code, _, err = run(capsys, "reduce", "--group", "SL", "--rank", "5", "--mu", "2,1,0,-1,-2", "--w", "1")
    assert code == 2
    assert "not Reuman type" in err


def test_reduce_rejects_non_additive_pair(capsys):
    # v = s1, w = s1 s2 s1 has l(v^-1 w) = 2 < 1 + 3
    code, _, err = run(capsys, "reduce", "--group", "GL", "--rank", "3", "--mu", "3,1,0", "--v", "1", "--w", "121")
    assert code == 2
    assert "not additive" in err


def test_reduce_longest_element_gl3(capsys):
    code, out, _ = run(capsys, "reduce", "--group", "GL", "--rank", "3", "--mu", "3,1,0", "--w", "121")
    assert code == 0
    cert = json.loads(out)
    assert cert["elliptic"] and cert["kappa"] == 4
    assert len(cert["terminal"]["word"]) == 2


def test_reduce_kottwitz_mismatch(capsys):
    code, _, err = run(capsys, "reduce", "--group", "GL", "--rank", "5", "--mu", "2,1,0,-1,-2",
                       "--w", "4321234", "--kappa", "3")
    assert code == 1
    assert "mismatch" in err


@pytest.mark.parametrize("argv", [
    ["reduce", "--group", "GL", "--mu", "1,0", "--w", "1"],
    ["reduce", "--group", "SL", "--rank", "3", "--mu", "2,1,0", "--w", "12"],
    ["reduce", "--group", "GL", "--rank", "3", "--mu", "0,1,2", "--w", "12"],
    ["reduce", "--group", "GL", "--rank", "3", "--mu", "2,1,0", "--w", "19"],
    ["reduce", "--group", "GL", "--rank", "3", "--w", "12"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_reduce_text_format(capsys):
    code, out, _ = run(capsys, "reduce", *EXAMPLE, "--format", "text")
    assert code == 0
    assert "case 1" in out and "elliptic=True" in out


def test_reduce_output_is_byte_deterministic(capsys):
    _, a, _ = run(capsys, "reduce", *EXAMPLE)
    _, b, _ = run(capsys, "reduce", "--group", "SL", "--rank", "5", "--x", "t[2,1,0,-1,-2] * w[4 3 2 1 2 3 4]")
    assert a == b


def test_verify_fixture(capsys):
    code, out, _ = run(capsys, "verify", str(FIXTURE))
    assert code == 0
    assert out.startswith("ok: 4 steps")


def test_verify_tampered(capsys, tmp_path):
    data = json.loads(FIXTURE.read_text())
    data["steps"][1]["lengths"][0] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1
    assert "step 1" in out


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", str(bad))[0] == 2
    bad.write_text(json.dumps({"group": "SL_5"}))
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_verify_empty_certificate_on_elliptic(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce", "--group", "SL", "--rank", "5", "--mu", "2,1,0,-1,-2", "--w", "2314")
    assert code == 0
    assert json.loads(out)["steps"] == []
    path = tmp_path / "empty.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "ok: 0 steps" in out


def test_round_trip_through_a_pipe():
    cmd = [sys.executable, "-m", "weylreduce.cli"]
    red = subprocess.run(cmd + ["reduce", *EXAMPLE], capture_output=True, text=True, check=True)
    ver = subprocess.run(cmd + ["verify", "-"], input=red.stdout, capture_output=True, text=True)
    assert ver.returncode == 0, ver.stdout + ver.stderr


@pytest.mark.parametrize("argv", [
    ["sweep", "--group", "SL", "--rank", "4", "--suite", "lemmas"],
    ["sweep", "--group", "G2", "--suite", "geck-pfeiffer"],
    ["sweep", "--group", "GL", "--rank", "3", "--suite", "lengths", "--samples", "4"],
    ["sweep", "--group", "C2", "--suite", "reduction"],
])
def test_sweeps_pass(capsys, argv, monkeypatch):
    monkeypatch.setenv("WEYL_REDUCE_THREADS", "1")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["reports"]
    for rep in report["reports"]:
        assert rep["counterexamples"] == []


def test_sweep_rank_two_skips_type_a_lemmas(capsys):
    code, out, _ = run(capsys, "sweep", "--group", "C2", "--suite", "lemmas")
    assert code == 0
    skipped = [r["lemma"] for r in json.loads(out)["reports"] if "skipped" in r]
    assert "commuting-descents-commute" in skipped


def test_sweep_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--group", "G2", "--suite", "nope"])
    assert exc.value.code == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--group", "SL", "--rank", "5",
                       "--x", "t[2,1,0,-2,-1] * w[321234]", "--format", "json")
    assert code == 0
    flags = json.loads(out)
    assert flags["v"] == [4]
    assert flags["additive"] and flags["reuman_type"] and flags["reuman_criterion"]
    assert not flags["elliptic"]
    assert flags["length"] == 26
