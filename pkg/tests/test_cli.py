import json
import shlex
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from pellregion.cli import main

GOLDEN = Path(__file__).parent / "golden"

# (golden name, argv, expected exit code)
CASES = [
    ("fundamental_2", "fundamental 2", 0),
    ("fundamental_4", "fundamental 4", 2),
    ("fundamental_61", "fundamental 61", 0),
    ("fundamental_61_json", "fundamental 61 --json", 0),
    ("count_2_5", "count 2 5", 0),
    ("count_2_5_brute", "count 2 5 --method brute", 0),
    ("count_2_5_formula_json", "count 2 5 --method formula --json", 0),
    ("count_2_6_shift", "count 2 6 --shift 1 0", 0),
    ("count_2_4p999", "count 2 4.999999999999", 0),
    ("count_2_1p5_shift_formula", "count 2 1.5 --shift 1 0 --method formula", 3),
    ("count_2_1p5_shift_exact", "count 2 1.5 --shift 1 0", 0),
    ("count_2_1000_check", "count 2 1000 --check", 0),
    ("count_3_50_shift_check_json", "count 3 50 --shift 2 -1 --check --json", 0),
    ("count_bad_lambda", "count 2 -3", 2),
    ("count_bad_D", "count 2.5 10", 2),
    ("enumerate_2_5", "enumerate 2 5", 0),
    ("enumerate_2_0p5", "enumerate 2 0.5", 0),
    ("enumerate_2_6_shift_csv", "enumerate 2 6 --shift 1 0 --csv", 0),
    ("enumerate_2_6_shift_json", "enumerate 2 6 --shift 1 0 --json", 0),
    ("g_2_5", "g 2 5", 0),
    ("g_2_1", "g 2 1", 0),
    ("g_2_5_floor", "g 2 5 --form floor", 0),
    ("g_2_29_log_json", "g 2 29 --form log --json", 0),
    ("g_2_0p5", "g 2 0.5", 2),
]


def run(argv, capsys):
    code = main(shlex.split(argv))
    out, err = capsys.readouterr()
    return code, out, err


def normalise(out):
    """Drop the only non-deterministic field so JSON output can be compared verbatim."""
    lines = []
    for line in out.splitlines():
        if line.startswith("{"):
            rec = json.loads(line)
            rec.pop("timing_ms", None)
            line = json.dumps(rec, sort_keys=True)
        lines.append(line)
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys):
    got_code, out, err = run(argv, capsys)
    assert got_code == code
    text = normalise(out if code == 0 else err)
    path = GOLDEN / f"{name}.txt"
    assert text == path.read_text()


def test_error_message_is_one_structured_line(capsys):
    code, out, err = run("count 2 1.5 --shift 1 0 --method formula", capsys)
    assert code == 3 and out == ""
    assert len(err.splitlines()) == 1
    rec = json.loads(err)
    assert rec["error"] == "BelowThreshold" and "K=2" in rec["message"]


def _schema():
    return json.loads(resources.files("pellregion").joinpath("schema.json").read_text())


SMOKE = [
    "fundamental 2", "fundamental 61", "fundamental 1000003",
    "count 2 5", "count 7 1e4 --method formula", "count 13 12345.678 --check",
    "count 5 30 --shift -3 2 --check", "count 2 0.5", "count 2 1.5 --shift 1 0 --check",
    "enumerate 2 5", "enumerate 2 0.5", "enumerate 10 1000 --shift 3 -3",
    "g 2 5", "g 3 7/2 --form log", "g 61 1e300 --form floor", "g 2 10 --precision 256",
]


@pytest.mark.parametrize("argv", SMOKE)
def test_json_schema(argv, capsys):
    code, out, _ = run(argv + " --json", capsys)
    assert code == 0
    rec = json.loads(out)
    jsonschema.validate(rec, _schema())
    # round trip is lossless
    assert json.loads(json.dumps(rec)) == rec


def test_big_integers_are_strings(capsys):
    _, out, _ = run("fundamental 61 --json", capsys)
    rec = json.loads(out)
    assert rec["result"]["alpha"] == "1766319049"
    _, out, _ = run("enumerate 61 1e30 --json", capsys)
    rec = json.loads(out)
    assert all(isinstance(v, str) for pt in rec["result"]["solutions"] for v in pt)
    assert rec["inputs"]["lambda"] == "1e30"


def test_lambda_echoed_verbatim(capsys):
    _, out, _ = run("count 2 4.999999999999 --json", capsys)
    rec = json.loads(out)
    assert rec["inputs"]["lambda"] == "4.999999999999"
    assert rec["result"]["count"] == "2"


def test_check_skips_brute_beyond_cap(capsys, monkeypatch):
    monkeypatch.setenv("PELL_SCAN_CAP", "100")
    code, out, _ = run("count 2 1000 --check --json", capsys)
    rec = json.loads(out)
    assert code == 0 and rec["result"]["skipped"] == ["brute_force"]
    code, _, err = run("count 2 1000 --method brute", capsys)
    assert code == 2 and json.loads(err)["error"] == "ScanTooLarge"


def test_parallel_brute(capsys):
    # f(5) = 571 <= 2000 < f(6) = 2131 for D = 3
    code, out, _ = run("count 3 2000 --method brute --parallel 2", capsys)
    assert code == 0 and out == "D=3 lambda=2000 count=22\n"


def test_disagreement_exit_code(capsys, monkeypatch):
    from pellregion import cli
    from pellregion.counting import CountReport

    real = cli._count_one

    def broken(inst, shifted, q, method, workers):
        r = real(inst, shifted, q, method, workers)
        if method.value == "brute_force":
            return CountReport(r.method, r.count + 4, r.max_index + 1)
        return r

    monkeypatch.setattr(cli, "_count_one", broken)
    code, _, err = run("count 2 100 --check", capsys)
    assert code == 4 and json.loads(err)["error"] == "MethodDisagreement"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pellregion", "count", "2", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "D=2 lambda=5 count=6\n"
    proc = subprocess.run([sys.executable, "-m", "pellregion", "fundamental", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
