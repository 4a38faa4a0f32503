import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import jsonschema
import pytest

from ktrace.cli import RunConfig, main

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"
MANIFEST = json.loads((FIXTURES / "manifest.json").read_text())


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("case", MANIFEST, ids=[c["file"] for c in MANIFEST])
def test_golden_files(case):
    code, out = run(case["argv"])
    assert code == case["exit_code"]
    assert out == (FIXTURES / case["file"]).read_text()


def test_single_fixed_point_text():
    code, out = run(["inner-moduli", "--r", "1", "--n", "1", "--k", "0", "--f", "1", "--g", "1"])
    assert code == 0
    assert out == "(1) / ((1 - z2)*(1 - z1))\n"


def test_rank_zero_check_reports_zero_series():
    code, out = run(["check-theorem-a", "--r", "0", "--n", "2", "--kmax", "6", "--format", "json"])
    doc = json.loads(out)
    assert code == 0
    tail = [c for c in doc["result"]["checks"] if c["k"] >= doc["result"]["k0"]]
    assert len(tail) >= 3
    for c in tail:
        assert c["status"] == "equal"
        assert c["lhs_series"]["coefficients"] == [] and c["rhs_series"]["coefficients"] == []


JSON_RUNS = {
    "inner-grass": ["--N", "3", "--m", "1", "--f", "s[1]", "--g", "s[1]"],
    "inner-moduli": ["--r", "2", "--n", "1", "--k", "1", "--f", "s[1]"],
    "check-grass": ["--N", "2", "--deg", "2"],
    "check-theorem-a": ["--r", "1", "--n", "1", "--kmax", "2", "--D-z", "2"],
    "zn": ["--r", "1", "--n", "2"],
    "zinf-check": ["--r", "1", "--D-z", "2"],
    "fock-check": ["--quick"],
    "fn-probe": ["--Ns", "2,3", "--w", "w1=1"],
    "selftest": ["--criteria", "6,9"],
}


@pytest.mark.parametrize("command", sorted(JSON_RUNS))
def test_json_output_matches_schema(command):
    code, out = run([command, *JSON_RUNS[command], "--format", "json"])
    assert code in (0, 1)
    schema = json.loads((SCHEMAS / f"{command}.schema.json").read_text())
    jsonschema.validate(json.loads(out), schema)


def test_error_json_matches_schema():
    code, out = run(["inner-moduli", "--r", "1", "--n", "1", "--f", "s[1,", "--format", "json"])
    assert code == 2
    doc = json.loads(out)
    jsonschema.validate(doc, json.loads((SCHEMAS / "inner-moduli.schema.json").read_text()))
    assert doc["error"]["type"] == "ParseError"
    assert doc["error"]["offset"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["no-such-command"],
        ["inner-grass", "--m", "1"],
        ["inner-grass", "--N", "2", "--m", "3"],
        ["check-theorem-a", "--r", "1", "--n", "1", "--kmin", "4", "--kmax", "2"],
        ["zn", "--r", "1", "--n", "1", "--w", "w1"],
        ["zn", "--r", "-1", "--n", "1"],
        ["selftest", "--criteria", "12"],
        ["inner-grass", "--N", "2", "--m", "1", "--g", "e[1]^"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_mismatch_exits_1():
    code, out = run(["check-grass", "--N", "2", "--deg", "2"])
    assert code == 1
    assert out.startswith("FAIL ")


def test_bad_thread_env_is_usage_error(monkeypatch):
    monkeypatch.setenv("KTRACE_THREADS", "-2")
    assert run(["zn", "--r", "1", "--n", "1"])[0] == 2


def test_output_file_byte_identical(tmp_path, monkeypatch):
    argv = ["check-theorem-a", "--r", "1", "--n", "2", "--kmax", "4", "--D-z", "3", "--f", "s[1]", "--format", "json"]
    paths = []
    for i, threads in enumerate(("1", "3", "1")):
        monkeypatch.setenv("KTRACE_THREADS", threads)
        p = tmp_path / f"out{i}.json"
        assert main(argv + ["--output", str(p)]) == 0
        paths.append(p.read_bytes())
    assert paths[0] == paths[1] == paths[2]


def test_config_serialized_into_output():
    _, out = run(["zn", "--r", "1", "--n", "1", "--seed", "5", "--w", "w1=2/3", "--format", "json"])
    cfg = json.loads(out)["config"]
    assert cfg["seed"] == 5 and cfg["weights"] == [["w1", "2/3"]] and cfg["D_z"] == 4
    assert RunConfig(command="zn", r=1, n=1).validate().to_json_obj()["w_mode"] == "specialized"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ktrace.cli", "zn", "--r", "1", "--n", "1", "--w", "w1=1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "(1) / ((1 - z2)*(1 - z1))"
