import json
import shutil
import subprocess

import pytest

from torusrat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_subgroups_and_candidates(capsys):
    code, out, _ = run(capsys, "subgroups", "sym:4")
    assert code == 0 and out.strip().endswith("11 classes")
    code, out, _ = run(capsys, "candidates", "sym:4")
    assert code == 0 and out.strip().endswith("7 candidates")


@pytest.mark.parametrize("argv,code", [
    (["analyze", "sym:3", "--class", "1"], 0),
    (["analyze", "alt:5", "--class", "V4"], 0),
    (["analyze", "sl:2,3", "--class", "C3"], 20),
    (["analyze", "frob:5,4", "--class", "C4"], 10),
    (["analyze", "frob:5,4", "--class", "C4", "--no-fast-path"], 10),
    (["analyze", "alt:5", "--class", "V4", "--sylow-only"], 40),
])
def test_analyze_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "sym:3", "--class", "C2", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "stably_rational" and "timings" not in rec


@pytest.mark.parametrize("argv", [
    ["analyze", "sym:4", "--class", "C2"],          # two classes, no filter
    ["analyze", "sym:3", "--class", "Q8"],
    ["analyze", "sym:3", "--class", "#99"],
    ["analyze", "sym:3", "--class", "S3"],          # nontrivial core
    ["analyze", "nosuch:1", "--class", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_class_filters(capsys):
    code, out, _ = run(capsys, "analyze", "sym:4", "--class", "C2", "--derived", "1", "--json")
    assert code == 20
    assert json.loads(out)["derived"] == "1"
    code, _, _ = run(capsys, "analyze", "sym:4", "--class", "#1", "--json")
    assert code == 20


def test_certificate_cycle(capsys, tmp_path):
    cert = tmp_path / "s3.cert"
    code, _, _ = run(capsys, "analyze", "sym:3", "--class", "1", "--no-fast-path",
                     "--emit-cert", str(cert))
    assert code == 0 and cert.exists()
    code, out, _ = run(capsys, "verify-cert", str(cert))
    assert code == 0 and out.startswith("OK")
    lines = cert.read_text().splitlines()
    i = lines.index("matrix") + 2
    lines[i] = " ".join(str(int(x) + 1) if k == 0 else x for k, x in enumerate(lines[i].split()))
    cert.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify-cert", str(cert))
    assert code == 1 and "FAIL" in out


def test_resolution_cycle(capsys, tmp_path):
    res = tmp_path / "a4.res"
    run(capsys, "analyze", "alt:4", "--class", "C3", "--emit-resolution", str(res))
    code, out, _ = run(capsys, "verify-resolution", str(res))
    assert code == 0 and out.startswith("OK")
    res.write_text("group alt:4\n")
    assert run(capsys, "verify-resolution", str(res))[0] == 1


def test_reproduce_thm11_small(capsys):
    code, out, _ = run(capsys, "reproduce", "thm1.1", "--group", "alt:4", "--group", "sym:3")
    assert code == 0
    assert "0 failed" in out.splitlines()[-1]


def test_reproduce_gated(capsys):
    code, out, _ = run(capsys, "reproduce", "conj1.4-d3")
    assert code == 0 and out.startswith("SKIP")


def test_reproduce_bad_case(capsys):
    assert run(capsys, "reproduce", "thm1.3", "--case", "nope")[0] == 2


@pytest.mark.skipif(shutil.which("torusrat") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["torusrat", "analyze", "sym:3", "--class", "C2"], capture_output=True, text=True)
    assert p.returncode == 0 and "stably_rational" in p.stdout
