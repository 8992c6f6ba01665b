import json
import re
import subprocess
import sys

import pytest

from torsionkit.cli import read_poly_text, run
from torsionkit.construct import build_Z

X100 = "718766754945489455304472257065075294400"


def test_x100_bound():
    code, out = run(["bounds", "--N", "99", "--d", "100", "--char", "0"])
    assert code == 0
    assert f"combined={X100} " in out


def test_degree_three_relation():
    code, out = run(["relation", "--m", "2", "--n", "3", "--verify"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "relation m=2 n=3 s=7 lambda=1"
    assert lines[3] == "x1*x2*x3*y7^2 - x1*x3*y5^2 - x2*x3*y6^2 + x3*y4^2"
    assert "witnesses: 2/2 verified" in lines


def test_missing_poly_file():
    code, out = run(["twisting", "--m", "2", "--poly-file", "missing.txt"])
    assert code == 2 and out.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["bounds", "--N", "4", "--d", "5", "--bogus"],
    ["frobnicate"],
    ["bounds", "--N", "x"],
    ["construct", "cyclic", "--N", "3", "--m", "2"],
])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_domain_error_is_input_error():
    assert run(["construct", "cyclic", "--N", "3", "--d", "4", "--m", "2"])[0] == 2


def test_twisting_verdicts(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# units: t\nt*(x0^2+x1^2+x2^2)^2 - x0^2*x1*x2\n")
    code, out = run(["twisting", "--m", "2", "--poly-file", str(f)])
    assert code == 0 and "verdict: true" in out
    code, out = run(["twisting", "--m", "2", "--poly-file", str(f), "--strict-units"])
    assert code == 1 and "verdict: false" in out and "witness" in out


def test_construct_output_reparses(tmp_path):
    code, out = run(["construct", "z", "--N", "4", "--m", "3"])
    assert code == 0
    assert out.startswith("# source: ")
    f = tmp_path / "z.txt"
    f.write_text(out)
    p = read_poly_text(f.read_text())
    assert p == build_Z(4, None, 3).equation
    assert str(p) == out.strip().splitlines()[-1]


def test_probe_pipeline(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text(run(["construct", "example", "--N", "3", "--d", "4", "--m", "2", "--p", "3"])[1])
    code, out = run(["probe", "smooth", "--file", str(f), "--q", "7", "--assign", "s=2"])
    assert code == 0 and "points examined: 2801" in out and "NoSingularPointFound" in out
    code, out = run(["probe", "smooth", "--file", str(f), "--q", "7", "--assign", "s=1"])
    assert code == 1 and "witness: (0, 1, 1, 0, 0)" in out


def test_integral_probe_echoes_seed(tmp_path):
    f = tmp_path / "z.txt"
    f.write_text(run(["construct", "z", "--N", "3", "--m", "2"])[1])
    first = run(["--seed", "11", "probe", "integral", "--file", str(f)])
    second = run(["probe", "integral", "--file", str(f), "--seed", "11"])
    assert first == second
    assert "seed: 11" in first[1]


def numbers(text):
    return sorted(re.findall(r"-?\d+", text))


@pytest.mark.parametrize("argv", [
    ["bounds", "--N", "99", "--d", "100"],
    ["bounds", "cyclic", "--N", "9", "--m", "5"],
    ["bounds", "asok", "--N", "6", "--m", "3"],
    ["residue", "--n", "3", "--m", "4", "--e", "3"],
    ["pfister", "--m", "3", "--n", "2", "--coefficient", "3"],
])
def test_json_and_text_agree(argv):
    code_t, text = run(argv)
    code_j, js = run(argv + ["--format", "json"])
    assert code_t == code_j == 0
    json.loads(js)
    assert set(numbers(text)) <= set(numbers(js))


def test_output_is_deterministic():
    argv = ["construct", "cyclic", "--N", "9", "--d", "15", "--m", "5"]
    assert run(argv) == run(argv)
    assert run(argv)[0] == 0


def test_y0_check():
    code, out = run(["construct", "y0-check", "--N", "9", "--m", "5"])
    assert code == 0 and "section residual: 0" in out


def test_relation_file_round_trip(tmp_path):
    f = tmp_path / "rel.txt"
    body = "\n".join(run(["relation", "--m", "3", "--n", "2"])[1].splitlines())
    f.write_text(body + "\n")
    code, out = run(["relation", "--file", str(f), "--verify"])
    assert code == 0 and "witnesses: 1/1 verified" in out
    f.write_text(body.replace("root=y2", "root=y1") + "\n")
    assert run(["relation", "--file", str(f), "--verify"])[0] == 1


def test_residue_file(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("symbol m=4 coeff=2 vars=x1,x2\n1 0\n0 1\n")
    code, out = run(["residue", "--file", str(f)])
    assert code == 0 and "certified order: 2" in out


def test_examples_listing_and_runs():
    code, out = run(["example"])
    assert code == 0 and "x100" in out
    for name in ("x100", "relation3", "conic", "explicit"):
        assert run(["example", name])[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torsionkit", "bounds", "--N", "4", "--d", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "combined=30 upper=120"
