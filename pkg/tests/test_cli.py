import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from superform.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

# (golden name, argv, expected exit status)
CASES = [
    ("check_det2", ["check", "det2.form", "--closed"], 0),
    ("check_square", ["check", "square.form"], 1),
    ("check_path", ["check", "oneform.path"], 0),
    ("diff_det2", ["diff", "det2.form"], 0),
    ("diff_square", ["diff", "square.form"], 1),
    ("diff_dual_divergence", ["diff", "divergence.form", "--dual"], 0),
    ("diff_path", ["diff", "oneform.path"], 0),
    ("ber_generic", ["ber", "generic11.matrix"], 0),
    ("ber_sign", ["ber", "sign.matrix", "--alpha", "1"], 0),
    ("integrate", ["integrate", "berezin.form", "--vars", "phi1,phi2"], 0),
    ("transform", ["transform", "theta12.form", "--p", "2"], 0),
    ("iso_a_up", ["iso", "divergence.form", "--a", "1", "0", "--up"], 0),
    ("iso_a_roundtrip", ["iso", "divergence.form", "--a", "1", "0", "--roundtrip"], 0),
    ("iso_a_square", ["iso", "divergence.form", "--a", "1", "0", "--square"], 0),
    ("iso_b_up", ["iso", "oneform.path", "--b", "--up"], 0),
    ("iso_b_square", ["iso", "oneform.path", "--b", "--square"], 0),
    ("variation_closed", ["variation", "closed_copath.form"], 0),
    ("variation_nonclosed", ["variation", "nonclosed_copath.form"], 0),
    ("variation_frame", ["variation", "square.form", "--frame"], 1),
    ("bad_input", ["check", "bad.form"], 2),
]


def run(argv, capsys):
    argv = [str(DATA / a) if a.endswith((".form", ".path", ".matrix")) else a for a in argv]
    status = main(argv)
    return status, capsys.readouterr()


@pytest.mark.parametrize("name,argv,status", CASES, ids=[c[0] for c in CASES])
def test_golden_json(name, argv, status, capsys):
    code, out = run(argv + ["--json"], capsys)
    assert code == status
    data = json.loads(out.out)
    assert data["exit"] == status
    path = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(out.out)
    assert out.out == path.read_text()


@pytest.mark.parametrize("name,argv,status", CASES, ids=[c[0] for c in CASES])
def test_text_mode_status(name, argv, status, capsys):
    code, out = run(argv, capsys)
    assert code == status
    if status == 2:
        assert out.err.startswith("error:")
    else:
        assert out.out.strip()


def test_deterministic_output(capsys):
    argv = ["transform", "theta12.form", "--p", "2", "--json"]
    first = run(argv, capsys)[1].out
    assert run(argv, capsys)[1].out == first


def test_reported_values(capsys):
    _, out = run(["ber", "generic11.matrix"], capsys)
    assert "result:" in out.out
    code, out = run(["variation", "nonclosed_copath.form", "--json"], capsys)
    assert json.loads(out.out)["output"]["euler_lagrange"] == ["3*x1"]
    _, out = run(["diff", "square.form", "--json"], capsys)
    assert json.loads(out.out)["output"]["jet2"] == "jxx[1][1][1]"


def test_missing_file(capsys, tmp_path):
    code, out = run(["check", str(tmp_path / "absent.form")], capsys)
    assert code == 2


def test_undeclared_symbol(capsys, tmp_path):
    f = tmp_path / "u.form"
    f.write_text("dims 1|0\ncodeg 1|0\nrole dual\nbody:\nq*p[1][1]\n")
    code, out = run(["check", str(f)], capsys)
    assert code == 2 and "q" in out.err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superform.cli", "check", str(DATA / "det2.form")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("right-covariance: pass")
