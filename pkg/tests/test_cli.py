import json
import math
import subprocess
import sys

import pytest

from jorgensen.cli import parse_complex, run
from jorgensen.render import read_ppm


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("text, z", [
    ("1+2i", 1 + 2j), ("-2+0i", -2), ("i", 1j), ("-i", -1j), ("0.1839 + 0.9356i", 0.1839 + 0.9356j),
    ("3", 3), ("2-i", 2 - 1j), ("1e-3+2j", 0.001 + 2j),
])
def test_parse_complex(text, z):
    assert parse_complex(text) == pytest.approx(z)


def test_realize_example(capsys):
    out = call_json(capsys, "jnum-realize", "--r", "1")
    assert out["family"] == "sst"
    assert out["a"] == 1.0
    assert out["j"] == pytest.approx(1.0, abs=1e-12)


def test_realize_other_families(capsys):
    assert call_json(capsys, "jnum-realize", "--r", "6")["family"] == "kissing"
    out = call_json(capsys, "jnum-realize", "--r", "20")
    assert out["family"] == "theta" and out["j"] == pytest.approx(20)


def test_family(capsys):
    out = call_json(capsys, "jnum-family", "--family", "sst", "--a", "1.0")
    assert out["j"] == pytest.approx(1.0)
    out = call_json(capsys, "jnum-family", "--family", "maskit", "--mu", "-1+2i")
    assert out["j"] == 4.0 and out["mu"] == {"re": -1.0, "im": 2.0}
    out = call_json(capsys, "jnum-family", "--family", "theta", "--theta", str(math.pi / 4))
    assert out["j"] == pytest.approx(8.0)


def test_psi(capsys):
    out = call_json(capsys, "psi", "--x", "-2+0i", "--slope", "1/2")
    assert out["psi_sq_minus4"]["re"] == pytest.approx(-8.0)


def test_psi_inf_example(capsys):
    out = call_json(capsys, "psi-inf", "--x", "0.5+1.3228756i")
    assert out["psi_inf"] == pytest.approx(1.0, abs=1e-6)
    assert out["argmin"] == "1/2"
    assert set(out) >= {"psi_inf", "argmin", "converged"}


def test_endpoint(capsys, tmp_path):
    out = call_json(capsys, "endpoint", "--slope", "1/2")
    assert out["e"]["re"] == pytest.approx(0.5)
    assert out["e"]["im"] == pytest.approx(math.sqrt(7) / 2, abs=1e-10)
    csv_path = tmp_path / "e.csv"
    out = call_json(capsys, "endpoint", "--slope", "3/8", "--seed", "-0.3,1.07", "--csv", str(csv_path))
    assert out["e"]["re"] == pytest.approx(-0.2992, abs=5e-5)
    assert csv_path.read_text().startswith("slope,p,q,re,im")


def test_los(capsys):
    out = call_json(capsys, "los", "--slope", "2/5")
    assert out["mu"]["re"] == pytest.approx(0.3016, abs=5e-5)
    assert out["mu"]["im"] == pytest.approx(0.9041, abs=5e-5)
    assert abs(complex(out["sigma"]["re"], out["sigma"]["im"])) == pytest.approx(1)


def test_slice(capsys, tmp_path):
    ppm, csv_path = tmp_path / "s.ppm", tmp_path / "s.csv"
    out = call_json(capsys, "slice", "--bounds", "-7,8,-5,5", "--size", "12x8", "--depth", "10",
                    "--nodes", "300", "--out", str(ppm), "--csv", str(csv_path))
    img = read_ppm(ppm)
    assert (img.width, img.height) == (12, 8)
    assert out["inside"] + out["black"] == 96
    assert len(csv_path.read_text().splitlines()) == 97


def test_limitset(capsys, tmp_path):
    ppm = tmp_path / "l.ppm"
    out = call_json(capsys, "limitset", "--sigma", "i", "--mu", "0.1839+0.9356i", "--len", "5",
                    "--size", "40x30", "--out", str(ppm))
    assert out["points_drawn"] > 0
    assert read_ppm(ppm).width == 40


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "--all", "--seed", "3")
    assert code == 0
    lines = out.splitlines()
    assert all(l.startswith("PASS") for l in lines[:-1])


def test_argument_errors_exit_2(capsys):
    for argv in (["psi", "--x", "foo", "--slope", "1/2"], ["nope"],
                 ["jnum-family", "--family", "kissing"], ["jnum-realize", "--r", "0.5"],
                 ["slice", "--size", "3by4", "--out", "x.ppm"]):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_numeric_failure_exit_1(capsys):
    code, out, err = call(capsys, "endpoint", "--slope", "5/7")
    assert code == 1
    assert err.startswith("NoSeedError")
    assert out == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jorgensen", "jnum-realize", "--r", "4"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["j"] == pytest.approx(4.0)
