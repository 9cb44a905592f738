import json
import subprocess
import sys
from importlib import resources

import pytest

from spinorforms.cli import run

DATA = resources.files("spinorforms").joinpath("data")
NULL = str(DATA.joinpath("null_metric.json"))
LC = str(DATA.joinpath("ansatz_lc.json"))
FLAT = str(DATA.joinpath("ansatz_scalar_flat.json"))
PHI = "-e127 - e135 + e146 + e236 + e245 - e347 + e567"


def report(capsys, argv):
    code = run(["--json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_g2_verify_example(capsys, fixture_data):
    code, rep = report(capsys, ["g2", "verify", "--signature", fixture_data["signs"],
                                "--l", str(fixture_data["l"]), "--phi", PHI])
    assert code == 0
    assert rep["certificates"]["c_squared"] == "1"
    assert set(rep) == {"command", "verdicts", "certificates", "timing"}


def test_stab_compute_example(capsys):
    code, rep = report(capsys, ["stab", "compute", "--metric", NULL, "--alpha", "e123"])
    assert code == 0
    certs = rep["certificates"]
    assert certs["dim"] == 14 and certs["killing_radical_lower_central_dims"] == [6, 3, 0]
    assert certs["radical_salamon"] == "(0,0,0,12,13,23)"


def test_square_check_rejects_e124(capsys):
    code, rep = report(capsys, ["square", "check", "--metric", NULL, "--l", "1", "--alpha", "e124"])
    assert code == 1 and rep["verdicts"]["is_square"] is False


def test_square_check_with_witness(capsys):
    code, rep = report(capsys, ["square", "check", "--metric", NULL, "--l", "1",
                                "--alpha", "e123", "--beta", "e456"])
    assert code == 0 and rep["certificates"]["kind"] == "isotropic"


def test_parse_error_exit_2(capsys):
    code = run(["square", "check", "--alpha", "e12 + q"])
    err = capsys.readouterr().err
    assert code == 2 and "column 7" in err and "^" in err


def test_witness_error_exit_2(capsys):
    code = run(["square", "check", "--metric", NULL, "--alpha", "e123", "--beta", "e145"])
    assert code == 2 and "--beta" in capsys.readouterr().err


def test_bad_metric_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"metric": [1, 2,\n')
    assert run(["algebra", "selftest", "--metric", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["square", "check"])
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["algebra", "selftest"],
    ["g2", "decompose", "--alpha", "e12 + e123"],
    ["g2", "lemma", "--samples", "3"],
    ["spinor", "square", "--spinor", "1,0,0,0,0,0,0,1"],
    ["master", "check", "--a", "1 + e1 + e23 + e123"],
    ["metric", "christoffel", "--ansatz", LC, "--components"],
    ["metric", "contorsion", "--ansatz", LC],
    ["metric", "scalar", "--ansatz", FLAT],
    ["metric", "lc-check", "--ansatz", LC],
])
def test_subcommands_succeed(capsys, argv):
    code, rep = report(capsys, argv)
    assert code == 0 and all(rep["verdicts"].values())


def test_lc_check_precondition(tmp_path, capsys):
    path = tmp_path / "a.json"
    path.write_text(json.dumps({"H": ["0", "0", "0"], "E": ["1 + z", "1", "1"], "G": "1"}))
    assert run(["metric", "lc-check", "--ansatz", str(path)]) == 2
    assert "E1 depends on z" in capsys.readouterr().err


def test_bad_polynomial_in_ansatz(tmp_path, capsys):
    path = tmp_path / "a.json"
    path.write_text(json.dumps({"H": ["x1 + w", "0", "0"], "E": ["1", "1", "1"], "G": "1"}))
    assert run(["metric", "scalar", "--ansatz", str(path)]) == 2
    assert "column 6" in capsys.readouterr().err


def test_output_is_deterministic(capsys):
    argv = ["g2", "decompose", "--alpha", "e12 + e123"]
    _, a = report(capsys, argv)
    _, b = report(capsys, argv)
    a.pop("timing")
    b.pop("timing")
    assert a == b


def test_text_output(capsys):
    assert run(["g2", "lemma", "--samples", "2"]) == 0
    out = capsys.readouterr().out
    assert "PASS  item4" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spinorforms", "square", "check",
                           "--metric", NULL, "--alpha", "e124"], capture_output=True, text=True)
    assert proc.returncode == 1 and "FAIL  is_square" in proc.stdout
