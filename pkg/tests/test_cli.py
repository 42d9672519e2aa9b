import io
import json
import subprocess
import sys

import numpy as np
import pytest

from pctpdm.cli import main
from conftest import sign_changes


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _num(c):
    try:
        return float(c)
    except ValueError:
        return c


def table(text):
    """Parse CSV output (skipping '#' echo lines) into header and float rows."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    head = lines[0].split(",")
    rows = [[_num(c) for c in ln.split(",")] for ln in lines[1:]]
    return head, rows


def test_spectrum_kratzer():
    code, out, _ = run("spectrum", "--potential", "kratzer", "--De", "1", "--ye", "1", "--n-max", "2")
    assert code == 0
    head, rows = table(out)
    assert head == ["n", "ell", "E_analytic"]
    assert np.allclose([r[2] for r in rows], [0.5, 7 / 9, 0.875], rtol=1e-12)


def test_spectrum_morse():
    code, out, _ = run("spectrum", "--potential", "morse", "--D", "8", "--morse-a", "1", "--n-max", "1")
    assert code == 0
    assert [r[2] for r in table(out)[1]] == pytest.approx([-6.125, -3.125], abs=1e-12)


def test_spectrum_kratzer_zero_depth():
    code, out, _ = run("spectrum", "--De", "0", "--n-max", "3", "--ell", "0,1")
    assert code == 0
    rows = table(out)[1]
    assert len(rows) == 8 and all(r[2] == 0.0 for r in rows)


def test_spectrum_morse_omits_unbound_levels():
    code, out, err = run("spectrum", "--potential", "morse", "--D", "8", "--n-max", "6")
    assert code == 0
    assert len(table(out)[1]) == 4
    assert "unbound" in err


def test_wavefunction_uniform_x_equals_y():
    _, ymode, _ = run("wavefunction", "--n", "1", "--coordinate", "y", "--samples", "501")
    _, xmode, _ = run("wavefunction", "--n", "1", "--coordinate", "x", "--samples", "501")
    ry, rx = table(ymode)[1], table(xmode)[1]
    assert ry == rx


@pytest.mark.parametrize("args", [
    ("--potential", "kratzer", "--profile", "uniform"),
    ("--potential", "kratzer", "--profile", "lorentzian a=20 q=1", "--coordinate", "x"),
    ("--potential", "morse", "--profile", "exponential q=1", "--coordinate", "x"),
    ("--potential", "morse", "--profile", "squared_lorentzian a=14 b=1", "--coordinate", "x"),
], ids=["kratzer-y", "kratzer-lorentzian-x", "morse-exponential-x", "morse-sqlor-x"])
@pytest.mark.parametrize("n", [0, 2])
def test_wavefunction_norm_and_nodes(args, n):
    code, out, _ = run("wavefunction", "--n", str(n), "--samples", "20001", *args)
    assert code == 0
    rows = np.array(table(out)[1])
    assert abs(np.trapezoid(rows[:, 1] ** 2, rows[:, 0]) - 1) <= 1e-6
    assert sign_changes(rows[:, 1]) == n


def test_wavefunction_missing_state():
    code, _, err = run("wavefunction", "--potential", "morse", "--n", "9")
    assert code == 2 and "error" in err


def test_verify_uniform_kratzer():
    code, out, _ = run("verify", "--tol", "1e-5", "--ell", "0,1,2", "--n-max", "3")
    assert code == 0
    rows = table(out)[1]
    assert len(rows) == 12 and all(r[-1] == "pass" for r in rows)


def test_verify_lorentzian_kratzer():
    code, out, _ = run("verify", "--profile", "lorentzian a=20 q=1", "--grid-points", "16000", "--n-max", "1")
    assert code == 0
    data = json.loads(run("verify", "--profile", "lorentzian a=20 q=1", "--grid-points", "16000",
                          "--n-max", "1", "--format", "json")[1])
    assert data["passed"] is True


def test_verify_wrong_correction_sign_fails():
    code, out, err = run("verify", "--profile", "lorentzian a=20 q=1", "--grid-points", "16000",
                         "--n-max", "1", "--correction-sign", "minus")
    assert code == 1
    assert "FAIL" in err and "fail" in out


def test_audit_verdicts_and_exit_status():
    expect = {"lorentzian a=1 q=1": ("21", "consistent"),
              "squared_lorentzian a=1 b=1": ("26", "consistent"),
              "exponential q=2": ("30", "discrepant")}
    for prof, (eq, verdict) in expect.items():
        code, out, _ = run("audit", "--profile", prof)
        assert code == 0
        head, rows = table(out)
        assert head == ["equation", "verdict", "max_deviation", "argmax"]
        line = [ln for ln in out.splitlines() if ln.startswith(eq + ",")][0]
        assert line.split(",")[1] == verdict
    line = [ln for ln in run("audit", "--profile", "exponential q=2")[1].splitlines() if ln.startswith("30,")][0]
    assert float(line.split(",")[2]) > 1.0


def test_audit_morse_forms():
    for prof, eq in (("lorentzian a=1 q=1", "45"), ("squared_lorentzian a=1 b=1", "47"), ("exponential q=1", "49")):
        code, out, _ = run("audit", "--potential", "morse", "--ell", "1", "--profile", prof)
        assert code == 0
        assert any(ln.startswith(eq + ",discrepant") for ln in out.splitlines())
        assert any(ln.startswith("41-corrected,consistent") for ln in out.splitlines())


def test_sweep_De_monotone():
    code, out, _ = run("sweep", "--param", "De", "--values", "0.5,1,2", "--n-max", "0")
    assert code == 0
    head, rows = table(out)
    assert head == ["De", "n", "ell", "E_analytic"]
    e = [r[3] for r in rows]
    assert [r[0] for r in rows] == [0.5, 1.0, 2.0]
    assert e[0] < e[1] < e[2]


def test_sweep_q_numeric_matches_constant_mass():
    code, out, _ = run("sweep", "--param", "q", "--values", "0.5,1,2", "--profile", "lorentzian a=20",
                       "--n-max", "0", "--grid-points", "16000", "--numeric")
    assert code == 0
    rows = table(out)[1]
    assert len(rows) == 3
    for r in rows:
        assert r[3] == pytest.approx(0.5, rel=1e-12)
        assert r[4] == pytest.approx(r[3], rel=1e-4)


def test_sweep_empty_values():
    assert run("sweep", "--param", "De", "--values", "") == (0, "", "")


def test_sweep_invalid_parameter():
    code, out, err = run("sweep", "--param", "colour", "--values", "1")
    assert code == 2 and out == "" and "sweepable" in err


@pytest.mark.parametrize("argv", [
    ("spectrum", "--De", "-1"),
    ("spectrum", "--profile", "lorentzian a=-1"),
    ("spectrum", "--ell", "x"),
    ("spectrum", "--n-max", "-1"),
    ("verify", "--potential", "morse", "--D", "0.1"),
])
def test_config_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2 and err.startswith("error:")


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[potential]\nkind = kratzer\nDe = 2\nye = 1\n\n[states]\nn_max = 1\nell = 0\n\n"
                   "[output]\nformat = csv\n")
    code, out, _ = run("spectrum", "--config", str(cfg))
    assert code == 0
    assert "# De=2" in out
    _, flag_out, _ = run("spectrum", "--De", "2", "--n-max", "1")
    assert table(flag_out)[1] == table(out)[1]
    code, out, _ = run("spectrum", "--config", str(cfg), "--De", "3")
    assert "# De=3" in out
    _, flag_out, _ = run("spectrum", "--De", "3", "--n-max", "1")
    assert table(flag_out)[1] == table(out)[1]


def test_config_file_bad_key(tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[potential]\nDe = one\n")
    code, _, err = run("spectrum", "--config", str(cfg))
    assert code == 2 and "De" in err


def test_output_is_byte_identical():
    argv = ("verify", "--profile", "lorentzian a=20 q=1", "--grid-points", "4000", "--n-max", "1")
    assert run(*argv)[1] == run(*argv)[1]


def test_json_and_table_formats():
    _, out, _ = run("spectrum", "--format", "json")
    data = json.loads(out)
    assert data["columns"] == ["n", "ell", "E_analytic"]
    assert data["rows"][0]["E_analytic"] == "0.5"
    _, out, _ = run("spectrum", "--format", "table")
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert body[0].split() == ["n", "ell", "E_analytic"]
    assert len({len(ln) for ln in body}) == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pctpdm", "spectrum", "--n-max", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "0,0,0.5"
