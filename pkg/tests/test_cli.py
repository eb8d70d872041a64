import csv
import io
import json
import math
import subprocess
import sys

import pytest

from coulomb_sphere.cli import main, to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_free_energy_example(capsys):
    code, out, _ = run(capsys, "free-energy", "--measure", "spherical", "--N", "2",
                       "--alpha", "0", "--c", "0", "--kind", "det")
    assert code == 0
    doc = json.loads(out)
    assert doc["log_z"] == pytest.approx(math.log(0.5), abs=1e-14)
    assert doc["geometry"] == "plane"


def test_free_energy_sphere_geometry(capsys):
    _, out, _ = run(capsys, "free-energy", "--N", "2", "--geometry", "sphere")
    doc = json.loads(out)
    assert doc["log_z"] == pytest.approx(math.log(0.5) + 2 * math.log(2), abs=1e-14)
    assert doc["closed_form_log_z"] == pytest.approx(doc["log_z"], abs=1e-12)


def test_functionals_example(capsys):
    code, out, _ = run(capsys, "functionals", "--measure", "spherical")
    doc = json.loads(out)
    assert code == 0
    assert doc["energy"] == pytest.approx(0.5, abs=1e-12)
    assert doc["entropy"] == pytest.approx(-2.0, abs=1e-12)
    assert doc["u_zero"] == pytest.approx(0.0, abs=1e-12)


def test_norms_csv_columns(capsys):
    code, out, _ = run(capsys, "norms", "--measure", "scaled:a=2", "--N", "3", "--kind",
                       "pfaff", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["j", "tau", "peak", "log_h", "err_estimate"]
    assert len(rows) == 1 + 6


def test_residuals_csv_columns(capsys):
    code, out, _ = run(capsys, "residuals", "--N-grid", "10,20", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["N", "exact", "predicted", "residual"]
    assert [int(r[0]) for r in rows[1:]] == [10, 20]


def test_expansion_json(capsys):
    code, out, _ = run(capsys, "expansion", "--kind", "pfaff", "--alpha", "1", "--N", "50")
    doc = json.loads(out)
    assert code == 0
    assert set(doc["coefficients"]) == {"d1", "d2", "d3", "d4", "d5"}
    assert doc["value"] == pytest.approx(doc["value_n_form"], rel=1e-13)


def test_seventeen_digits():
    assert to_json(0.1) == "0.10000000000000001"
    assert float(to_json(math.pi)) == math.pi
    assert to_json({"a": [1, 2.5, None, True]}) == \
        '{\n  "a": [\n    1,\n    2.5,\n    null,\n    true\n  ]\n}'


def test_determinism_across_threads(capsys):
    args = ["norms", "--measure", "mixture:theta=0.5,a=2", "--N", "12", "--format", "csv"]
    _, one, _ = run(capsys, *args, "--threads", "1")
    _, four, _ = run(capsys, *args, "--threads", "4")
    assert one == four


def test_env_thread_override(capsys, monkeypatch):
    monkeypatch.setenv("COULOMB_SPHERE_THREADS", "3")
    _, a, _ = run(capsys, "free-energy", "--N", "20", "--measure", "scaled:a=0.5")
    monkeypatch.delenv("COULOMB_SPHERE_THREADS")
    _, b, _ = run(capsys, "free-energy", "--N", "20", "--measure", "scaled:a=0.5")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["norms", "--measure", "bogus", "--N", "3"],
    ["norms", "--N", "0"],
    ["norms", "--N", "3", "--alpha", "-1"],
    ["free-energy", "--N", "3", "--kind", "gue"],
    ["residuals", "--N-grid", "20,10"],
    ["residuals", "--N-grid", "10,20", "--fit"],
    ["functionals", "--measure", "mixture:theta=3,a=1"],
    ["verify", "--only", "42"],
    ["frobnicate"],
    [],
])
def test_invalid_arguments_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--only", "3,9")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert [c["criterion"] for c in doc["criteria"]] == [3, 9]
    assert err.count("[PASS]") == 2


def test_verify_failure_exit_3(capsys, monkeypatch):
    from coulomb_sphere import acceptance, cli
    fake = acceptance.CriterionResult(9, "forced", False, "forced failure", 0.0)
    monkeypatch.setitem(acceptance.CRITERIA, 9, lambda: fake)
    code, out, err = run(capsys, "verify", "--only", "9")
    assert code == cli.EXIT_VERIFY
    assert "[FAIL]" in err


def test_computation_failure_exit_1(capsys, monkeypatch):
    from coulomb_sphere import cli
    from coulomb_sphere.errors import IntegrationError

    def boom(*a, **k):
        raise IntegrationError("forced")
    monkeypatch.setattr(cli, "functionals", boom)
    code, out, err = run(capsys, "functionals")
    assert code == 1 and "forced" in err and out == ""


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coulomb_sphere", "functionals", "--format",
                           "csv"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "name,value"
