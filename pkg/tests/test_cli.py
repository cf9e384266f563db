import csv
import io
import json
import math

import numpy as np
import pytest

from hartmann_susy.cli import main
from hartmann_susy.quasipoly import QuasiPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_json_rows(capsys):
    code, out, _ = run(capsys, "spectrum", "--eta", "1", "--sigma", "1", "--max-excitation", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "spectrum" and doc["params"]["gamma"] == 1.0
    rows = doc["results"]
    assert [(r["nu_prime"], r["n_prime"]) for r in rows] == [(0, 0), (0, 1), (1, 0)]
    assert rows[0]["E_internal"] == -0.125 and rows[0]["energy"] == -0.125
    assert rows[1]["N"] == 3.0 and rows[1]["E_over_eps0"] == pytest.approx(-1 / 9)


def test_spectrum_epsilon0_units(capsys):
    _, out, _ = run(capsys, "spectrum", "--eta", "1", "--sigma", "1", "--max-excitation", "0", "--units", "epsilon0")
    (row,) = json.loads(out)["results"]
    assert row["energy"] == row["E_over_eps0"] == -0.25


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--eta", "1", "--sigma", "1", "--m-min", "-1", "--m-max", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "m,nu_prime,n_prime,M_abs,L,N,E_internal,E_over_eps0"
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 * 6
    assert float(rows[0]["E_internal"]) == -0.125


def test_spectrum_meta_header(capsys):
    _, out, _ = run(capsys, "spectrum", "--eta", "1", "--sigma", "1", "--format", "csv", "--meta")
    assert out.startswith("# hartmann-susy")
    _, out, _ = run(capsys, "spectrum", "--eta", "1", "--sigma", "1", "--meta")
    assert json.loads(out)["meta"]["version"]


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["spectrum", "--eta", "-1", "--sigma", "1"], "--eta"),
        (["spectrum", "--eta", "1", "--sigma", "0"], "--sigma"),
        (["spectrum", "--eta", "1", "--sigma", "1", "--m-min", "2", "--m-max", "1"], "--m-min"),
        (["wavefunction", "--eta", "1", "--sigma", "1", "--samples", "0"], "--samples"),
        (["validate", "--eta", "1", "--sigma", "1", "--grid-n", "3"], "--grid-n"),
    ],
)
def test_bad_flags_exit_2(capsys, argv, flag):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert flag in err and err.startswith("hartmann-susy: error:")


def test_negative_quantum_number_exit_2(capsys):
    code, _, err = run(capsys, "wavefunction", "--eta", "1", "--sigma", "1", "--nu", "-1")
    assert code == 2 and "error" in err


def test_wavefunction_symbolic_lowest(capsys):
    code, out, _ = run(capsys, "wavefunction", "--eta", "1", "--sigma", "1", "--emit", "symbolic")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"] == []
    R = doc["symbolic"]["R"]
    assert R["alpha"] == 1.0 and R["kappa"] == 0.5
    [[k, c]] = R["coeffs"]
    assert k == 0 and c == pytest.approx(1 / math.sqrt(24), rel=1e-14)
    assert doc["symbolic"]["u"]["alpha"] == 2.0


def test_wavefunction_one_node(capsys):
    _, out, _ = run(capsys, "wavefunction", "--eta", "1", "--sigma", "1", "--nprime", "1", "--emit", "symbolic")
    R = QuasiPolynomial.from_json(json.loads(out)["symbolic"]["R"])
    assert len(R.coeffs) == 2
    roots = np.roots(R.coeffs[::-1])
    assert np.sum(roots.real > 0) == 1


def test_wavefunction_samples_match_symbolic(capsys):
    _, out, _ = run(capsys, "wavefunction", "--eta", "1.3", "--sigma", "0.9", "--m", "2", "--nprime", "2", "--samples", "51")
    doc = json.loads(out)
    rows = doc["results"]
    assert len(rows) == 51 and rows[0]["r"] == 0.0 and rows[0]["R"] == 0.0
    R = QuasiPolynomial.from_json(doc["symbolic"]["R"])
    u = QuasiPolynomial.from_json(doc["symbolic"]["u"])
    scale = max(abs(row["R"]) for row in rows)
    for row in rows:
        assert abs(R(row["r"]) - row["R"]) <= 1e-12 * scale
        assert abs(u(row["r"]) - row["u"]) <= 1e-12 * max(abs(x["u"]) for x in rows)


def test_wavefunction_csv_samples(capsys):
    code, out, _ = run(capsys, "wavefunction", "--eta", "1", "--sigma", "1", "--emit", "samples", "--format", "csv", "--samples", "5")
    assert code == 0
    assert out.splitlines()[0] == "r,R,u" and len(out.splitlines()) == 6


def test_wavefunction_symbolic_csv_rejected(capsys):
    code, _, err = run(capsys, "wavefunction", "--eta", "1", "--sigma", "1", "--format", "csv")
    assert code == 2 and "--emit" in err


def test_potential(capsys):
    code, out, _ = run(capsys, "potential", "--eta", "1", "--sigma", "1", "--r-max", "4", "--samples", "2")
    assert code == 0
    rows = json.loads(out)["results"]
    assert [r["r"] for r in rows] == [2.0, 4.0]
    assert rows[0]["V"] == pytest.approx(-0.375, rel=1e-15)


def test_potential_on_axis_exit_2(capsys):
    code, _, err = run(capsys, "potential", "--eta", "1", "--sigma", "1", "--theta", "0")
    assert code == 2 and "--theta" in err


def test_validate_reference_set(capsys):
    code, out, _ = run(capsys, "validate", "--eta", "1", "--sigma", "1", "--m", "0", "1", "--max-n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["n_failed"] == 0
    checks = {r["check"] for r in doc["results"]}
    assert {"annihilation", "factorization", "fd_energy", "isospectrality", "ode_ground_state"} <= checks


def test_validate_injected_error_exits_1(capsys):
    code, out, _ = run(capsys, "validate", "--eta", "1", "--sigma", "1", "--suite", "algebra", "--inject-error")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"] and doc["n_failed"] >= 1


def test_validate_algebra_only(capsys):
    _, out, _ = run(capsys, "validate", "--eta", "1", "--sigma", "1", "--suite", "algebra", "--format", "csv")
    checks = {row["check"] for row in csv.DictReader(io.StringIO(out))}
    assert checks and not any(c.startswith("fd_") for c in checks)


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--eta", "0.7", "--sigma", "1.9", "--m-min", "-2", "--m-max", "2", "--format", "csv"],
        ["wavefunction", "--eta", "0.7", "--sigma", "1.9", "--m", "1", "--nu", "1", "--nprime", "2"],
    ],
)
def test_output_is_deterministic(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and first
