import json
from importlib import resources

import numpy as np
import pytest

jsonschema = pytest.importorskip("jsonschema")

from geomqm.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from geomqm.kernel import random_hermitian, serialize_matrix
from conftest import PAULI_X, PAULI_Z


@pytest.fixture(scope="module")
def schema():
    text = resources.files("geomqm").joinpath("schema/report_schema.json").read_text()
    return json.loads(text)


def write_matrix(path, m):
    path.write_bytes(serialize_matrix(m))
    return str(path)


def run_json(capsys, *argv):
    code = run([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestExitCodes:
    def test_verify_ok(self, capsys):
        assert run(["verify", "--dim", "2", "--trials", "5"]) == EXIT_OK

    def test_verify_bad_dim(self, capsys):
        assert run(["verify", "--dim", "0"]) == EXIT_USAGE

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == EXIT_USAGE

    def test_missing_file(self, capsys, tmp_path):
        code = run(["eigen", "--operator", str(tmp_path / "nope.json")])
        assert code == EXIT_USAGE
        assert "no such file" in capsys.readouterr().err

    def test_non_hermitian_operator(self, capsys, tmp_path):
        m = np.array([[0.0, 1.0], [2.0, 0.0]], dtype=complex)
        path = write_matrix(tmp_path / "m.json", m)
        assert run(["eigen", "--operator", path]) == EXIT_USAGE

    def test_eigen_non_convergence(self, capsys, tmp_path):
        path = write_matrix(tmp_path / "a.json", random_hermitian(4, 1))
        code = run(["eigen", "--operator", path, "--max-iter", "2", "--tol", "1e-14"])
        assert code == EXIT_FAIL
        assert "did not converge" in capsys.readouterr().err

    def test_malformed_matrix(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "data": [[')
        assert run(["eigen", "--operator", str(path)]) == EXIT_USAGE


class TestJsonReports:
    def test_verify_schema(self, capsys, schema):
        code, payload = run_json(capsys, "verify", "--dim", "2", "--trials", "5")
        assert code == EXIT_OK
        jsonschema.validate(payload, schema)
        assert payload["passed"] is True

    def test_eigen_schema_and_oracle(self, capsys, schema, tmp_path):
        path = write_matrix(tmp_path / "a.json", random_hermitian(3, 2))
        code, payload = run_json(capsys, "eigen", "--operator", path)
        assert code == EXIT_OK
        jsonschema.validate(payload, schema)
        res = payload["results"]
        assert abs(res["eigenvalue"] - res["oracle_eigenvalue"]) <= 1e-7

    def test_star_schema_and_value(self, capsys, schema, tmp_path):
        pa = write_matrix(tmp_path / "a.json", PAULI_Z)
        pb = write_matrix(tmp_path / "b.json", PAULI_X)
        px = write_matrix(tmp_path / "xi.json", PAULI_X)
        code, payload = run_json(capsys, "star", "--a", pa, "--b", pb, "--xi", px)
        assert code == EXIT_OK
        jsonschema.validate(payload, schema)
        # Z * X at xi = X: Jordan part vanishes, star = i y-hat(X) = 0 + 0i
        assert payload["results"]["jordan_part"] == pytest.approx(0.0, abs=1e-12)

    def test_distributions_schema(self, capsys, schema, tmp_path):
        path = write_matrix(tmp_path / "xi.json", np.diag([1.0, -0.5]).astype(complex))
        code, payload = run_json(capsys, "distributions", "--point", path,
                                 "--trials", "5")
        assert code == EXIT_OK
        jsonschema.validate(payload, schema)
        assert payload["results"]["ranks"] == {"Lambda": 2, "R": 4, "Zero": 2, "One": 4}

    def test_su2demo_schema(self, capsys, schema):
        code, payload = run_json(capsys, "su2demo")
        assert code == EXIT_OK
        jsonschema.validate(payload, schema)
        assert all(c["max_residual"] == 0.0
                   for r in payload["reports"] for c in r["checks"])

    def test_output_file(self, capsys, schema, tmp_path):
        out = tmp_path / "report.json"
        code = run(["su2demo", "--json", "--output", str(out)])
        assert code == EXIT_OK
        jsonschema.validate(json.loads(out.read_text()), schema)


class TestEvolve:
    def test_csv_norm_constant(self, capsys, tmp_path):
        h = write_matrix(tmp_path / "h.json", random_hermitian(2, 3))
        psi = write_matrix(tmp_path / "psi.json",
                           np.array([1.0, 1.0j]) / np.sqrt(2))
        csv_path = tmp_path / "traj.csv"
        code = run(["evolve", "--hamiltonian", h, "--initial", psi,
                    "--t", "5", "--steps", "50", "--csv", str(csv_path)])
        assert code == EXIT_OK
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "t,re_0,im_0,re_1,im_1"
        assert len(lines) == 52
        for line in lines[1:]:
            vals = [float(x) for x in line.split(",")]
            norm = np.hypot(vals[1], vals[3]) ** 2 + np.hypot(vals[2], vals[4]) ** 2
            assert norm == pytest.approx(1.0, abs=1e-10)

    def test_check_mu(self, capsys, tmp_path):
        h = write_matrix(tmp_path / "h.json", random_hermitian(3, 4))
        psi = write_matrix(tmp_path / "psi.json",
                           np.array([1.0, 0.0, 0.0], dtype=complex))
        code = run(["evolve", "--hamiltonian", h, "--initial", psi,
                    "--check-mu", "--steps", "10"])
        assert code == EXIT_OK

    def test_check_mu_wrong_picture(self, capsys, tmp_path):
        h = write_matrix(tmp_path / "h.json", PAULI_Z)
        a = write_matrix(tmp_path / "a.json", PAULI_X)
        code = run(["evolve", "--hamiltonian", h, "--initial", a,
                    "--picture", "heisenberg", "--check-mu"])
        assert code == EXIT_USAGE

    def test_vonneumann_non_state_warns(self, capsys, tmp_path):
        h = write_matrix(tmp_path / "h.json", PAULI_Z)
        xi = write_matrix(tmp_path / "xi.json", 2 * PAULI_X)
        code = run(["evolve", "--hamiltonian", h, "--initial", xi,
                    "--picture", "vonneumann", "--steps", "5"])
        assert code == EXIT_OK
        assert "not a density matrix" in capsys.readouterr().err

    def test_rk4_method(self, capsys, tmp_path):
        h = write_matrix(tmp_path / "h.json", random_hermitian(2, 5))
        psi = write_matrix(tmp_path / "psi.json", np.array([1.0, 0.0], dtype=complex))
        code = run(["evolve", "--hamiltonian", h, "--initial", psi,
                    "--method", "rk4", "--t", "1", "--steps", "200"])
        assert code == EXIT_OK


class TestDeterminism:
    def test_verify_repeatable(self, capsys):
        _, p1 = run_json(capsys, "verify", "--dim", "3", "--trials", "10",
                         "--seed", "7")
        _, p2 = run_json(capsys, "verify", "--dim", "3", "--trials", "10",
                         "--seed", "7")
        assert p1 == p2

    def test_seed_changes_residuals(self, capsys):
        _, p1 = run_json(capsys, "verify", "--dim", "3", "--trials", "10",
                         "--seed", "1")
        _, p2 = run_json(capsys, "verify", "--dim", "3", "--trials", "10",
                         "--seed", "2")
        assert p1 != p2

    def test_threads_flag_does_not_change_results(self, capsys):
        _, p1 = run_json(capsys, "verify", "--dim", "2", "--trials", "10",
                         "--threads", "1")
        _, p2 = run_json(capsys, "verify", "--dim", "2", "--trials", "10",
                         "--threads", "4")
        p1.pop("threads"), p2.pop("threads")
        assert p1 == p2
