import numpy as np
import pytest

from geomqm import distributions as dist
from geomqm.algebra import trace_form
from geomqm.kernel import eig_hermitian, random_hermitian
from conftest import PAULI_X, PAULI_Y, PAULI_Z


class TestTensors:
    def test_jhat_central_point(self):
        a = random_hermitian(3, 1)
        assert np.linalg.norm(dist.jhat(np.eye(3), a)) == 0.0

    def test_jhat_pauli(self):
        # [X, Z]_- = -2Y by direct multiplication
        assert np.allclose(dist.jhat(PAULI_Z, PAULI_X), -2 * PAULI_Y)

    def test_rhat_identity_point(self):
        a = random_hermitian(3, 2)
        assert np.allclose(dist.rhat(np.eye(3), a), a)

    def test_rhat_zz(self):
        assert np.allclose(dist.rhat(PAULI_Z, PAULI_Z), np.eye(2))

    def test_rhat_zero_point(self):
        a = random_hermitian(2, 3)
        assert np.linalg.norm(dist.rhat(np.zeros((2, 2)), a)) == 0.0


class TestCommutation:
    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_random_defect(self, n):
        for seed in range(5):
            xi = random_hermitian(n, seed, 0)
            a = random_hermitian(n, seed, 1)
            scale = max(1.0, np.linalg.norm(a) * np.linalg.norm(xi) ** 2)
            assert dist.commutation_defect(xi, a) <= 1e-10 * scale

    def test_identity_point(self):
        assert dist.commutation_defect(np.eye(2), random_hermitian(2, 4)) <= 1e-14

    def test_equal_arguments(self):
        xi = random_hermitian(3, 5)
        assert dist.commutation_defect(xi, xi) <= 1e-13


class TestHermitianBasis:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_orthonormal_under_trace_form(self, n):
        basis = dist.hermitian_basis(n)
        assert len(basis) == n * n
        for i, e in enumerate(basis):
            for j, f in enumerate(basis):
                expected = 1.0 if i == j else 0.0
                assert trace_form(e, f) == pytest.approx(expected, abs=1e-12)

    def test_vectorize_round_trip(self):
        basis = dist.hermitian_basis(3)
        m = random_hermitian(3, 6)
        assert np.allclose(dist.devectorize(dist.vectorize(m, basis), basis), m)


class TestRanks:
    def test_generic_su2_lambda_rank(self):
        xi = np.diag([1.0, -0.5]).astype(complex)
        assert dist.distribution_basis(xi, "Lambda").rank == 2

    def test_central_point_rank_zero(self):
        assert dist.distribution_basis(np.eye(2, dtype=complex), "Lambda").rank == 0

    def test_generic_invertible_one_full(self):
        xi = np.diag([1.0, -0.5]).astype(complex)
        assert dist.distribution_basis(xi, "One").rank == 4

    def test_identity_point_r_full(self):
        xi = np.eye(3, dtype=complex)
        assert dist.distribution_basis(xi, "R").rank == 9
        assert dist.distribution_basis(xi, "Lambda").rank == 0

    def test_dimension_formula(self):
        for seed in range(5):
            xi = random_hermitian(3, seed, 30)
            ranks = {k: dist.distribution_basis(xi, k).rank for k in dist.KINDS}
            assert ranks["Zero"] + ranks["One"] == ranks["Lambda"] + ranks["R"]

    def test_lambda_and_r_inside_one(self):
        xi = random_hermitian(3, 31)
        one = dist.distribution_basis(xi, "One")
        for kind in ("Lambda", "R"):
            sub = dist.distribution_basis(xi, kind)
            for v in sub.basis:
                assert dist.membership_residual(v, one) <= 1e-9

    def test_basis_orthonormal(self):
        xi = random_hermitian(4, 32)
        d = dist.distribution_basis(xi, "Lambda")
        for i, e in enumerate(d.basis):
            for j, f in enumerate(d.basis):
                expected = 1.0 if i == j else 0.0
                assert trace_form(e, f) == pytest.approx(expected, abs=1e-10)


class TestInvolutivity:
    @pytest.mark.parametrize("kind", ["Lambda", "Zero", "One"])
    @pytest.mark.parametrize("n", [2, 3])
    def test_involutive_kinds_pass(self, kind, n):
        report = dist.involutivity_evidence(kind, n, trials=20, seed=5)
        assert report.passed, report.summary()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_r_witness_found(self, n):
        report = dist.involutivity_evidence("R", n, trials=20, seed=5)
        assert report.passed
        assert report.details["witness_residual"] > 1e-8
        assert "xi_real" in report.details["witness_matrices"]

    def test_invalid_kind(self):
        with pytest.raises(ValueError):
            dist.involutivity_evidence("bogus", 2, 1, 0)


class TestOrbitInvariants:
    def test_diag_readoff(self):
        inv = dist.orbit_invariants(np.diag([1.0, -1.0]).astype(complex))
        assert np.allclose(inv["spectrum"], [-1.0, 1.0])
        assert inv["rank"] == 2
        assert inv["signature"] == 0

    def test_sylvester_invariance(self):
        xi = random_hermitian(3, 40)
        rng = np.random.default_rng(4)
        t = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert abs(np.linalg.det(t)) > 1e-6
        before = dist.orbit_invariants(xi)
        after = dist.orbit_invariants(t @ xi @ t.conj().T)
        assert (before["rank"], before["signature"]) == (after["rank"], after["signature"])

    def test_unitary_spectrum_invariance(self):
        xi = random_hermitian(4, 41)
        u = dist.unitary_from_seed(4, 42)
        before = dist.orbit_invariants(xi)["spectrum"]
        after = dist.orbit_invariants(u @ xi @ u.conj().T)["spectrum"]
        assert np.allclose(before, after, atol=1e-10)

    def test_spectrum_constant_along_lambda_flow(self):
        # the Lambda distribution is tangent to unitary orbits
        from geomqm.dynamics import EvolutionSpec, vonneumann_flow

        xi = random_hermitian(3, 43)
        h = random_hermitian(3, 44)
        spec = EvolutionSpec(hamiltonian=h, t_final=2.0, steps=20, picture="vonneumann")
        w0 = eig_hermitian(xi).eigenvalues
        for sample in vonneumann_flow(spec, xi):
            assert np.allclose(eig_hermitian(sample).eigenvalues, w0, atol=1e-10)
