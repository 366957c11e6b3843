"""Time evolution in the three equivalent pictures.

Exact propagation goes through one spectral decomposition of H and the
resulting unitary U(t) = exp(-i t H / hbar):
  Schrodinger:  psi(t) = U(t) psi0
  Heisenberg:   A(t)   = U(t)^dag A0 U(t)
  von Neumann:  xi(t)  = U(t) xi0 U(t)^dag
The orientations are locked by the relatedness requirement that the
momentum map sends the Schrodinger flow to the von Neumann flow and that
both pictures agree on every expectation value.  In bracket form the dual
flow is xi_dot = [H, xi]_- / hbar and the Heisenberg flow is
A_dot = -[H, A]_- / hbar.

A classic RK4 integrator of the same linear equations is provided as a
drifting baseline for convergence measurements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import CONVENTIONS, lie_bracket
from .kernel import (
    DimensionError,
    dagger,
    eig_hermitian,
    frobenius,
    random_hermitian,
    require_square,
)
from .report import VerificationReport
from . import dual, kahler

PICTURES = ("schrodinger", "heisenberg", "vonneumann")
METHODS = ("exact", "rk4")


@dataclass(frozen=True)
class EvolutionSpec:
    hamiltonian: np.ndarray
    t_final: float
    steps: int
    hbar: float = 1.0
    picture: str = "schrodinger"
    method: str = "exact"

    def __post_init__(self):
        require_square(self.hamiltonian)
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not np.isfinite(self.t_final):
            raise ValueError("t_final must be finite")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if self.picture not in PICTURES:
            raise ValueError(f"picture must be one of {PICTURES}, got {self.picture!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_final, self.steps + 1)


def _propagators(spec: EvolutionSpec):
    # one eigendecomposition of H, reused for every sample
    dec = eig_hermitian(spec.hamiltonian)
    v = dec.eigenvectors
    vd = dagger(v)
    for t in spec.times():
        phases = np.exp(-1j * t * dec.eigenvalues / spec.hbar)
        yield t, (v * phases) @ vd


def schrodinger_flow(spec: EvolutionSpec, psi0) -> np.ndarray:
    """Samples of psi(t) = U(t) psi0, shape (steps+1, n)."""
    psi0 = np.asarray(psi0, dtype=complex)
    n = require_square(spec.hamiltonian).shape[0]
    if psi0.shape != (n,):
        raise DimensionError(f"state has shape {psi0.shape}, Hamiltonian dim {n}")
    return np.array([u @ psi0 for _, u in _propagators(spec)])


def _check_dim(spec: EvolutionSpec, m) -> np.ndarray:
    m = require_square(m)
    n = spec.hamiltonian.shape[0]
    if m.shape[0] != n:
        raise DimensionError(f"operator dim {m.shape[0]} vs Hamiltonian dim {n}")
    return m


def heisenberg_flow(spec: EvolutionSpec, a0) -> np.ndarray:
    """Samples of A(t) = U(t)^dag A0 U(t), shape (steps+1, n, n)."""
    a0 = _check_dim(spec, a0)
    return np.array([dagger(u) @ a0 @ u for _, u in _propagators(spec)])


def vonneumann_flow(spec: EvolutionSpec, xi0) -> np.ndarray:
    """Samples of xi(t) = U(t) xi0 U(t)^dag, shape (steps+1, n, n)."""
    xi0 = _check_dim(spec, xi0)
    return np.array([u @ xi0 @ dagger(u) for _, u in _propagators(spec)])


def exact_flow(spec: EvolutionSpec, initial) -> np.ndarray:
    if spec.picture == "schrodinger":
        return schrodinger_flow(spec, initial)
    if spec.picture == "heisenberg":
        return heisenberg_flow(spec, initial)
    return vonneumann_flow(spec, initial)


def _rhs(spec: EvolutionSpec):
    h = spec.hamiltonian
    hbar = spec.hbar
    if spec.picture == "schrodinger":
        return lambda y: (-1j / hbar) * (h @ y)
    if spec.picture == "heisenberg":
        return lambda y: -lie_bracket(h, y) / hbar
    return lambda y: lie_bracket(h, y) / hbar


@dataclass
class Rk4Result:
    times: np.ndarray
    trajectory: np.ndarray
    drift: dict = field(default_factory=dict)


def rk4_flow(spec: EvolutionSpec, initial) -> Rk4Result:
    """Classic fourth-order integration of the picture's linear equation.

    Drift diagnostics record the per-sample deviation of the quantities the
    exact flow conserves (norm, or trace and spectrum).
    """
    rhs = _rhs(spec)
    y = np.asarray(initial, dtype=complex).copy()
    dt = spec.t_final / spec.steps
    samples = [y.copy()]
    for _ in range(spec.steps):
        k1 = rhs(y)
        k2 = rhs(y + dt / 2 * k1)
        k3 = rhs(y + dt / 2 * k2)
        k4 = rhs(y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        samples.append(y.copy())
    traj = np.array(samples)
    drift = {}
    if spec.picture == "schrodinger":
        norms = np.linalg.norm(traj, axis=1)
        drift["norm"] = float(np.max(np.abs(norms - norms[0])))
    else:
        traces = np.array([np.trace(m).real for m in traj])
        drift["trace"] = float(np.max(np.abs(traces - traces[0])))
        w0 = eig_hermitian((traj[0] + dagger(traj[0])) / 2).eigenvalues
        spectrum_dev = 0.0
        for m in traj:
            w = eig_hermitian((m + dagger(m)) / 2).eigenvalues
            spectrum_dev = max(spectrum_dev, float(np.max(np.abs(w - w0))))
        drift["spectrum"] = spectrum_dev
    return Rk4Result(times=spec.times(), trajectory=traj, drift=drift)


def mu_relatedness_check(spec: EvolutionSpec, psi0, n_observables: int = 3,
                         seed: int = 0, tol: float = 1e-9) -> VerificationReport:
    """The momentum map intertwines the three exact flows.

    Checks at every sample time that mu(psi(t)) equals the von Neumann
    evolution of mu(psi0), and that Heisenberg and Schrodinger pictures
    agree on the expectations of seeded random observables.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    n = spec.hamiltonian.shape[0]
    psis = schrodinger_flow(spec, psi0)
    rho0 = kahler.momentum_map(psi0)
    rhos = vonneumann_flow(spec, rho0)
    scale = max(1.0, float(np.vdot(psi0, psi0).real))
    mu_res = max(frobenius(kahler.momentum_map(p) - r) for p, r in zip(psis, rhos)) / scale

    obs = [random_hermitian(n, seed, 77, j) for j in range(n_observables)]
    exp_res = 0.0
    for a0 in obs:
        a_t = heisenberg_flow(spec, a0)
        for p, a in zip(psis, a_t):
            lhs = float(np.vdot(p, a0 @ p).real)
            rhs = float(np.vdot(psi0, a @ psi0).real)
            exp_res = max(exp_res, abs(lhs - rhs) / max(1.0, scale * frobenius(a0)))

    report = VerificationReport(
        title="momentum-map relatedness of flows",
        seed=seed,
        trials=spec.steps + 1,
        tol=tol,
        conventions=CONVENTIONS.to_dict(),
        details={"picture_orientation": "xi_dot = [H, xi]_- / hbar"},
    )
    report.add("mu_of_schrodinger_equals_vonneumann_of_mu", mu_res)
    report.add("heisenberg_schrodinger_expectations_agree", exp_res)
    return report


def conserved_report(spec: EvolutionSpec, trajectory, seed: int = 0,
                     tol: float = 1e-9) -> VerificationReport:
    """Deviations of conserved quantities over a trajectory.

    Also spot-checks that conjugation by the flow's unitary preserves both
    algebra products on seeded random observables.
    """
    traj = np.asarray(trajectory)
    n = spec.hamiltonian.shape[0]
    report = VerificationReport(
        title=f"conservation monitors ({spec.picture})",
        seed=seed,
        trials=traj.shape[0],
        tol=tol,
        conventions=CONVENTIONS.to_dict(),
    )
    h = spec.hamiltonian
    if spec.picture == "schrodinger":
        norms = np.linalg.norm(traj, axis=1)
        report.add("state_norm", float(np.max(np.abs(norms - norms[0]))))
        e_h = np.array([kahler.expectation(h, p) for p in traj])
        report.add("energy_expectation", float(np.max(np.abs(e_h - e_h[0]))))
    elif spec.picture == "vonneumann":
        traces = np.array([np.trace(m).real for m in traj])
        report.add("trace", float(np.max(np.abs(traces - traces[0]))))
        w0 = eig_hermitian(traj[0]).eigenvalues
        report.add("spectrum", max(
            float(np.max(np.abs(eig_hermitian(m).eigenvalues - w0))) for m in traj))
        e_h = np.array([float(np.trace(m @ h).real) for m in traj])
        report.add("energy_expectation", float(np.max(np.abs(e_h - e_h[0]))))
        purity = np.array([float(np.trace(m @ m).real) for m in traj])
        report.add("purity", float(np.max(np.abs(purity - purity[0]))))
    else:
        # Heisenberg: H itself and the spectrum of each observable are constant
        report.add("hamiltonian_constant", max(
            frobenius(m - h) for m in heisenberg_flow(spec, h)))
        w0 = eig_hermitian(traj[0]).eigenvalues
        report.add("spectrum", max(
            float(np.max(np.abs(eig_hermitian(m).eigenvalues - w0))) for m in traj))

    from .algebra import jordan_product
    from .kernel import unitary_exp

    u = unitary_exp(h, spec.t_final, spec.hbar)
    a = random_hermitian(n, seed, 88, 0)
    b = random_hermitian(n, seed, 88, 1)
    ua, ub = u @ a @ dagger(u), u @ b @ dagger(u)
    scale = max(1.0, frobenius(a) * frobenius(b))
    report.add("jordan_product_preserved",
               frobenius(u @ jordan_product(a, b) @ dagger(u) - jordan_product(ua, ub)) / scale)
    report.add("lie_bracket_preserved",
               frobenius(u @ lie_bracket(a, b) @ dagger(u) - lie_bracket(ua, ub)) / scale)
    return report
