"""Jordan-Lie algebra structure on Hermitian observables.

The two products, the invariant trace form, the associator defect and a
randomized identity-verification suite.

Sign conventions (recorded in ConventionSet and every report):
  [A, B]_- := -i (AB - BA)      Hermitian-valued Lie bracket
  A o B    := (AB + BA) / 2     Jordan product
  <A, B>   := Tr(AB) / 2        invariant trace form
With these, the associator identity reads
  (A o B) o C - A o (B o C) = (hbar / 4) [[A, C]_-, B]_-   with hbar = 1,
and the su(2) coordinate brackets come out as {x, y} = 2z and cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernel import frobenius, make_rng, random_hermitian, require_same_dim
from .report import VerificationReport


@dataclass(frozen=True)
class ConventionSet:
    """Frozen normalization constants; carried into every report."""

    hbar: float = 1.0
    lie_sign: str = "[A,B]_- = -i(AB - BA)"
    # ratio G(de_A, de_A) / dispersion on unit vectors, fixed once by the
    # n=2 finite-difference oracle in the test suite
    kappa: float = 4.0

    def to_dict(self) -> dict:
        return {"hbar": self.hbar, "lie_sign": self.lie_sign, "kappa": self.kappa}


CONVENTIONS = ConventionSet()


def lie_bracket(a, b) -> np.ndarray:
    """[A, B]_- = -i(AB - BA); Hermitian, antisymmetric."""
    a, b = require_same_dim(a, b)
    return -1j * (a @ b - b @ a)


def jordan_product(a, b) -> np.ndarray:
    """A o B = (AB + BA)/2; Hermitian, commutative."""
    a, b = require_same_dim(a, b)
    return (a @ b + b @ a) / 2


def trace_form(a, b) -> float:
    """<A, B> = Tr(AB)/2; symmetric, real on Hermitian inputs."""
    a, b = require_same_dim(a, b)
    return float((np.trace(a @ b) / 2).real)


def associator_defect(a, b, c) -> np.ndarray:
    """(A o B) o C - A o (B o C); equals (1/4)[[A,C]_-, B]_- here."""
    a, b, c = require_same_dim(a, b, c)
    return jordan_product(jordan_product(a, b), c) - jordan_product(a, jordan_product(b, c))


def _rel(residual: float, *norms: float) -> float:
    scale = max(1.0, float(np.prod(norms)))
    return residual / scale


def verify_jordan_lie(
    n: int,
    trials: int,
    seed: int,
    tol: float = 1e-9,
    bracket_perturbation: float = 0.0,
) -> VerificationReport:
    """Randomized residuals for the complete Jordan-Lie identity suite.

    ``bracket_perturbation`` is a test hook: it adds a scaled Jordan term to
    the Lie bracket so the Jacobi detector can be shown to fire.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    def bracket(a, b):
        out = lie_bracket(a, b)
        if bracket_perturbation:
            out = out + bracket_perturbation * jordan_product(a, b)
        return out

    hbar = CONVENTIONS.hbar
    worst: dict[str, float] = {}

    def record(name, value):
        worst[name] = max(worst.get(name, 0.0), value)

    for k in range(trials):
        a = random_hermitian(n, seed, k, 0)
        b = random_hermitian(n, seed, k, 1)
        c = random_hermitian(n, seed, k, 2)
        na, nb, nc = frobenius(a), frobenius(b), frobenius(c)

        jac = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
        record("jacobi", _rel(frobenius(jac), na, nb, nc))

        record("jordan_commutativity",
               _rel(frobenius(jordan_product(a, b) - jordan_product(b, a)), na, nb))

        a2 = jordan_product(a, a)
        jid = jordan_product(jordan_product(a, b), a2) - jordan_product(a, jordan_product(b, a2))
        record("jordan_identity", _rel(frobenius(jid), na, na, na, nb))

        inv_lie = trace_form(bracket(a, b), c) - trace_form(a, bracket(b, c))
        record("trace_invariance_lie", _rel(abs(inv_lie), na, nb, nc))
        inv_jor = trace_form(jordan_product(a, b), c) - trace_form(a, jordan_product(b, c))
        record("trace_invariance_jordan", _rel(abs(inv_jor), na, nb, nc))

        leib = bracket(a, jordan_product(b, c)) \
            - jordan_product(bracket(a, b), c) - jordan_product(b, bracket(a, c))
        record("leibniz", _rel(frobenius(leib), na, nb, nc))

        assoc = associator_defect(a, b, c) - (hbar / 4) * bracket(bracket(a, c), b)
        record("associator", _rel(frobenius(assoc), na, nb, nc))

    report = VerificationReport(
        title="Jordan-Lie identity suite",
        seed=seed,
        trials=trials,
        tol=tol,
        conventions=CONVENTIONS.to_dict(),
        details={"dim": n, "bracket_perturbation": bracket_perturbation},
    )
    for name in (
        "jacobi",
        "jordan_commutativity",
        "jordan_identity",
        "trace_invariance_lie",
        "trace_invariance_jordan",
        "leibniz",
        "associator",
    ):
        report.add(name, worst[name])
    return report
