"""Geometric formulation of finite-level quantum mechanics.

Observables form a Jordan-Lie algebra; its two products geometrize into
tensor fields on the dual space, whose symplectic realization on C^n via
the momentum map recovers the Hilbert-space picture, geometric
eigensolving and the three equivalent dynamical pictures.
"""

from .algebra import (
    CONVENTIONS,
    ConventionSet,
    associator_defect,
    jordan_product,
    lie_bracket,
    trace_form,
    verify_jordan_lie,
)
from .dual import (
    hat_eval,
    is_state,
    lambda_eval,
    r_eval,
    random_state,
    star_eval,
    su2_golden_tables,
)
from .dynamics import EvolutionSpec, schrodinger_flow, heisenberg_flow, vonneumann_flow
from .kahler import (
    dispersion,
    eigensolve_gradient_flow,
    expectation,
    f_quadratic,
    momentum_map,
    pullback_checks,
)
from .kernel import (
    DimensionError,
    MatrixParseError,
    NumericalError,
    SpectralDecomposition,
    eig_hermitian,
    is_hermitian,
    parse_matrix,
    random_hermitian,
    serialize_matrix,
    unitary_exp,
)
from .report import IdentityCheck, VerificationReport

__version__ = "0.1.0"
