"""Numerical rho-radius, rational functional calculus and the ``k_rho`` bound."""
from .bounds import (
    BoundReport,
    bck_constant,
    k_drury,
    k_rho,
    okubo_ando_bound,
    quadratic_residual,
    rho_f_constant,
    technical_F,
    verify_cassier_suciu,
    verify_norm_bound,
    verify_zero_preservation,
)
from .errors import (
    ConvergenceError,
    DomainError,
    HypothesisError,
    InputError,
    RhoCalcError,
    SingularityError,
)
from .funcalc import (
    BlaschkeSpec,
    BoundaryGrid,
    RationalFunction,
    cauchy_calculus,
    compose,
    derivative_at_zero,
    eval_matrix,
    eval_scalar,
    herglotz_residual,
    mobius,
    poisson_identity_residual,
    sup_norm,
)
from .linalg import min_eig_hermitian, op_norm, resolvent, spectral_radius
from .rho_core import (
    PositivityCertificate,
    RadiusResult,
    boundary_defect,
    boundary_identity_residual,
    cayley_identity_residual,
    disk_defect,
    is_rho_contraction_boundary,
    is_rho_contraction_disk,
    numerical_radius_oracle,
    poisson_kernel,
    retract_spectrum,
    rho_radius,
)
from .witness import (
    SharpnessRecord,
    jordan_calculus_norm,
    random_blaschke,
    random_contraction,
    sharpness_scan,
    shift_matrix,
)

__all__ = [
    "bck_constant",
    "BlaschkeSpec",
    "boundary_defect",
    "boundary_identity_residual",
    "BoundaryGrid",
    "BoundReport",
    "cauchy_calculus",
    "cayley_identity_residual",
    "compose",
    "ConvergenceError",
    "derivative_at_zero",
    "disk_defect",
    "DomainError",
    "eval_matrix",
    "eval_scalar",
    "herglotz_residual",
    "HypothesisError",
    "InputError",
    "is_rho_contraction_boundary",
    "is_rho_contraction_disk",
    "jordan_calculus_norm",
    "k_drury",
    "k_rho",
    "min_eig_hermitian",
    "mobius",
    "numerical_radius_oracle",
    "okubo_ando_bound",
    "op_norm",
    "poisson_identity_residual",
    "poisson_kernel",
    "PositivityCertificate",
    "quadratic_residual",
    "RadiusResult",
    "random_blaschke",
    "random_contraction",
    "RationalFunction",
    "resolvent",
    "retract_spectrum",
    "rho_f_constant",
    "rho_radius",
    "RhoCalcError",
    "sharpness_scan",
    "SharpnessRecord",
    "shift_matrix",
    "SingularityError",
    "spectral_radius",
    "sup_norm",
    "technical_F",
    "verify_cassier_suciu",
    "verify_norm_bound",
    "verify_zero_preservation",
]

__version__ = "0.1.0"
