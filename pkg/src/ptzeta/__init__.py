"""Spectral zeta functions for Schrodinger operators with Poschl-Teller potential.

The package computes, at desk scale:

- eigenvalues of separated and coupled self-adjoint extensions of the
  operator -d^2/dx^2 + (mu^2-1/4)/sin^2 x + (nu^2-1/4)/cos^2 x on (0, pi/2);
- the spectral zeta function by direct summation, by Hurwitz/Riemann closed
  forms, and by analytic continuation of the contour representation;
- the catalog of poles and logarithmic branch points of the continued zeta;
- zeta-regularized functional determinants, including the regularized
  variant needed when a branch point sits at the origin;
- the exact coefficient algebra of the large-z expansion of ln F.
"""

from .specialfn import (
    EULER_GAMMA,
    ConvergenceError,
    DomainError,
    GammaPoleError,
    RatPoly,
    bernoulli_number,
    bernoulli_polynomial,
    digamma,
    gen_bernoulli_polynomial,
    gen_exp_integral,
    hurwitz_zeta,
    hyp2f1_series,
    log_gamma,
    pochhammer,
    riemann_zeta,
    trigamma,
)
from .charfn import (
    Angle,
    BoundaryValuesAtHalfPi,
    CoupledBC,
    OperatorParams,
    SeparatedBC,
    boundary_values_half_pi,
    characteristic,
    characteristic_dz,
    characteristic_mu0_explicit,
    solution_phi,
    solution_theta,
    wronskian,
    zero_mode_multiplicity,
)
from .spectrum import (
    NotClosedFormError,
    Spectrum,
    closed_form_spectrum,
    eigenvalue_asymptotic_seed,
    find_eigenvalues,
)
from .asymptotics import (
    AsyExpansion,
    DiophantineSet,
    LogSeries,
    C_coefficient,
    E_coefficient,
    G_coefficient,
    P_coefficient,
    R_coefficient,
    R_polynomials,
    S_coefficient,
    assemble_L_asy,
    coefficient_table_csv,
    diophantine_set,
    omega0,
    omega_coefficient,
)
from .zeta import (
    AbscissaError,
    ContinuationConfig,
    SingularityProximityError,
    StructureReport,
    ZetaValue,
    legendre_epstein_zeta,
    residue_at,
    shifted_zeta,
    structure_report,
    zeta_closed_form,
    zeta_continued,
    zeta_continued_beta0,
    zeta_direct,
)
from .determinant import (
    DetResult,
    F_limit_constant,
    det_friedrichs,
    det_regularized,
)
from .fdoracle import oracle_eigenvalues

__version__ = "0.1.0"
