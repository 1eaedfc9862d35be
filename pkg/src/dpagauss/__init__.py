"""Time-dependent Gaussian-state statistics for a degenerate parametric
amplifier: Wigner density, quadrature and photon-number variances, Mandel
parameter and its critical-displacement phase transition, with a truncated
Fock-space oracle for independent verification."""

__version__ = "0.1.0"

from .model import (
    EvolvedState,
    HamiltonianCoeffs,
    ModelParams,
    anomalous_coeff,
    char_fn,
    char_fn_state,
    displacement_amplitude,
    evolved_state,
    hamiltonian_coeffs,
    limit_r_zero_displacement,
    symmetric_coeff,
)
from .nonclassicality import (
    BehaviorKind,
    Classification,
    CriticalPointResult,
    Mechanism,
    NoTransitionError,
    Q0Sign,
    classicality_factor,
    classify_behavior,
    critical_alpha_q0_root,
    crossover_time,
    field_nonclassical,
    find_critical_alpha,
    p_representation_exists,
    q0_sign,
    squeezing_criterion,
)
from .statistics import (
    PhotonStats,
    QuadratureStats,
    mandel_q,
    mandel_q_curve,
    mandel_q_zero,
    mean_photon,
    photon_stats,
    photon_variance,
    quad_mean,
    quad_variance,
    quad_variance_state,
    quadrature_stats,
    snr,
    snr_max,
    variance_product,
)
from .wigner import (
    QuadFormCoeffs,
    WignerCoeffs,
    marginal_quadrature_pdf,
    quad_form_coeffs,
    wigner_beta,
    wigner_coeffs,
    wigner_quadrature,
)

__all__ = [name for name in dir() if not name.startswith("_")]
