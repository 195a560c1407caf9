"""Numerical engine for the photonic Kondo model.

A coherent light pulse in a waveguide scatters off an effective spin-1/2
(the two ground states of a far-detuned Lambda emitter) through an isotropic
exchange coupling.  The package gives closed-form spin dynamics, two-time
spin correlators, power spectra, the outgoing coherent field and
polarization-resolved intensity correlations, each paired with an
independent numerical check.
"""
from .bloch import (
    BlochTrajectory,
    bloch_evolve,
    bloch_rhs,
    evolve_trajectory,
    purity,
    relax_precess,
    stationary_bloch,
    stationary_impurity,
    stationary_purity,
)
from .correlators import (
    AbcCoefficients,
    ResolvedCorrelators,
    UnresolvedCorrelators,
    abc_amplitudes,
    abc_coefficients,
    resolved_closed_form,
    resolved_system,
    unresolved_closed_form,
    unresolved_system,
)
from .errors import (
    AnisotropicCoupling,
    DetectorDark,
    GridTooNarrow,
    InvalidParameter,
    KondoError,
    NegativeCoupling,
    NoDissipation,
    NonPositiveOmega3,
    NonUnitDetector,
    NonUnitVector,
    ParseError,
    StepTooLarge,
    ZeroEffectiveField,
    ZeroField,
)
from .model import (
    DrivenConfig,
    EmitterSpec,
    JonesPolarization,
    JonesVector,
    KondoCoupling,
    KondoParams,
    ScatteringPhase,
    amplitudes_for,
    build_driven_config,
    config_from_lambda_psi,
    derive_kondo_coupling,
    jones_from_amplitudes,
    scattering_phase,
)
from .oracle import LinearSystem, default_step, integrate_rk4, richardson_check
from .spectra import (
    OutgoingField,
    PowerBudget,
    SpectrumResolved,
    SpectrumUnresolved,
    c0_elastic,
    c0_inelastic,
    cs_elastic_zero,
    cs_inelastic,
    default_nu_grid,
    ellipticity_sweep,
    inelastic_density,
    outgoing_field,
    power_accounting,
    spectrum_resolved,
    spectrum_unresolved,
    vector_density,
)
from .statistics import (
    G2Curve,
    GCombinations,
    KVector,
    cs_zero,
    g2,
    g2_curve,
    g2_from_combinations,
    g_combinations,
    k_evolve,
    k_initial_unscaled,
)

__version__ = "0.1.0"
