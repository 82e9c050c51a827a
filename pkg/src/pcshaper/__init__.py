"""Intrusive polynomial chaos propagation and time-delay-filter design
for the undamped spring-mass system with time-varying interval uncertainty."""

from .basis import (
    BasisSpec,
    QuadratureRule,
    Truncation,
    basis_norm_sq,
    build_index_set,
    gauss_legendre,
    inner_triple,
    legendre_eval,
    make_basis,
)
from .design import (
    ObjectiveSpec,
    OptimizationResult,
    Statistic,
    evaluate_objective,
    optimize_gsa,
)
from .dynamics import (
    GalerkinSystem,
    IntegrationError,
    PceTrajectory,
    SystemParams,
    UncertaintySchedule,
    assemble_galerkin,
    benchmark_schedule,
    integrate_interval,
    propagate,
    restart_at_switch,
)
from .shaper import (
    ShaperDesign,
    ShaperKind,
    design_nonrobust,
    design_robust,
    shaped_input,
    switch_times,
)
from .uq import (
    EnergyForm,
    McConfig,
    MomentReport,
    ResidualEnergySpec,
    Sampler,
    closed_form_trajectory,
    mc_residual_moments,
    pce_moments,
    pce_residual_moments,
)

__all__ = [
    "BasisSpec",
    "EnergyForm",
    "GalerkinSystem",
    "IntegrationError",
    "McConfig",
    "MomentReport",
    "ObjectiveSpec",
    "OptimizationResult",
    "PceTrajectory",
    "QuadratureRule",
    "ResidualEnergySpec",
    "Sampler",
    "ShaperDesign",
    "ShaperKind",
    "Statistic",
    "SystemParams",
    "Truncation",
    "UncertaintySchedule",
    "assemble_galerkin",
    "basis_norm_sq",
    "benchmark_schedule",
    "build_index_set",
    "closed_form_trajectory",
    "design_nonrobust",
    "design_robust",
    "evaluate_objective",
    "gauss_legendre",
    "inner_triple",
    "integrate_interval",
    "legendre_eval",
    "make_basis",
    "mc_residual_moments",
    "optimize_gsa",
    "pce_moments",
    "pce_residual_moments",
    "propagate",
    "restart_at_switch",
    "shaped_input",
    "switch_times",
]

__version__ = "0.1.0"
