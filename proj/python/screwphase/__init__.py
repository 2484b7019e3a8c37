"""Dirac phases of electrons around a screw dislocation.

Thin wrapper over the C++ core: screw-dislocation metric algebra,
separated Bessel modes with the shifted angular momentum, Dirac phase
quadrature, and the white-noise Monte Carlo for the phase-shift moments.
"""

from screwphase._core import (  # noqa: F401
    AngularFactorPair,
    AngularPath,
    CylGrid,
    CylPoint,
    EnsembleStats,
    Metric3,
    Mode,
    NoiseConfig,
    NoisePath,
    PhaseResult,
    PhysicalConstants,
    ScrewDefect,
    SweepAxis,
    SweepPoint,
    SweepResult,
    bessel_j,
    delta_gamma_exact,
    delta_gamma_linear,
    dirac_phase_closed,
    dirac_phase_quadrature,
    ensemble_moments,
    gauge_potential,
    lanczos_gamma,
    laplace_beltrami_apply,
    metric_det,
    metric_inverse,
    metric_tensor,
    mode_eval,
    noisy_phase_trajectory,
    pde_residual,
    phase_factor,
    phase_factor_equivalence,
    sample_noise_path,
    scaling_sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
