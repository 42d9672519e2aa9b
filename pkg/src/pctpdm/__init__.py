"""Exact bound states of the modified Kratzer and rotating Morse potentials
under position-dependent mass, with a finite-difference verifier."""

from .mass_profiles import MassProfile
from .oracle import (
    Grid,
    VerificationReport,
    constant_mass_problem,
    convergence_study,
    discretize_constant_mass,
    discretize_pdm,
    exact_centrifugal_problem,
    lowest_eigenpairs,
    pdm_problem,
    residual_norm,
)
from .pct import (
    TargetProblem,
    audit,
    audit_composition,
    make_target,
    paper_closed_form_target,
    target_potential,
    transform_wavefunction,
)
from .reference import (
    BoundState,
    KratzerParams,
    MorseParams,
    NoBoundStateError,
    kratzer_energy,
    kratzer_norm_paper,
    kratzer_wavefunction,
    morse_energy,
    morse_wavefunction,
)
from .specfun import integrate, laguerre, log_gamma

__version__ = "0.1.0"
