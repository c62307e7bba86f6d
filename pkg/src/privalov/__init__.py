"""Numerical workbench for cone domains over circle arcs, harmonic measure by
walk on spheres, maximal partial-sum functionals, and exact Diophantine
schedule constructions."""

from privalov.alpha import (
    AlphaEnclosure,
    LacunarySequence,
    SequenceValidationError,
    beta_from_alpha,
    construct_alpha,
    frac_multiple,
    phase_delta,
    validate_sequence,
)
from privalov.cones import (
    Arc,
    ArcSet,
    PrivalovDomain,
    cone_contains,
    cone_kappa_max,
    domain_from_arcs,
    tangent_points,
)
from privalov.harmonic import (
    HMEstimate,
    WalkAbortError,
    angle_bin_counts,
    disk_arc_measure,
    fixed_step_measure,
    gap_table_csv,
    harmonic_measure,
    omega_gap_table,
    subharmonic_check,
)
from privalov.schedules import (
    CaseSplitError,
    EpsilonModel,
    GrowthFunction,
    ScheduleBundle,
    ScheduleRangeError,
    build_couples_schedule,
    build_lacunary_schedule,
    build_weight_schedule,
    case_split,
    eps,
    gamma_coeffs,
    iterated_eps,
    normalized_shift_series,
    tail_estimate_check,
)
from privalov.series import CoefficientSeries, GridFunction, WeightSequence

__all__ = [
    "AlphaEnclosure",
    "Arc",
    "ArcSet",
    "CaseSplitError",
    "CoefficientSeries",
    "EpsilonModel",
    "GridFunction",
    "GrowthFunction",
    "HMEstimate",
    "LacunarySequence",
    "PrivalovDomain",
    "ScheduleBundle",
    "ScheduleRangeError",
    "SequenceValidationError",
    "WalkAbortError",
    "WeightSequence",
    "angle_bin_counts",
    "beta_from_alpha",
    "build_couples_schedule",
    "build_lacunary_schedule",
    "build_weight_schedule",
    "case_split",
    "cone_contains",
    "cone_kappa_max",
    "construct_alpha",
    "disk_arc_measure",
    "domain_from_arcs",
    "eps",
    "fixed_step_measure",
    "frac_multiple",
    "gamma_coeffs",
    "gap_table_csv",
    "harmonic_measure",
    "iterated_eps",
    "normalized_shift_series",
    "omega_gap_table",
    "phase_delta",
    "subharmonic_check",
    "tail_estimate_check",
    "validate_sequence",
]
__version__ = "0.1.0"
