"""Pulse-train formation in a coherently prepared three-level vapor.

A monochromatic wave entering a vapor of atoms prepared in a ground-doublet
superposition acquires a periodic gain-and-loss modulation at the doublet
splitting frequency and exits as a train of short pulses.  The package builds
the dressed spectrum of the driven atom, propagates the field intensity both
in closed form and by direct integration, and extracts pulse-train metrics.
"""

__version__ = "0.1.0"

from .atomic import (
    AtomSpecies,
    ScaledProblem,
    dipole_minus,
    dipole_plus,
    load_species,
    oscillator_strength_from_reduced,
    reduced_dipole_from_oscillator_strength,
    scale_parameters,
    scaled_problem_from_eta,
    sodium_preset,
    species_from_oscillator_strengths,
    thermal_weights,
)
from .dressed import (
    DressedPair,
    build_dressed_pair,
    characteristic_values,
    coupling_params,
    dressed_amplitudes,
    excited_amplitude,
    superposition_bracket,
)
from .propagation import (
    IntensityField,
    MediumScenario,
    analytic_field,
    analytic_intensity,
    gain_coefficient,
    intensity_rhs,
    propagate_numeric,
    radiation_prepared_exponent,
    relative_intensity_radiation_prepared,
)
from .analysis import (
    BracketScanRow,
    DetuningScanRow,
    PulseMetrics,
    bracket_scan,
    detuning_scan,
    pulse_metrics,
)
from . import errors

__all__ = [
    "__version__",
    "AtomSpecies",
    "ScaledProblem",
    "DressedPair",
    "MediumScenario",
    "IntensityField",
    "PulseMetrics",
    "BracketScanRow",
    "DetuningScanRow",
    "errors",
    "dipole_minus",
    "dipole_plus",
    "load_species",
    "oscillator_strength_from_reduced",
    "reduced_dipole_from_oscillator_strength",
    "scale_parameters",
    "scaled_problem_from_eta",
    "sodium_preset",
    "species_from_oscillator_strengths",
    "thermal_weights",
    "build_dressed_pair",
    "characteristic_values",
    "coupling_params",
    "dressed_amplitudes",
    "excited_amplitude",
    "superposition_bracket",
    "analytic_field",
    "analytic_intensity",
    "gain_coefficient",
    "intensity_rhs",
    "propagate_numeric",
    "radiation_prepared_exponent",
    "relative_intensity_radiation_prepared",
    "bracket_scan",
    "detuning_scan",
    "pulse_metrics",
]
