"""Atomic species data, dipole matrix elements, and dimensionless scaling.

The medium is a vapor of atoms with a ground doublet (total angular momenta
``F_lower`` and ``F_upper``, split by ``delta0``) both coupled to one far
off-resonant upper level.  Everything downstream works with dimensionless
quantities: time in units of 1/delta0, detunings in units of delta0, and the
couplings xi_i = d_i E0 / (hbar delta0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .constants import BOLTZMANN, ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR
from .errors import (
    ConfigError,
    DetuningTooSmall,
    NonPositiveInput,
    NonPositiveSplitting,
    SelectionRuleViolation,
    UnsupportedBranch,
    ValidationError,
)

DEFAULT_ADIABATIC_FLOOR = 5.0

# Sodium D1 line (3S1/2 - 3P1/2) data: ground hyperfine splitting in MHz and
# the line oscillator strength, applied to both arms since the upper hyperfine
# structure is treated as degenerate.
SODIUM_SPLITTING_MHZ = 1771.6
SODIUM_D1_OSCILLATOR_STRENGTH = 0.3199
SODIUM_OMEGA1_OVER_DELTA0 = 287351.0
SODIUM_OMEGA2_OVER_DELTA0 = 287350.0

_SPECIES_REQUIRED_KEYS = (
    "label",
    "delta0_mhz",
    "omega1_over_delta0",
    "omega2_over_delta0",
    "f1",
    "f2",
    "F_lower",
    "F_upper",
)


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AtomSpecies:
    """Ground-doublet species with effective dipole moments for both arms.

    ``delta0`` is the doublet angular splitting in rad/s; ``omega1`` and
    ``omega2`` are the optical transition frequencies of the lower- and
    upper-doublet arms (``omega1 - omega2 == delta0``).  Dipole moments are
    CGS-Gaussian (statC cm).
    """

    label: str
    delta0: float
    omega1: float
    omega2: float
    d1: float
    d2: float
    f1: Optional[float] = None
    f2: Optional[float] = None
    ground_F_lower: int = 1
    ground_F_upper: int = 2

    def __post_init__(self):
        if self.delta0 <= 0.0:
            raise NonPositiveSplitting(f"delta0 must be > 0, got {self.delta0}")
        if self.omega1 <= 0.0 or self.omega2 <= 0.0:
            raise ValidationError("transition frequencies must be > 0")
        if abs((self.omega1 - self.omega2) - self.delta0) > 1e-6 * self.delta0:
            raise ValidationError(
                "omega1 - omega2 must equal delta0 to 1 part in 1e6: "
                f"got {self.omega1 - self.omega2} vs {self.delta0}"
            )
        if self.d1 <= 0.0 or self.d2 <= 0.0:
            raise ValidationError("dipole moments must be > 0")
        if self.ground_F_lower < 0 or self.ground_F_upper < 0:
            raise ValidationError("F quantum numbers must be >= 0")


@dataclass(frozen=True)
class ScaledProblem:
    """Dimensionless single-atom problem.

    ``det1 = (omega - omega1)/delta0`` and ``det2 = (omega - omega2)/delta0``
    are the scaled detunings, ``xi1``/``xi2`` the complex couplings, ``eta``
    the symmetric dimensionless amplitude, and ``omega_scaled`` the carrier in
    units of delta0.  Instances built by :func:`scale_parameters` satisfy
    ``det1 - det2 == -1``; hand-built instances may explore hypothetical
    regimes (e.g. equal detunings) that no physical species produces.
    """

    det1: float
    det2: float
    xi1: complex
    xi2: complex
    eta: complex
    omega_scaled: float


# ---------------------------------------------------------------------------
# Angular momentum prefactors (circular polarization)
# ---------------------------------------------------------------------------

def dipole_minus(F_to: int, M_to: int, F_from: int, M_from: int, reduced: float) -> float:
    """Matrix element of the lowering circular dipole component d_- = d_x - i d_y.

    Returns the projection-dependent prefactor times the reduced element for
    the transition (F_from, M_from) -> (F_to, M_to = M_from - 1).
    """
    _check_projection_ranges(F_to, M_to, F_from, M_from)
    if M_to != M_from - 1:
        raise SelectionRuleViolation(
            f"d_- requires M_to = M_from - 1, got M_from={M_from}, M_to={M_to}"
        )
    dF = F_to - F_from
    if abs(dF) > 1:
        raise UnsupportedBranch(f"|F_to - F_from| must be <= 1, got {dF}")

    M = M_from
    if dF == 0:
        F = F_from
        num = (F - M + 1) * (F + M)
        den = F * (F + 1) * (2 * F + 1)
    elif dF == 1:
        F = F_to
        num = (F - M + 1) * (F - M)
        den = F * (2 * F - 1) * (2 * F + 1)
    else:
        F = F_from
        num = (F + M + 1) * (F + M)
        den = F * (2 * F - 1) * (2 * F + 1)
    return math.sqrt(num / den) * reduced


def dipole_plus(F_to: int, M_to: int, F_from: int, M_from: int, reduced: float) -> float:
    """Matrix element of the raising component d_+ = d_x + i d_y.

    Equals the conjugate of the reversed d_- element; with a real reduced
    element the two are identical.
    """
    _check_projection_ranges(F_to, M_to, F_from, M_from)
    if M_to != M_from + 1:
        raise SelectionRuleViolation(
            f"d_+ requires M_to = M_from + 1, got M_from={M_from}, M_to={M_to}"
        )
    return dipole_minus(F_from, M_from, F_to, M_to, reduced)


def _check_projection_ranges(F_to, M_to, F_from, M_from):
    for F, M, tag in ((F_from, M_from, "initial"), (F_to, M_to, "final")):
        if F < 0:
            raise ValidationError(f"{tag} F must be >= 0, got {F}")
        if abs(M) > F:
            raise SelectionRuleViolation(f"{tag} |M|={abs(M)} exceeds F={F}")


def reduced_dipole_from_oscillator_strength(f: float, omega_transition: float, F: int) -> float:
    """Reduced dipole element from an oscillator strength f(F -> F').

    CGS-Gaussian: sqrt(3 hbar e^2 (2F+1) f / (2 m omega)).
    """
    if f <= 0.0:
        raise NonPositiveInput(f"oscillator strength must be > 0, got {f}")
    if omega_transition <= 0.0:
        raise NonPositiveInput(f"transition frequency must be > 0, got {omega_transition}")
    if F < 0:
        raise ValidationError(f"F must be >= 0, got {F}")
    return math.sqrt(
        3.0 * HBAR * ELEMENTARY_CHARGE**2 * (2 * F + 1) * f
        / (2.0 * ELECTRON_MASS * omega_transition)
    )


def oscillator_strength_from_reduced(d: float, omega_transition: float, F: int) -> float:
    """Inverse of :func:`reduced_dipole_from_oscillator_strength`."""
    if d <= 0.0:
        raise NonPositiveInput(f"reduced dipole must be > 0, got {d}")
    if omega_transition <= 0.0:
        raise NonPositiveInput(f"transition frequency must be > 0, got {omega_transition}")
    return (
        2.0 * ELECTRON_MASS * omega_transition * d * d
        / (3.0 * HBAR * ELEMENTARY_CHARGE**2 * (2 * F + 1))
    )


# ---------------------------------------------------------------------------
# Thermal preparation weights
# ---------------------------------------------------------------------------

def thermal_weights(delta0: float, temperature: float) -> tuple[float, float]:
    """Boltzmann weights of the two independently prepared channels.

    w1 = 1/(1 + exp(-hbar delta0 / kB T)) weights the channel seeded from the
    lower doublet level; w2 = 1 - w1 the upper one.  T = 0 gives (1, 0) and
    T -> infinity gives (1/2, 1/2).
    """
    if delta0 <= 0.0:
        raise NonPositiveSplitting(f"delta0 must be > 0, got {delta0}")
    if temperature < 0.0:
        raise ValidationError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 1.0, 0.0
    x = HBAR * delta0 / (BOLTZMANN * temperature)
    w1 = 1.0 / (1.0 + math.exp(-x))
    return w1, 1.0 - w1


# ---------------------------------------------------------------------------
# Dimensionless scaling
# ---------------------------------------------------------------------------

def scale_parameters(
    species: AtomSpecies,
    field_amplitude: complex,
    carrier_omega: float,
    adiabatic_floor: float = DEFAULT_ADIABATIC_FLOOR,
) -> ScaledProblem:
    """Rescale a species plus field amplitude to the dimensionless problem.

    ``field_amplitude`` is the complex envelope E0 in statV/cm.  Raises
    ``DetuningTooSmall`` when either scaled detuning is below the adiabaticity
    floor (in units of delta0).
    """
    det1, det2 = _checked_detunings(species, carrier_omega, adiabatic_floor)
    e0 = complex(field_amplitude)
    hd = HBAR * species.delta0
    xi1 = species.d1 * e0 / hd
    xi2 = species.d2 * e0 / hd
    eta = 2.0 * species.d1 * species.d2 * e0 / ((species.d1 + species.d2) * hd)
    return ScaledProblem(det1, det2, xi1, xi2, eta, carrier_omega / species.delta0)


def scaled_problem_from_eta(
    species: AtomSpecies,
    eta: complex,
    carrier_omega: float,
    adiabatic_floor: float = DEFAULT_ADIABATIC_FLOOR,
) -> ScaledProblem:
    """Like :func:`scale_parameters` but parameterized by the symmetric amplitude."""
    det1, det2 = _checked_detunings(species, carrier_omega, adiabatic_floor)
    eta = complex(eta)
    dsum = species.d1 + species.d2
    xi1 = eta * dsum / (2.0 * species.d2)
    xi2 = eta * dsum / (2.0 * species.d1)
    return ScaledProblem(det1, det2, xi1, xi2, eta, carrier_omega / species.delta0)


def _checked_detunings(species, carrier_omega, adiabatic_floor):
    if species.delta0 <= 0.0:
        raise NonPositiveSplitting(f"delta0 must be > 0, got {species.delta0}")
    det1 = (carrier_omega - species.omega1) / species.delta0
    det2 = (carrier_omega - species.omega2) / species.delta0
    if min(abs(det1), abs(det2)) < adiabatic_floor:
        raise DetuningTooSmall(
            f"scaled detunings ({det1:.3g}, {det2:.3g}) below the adiabaticity "
            f"floor {adiabatic_floor:g}"
        )
    return det1, det2


# ---------------------------------------------------------------------------
# Species construction
# ---------------------------------------------------------------------------

def species_from_oscillator_strengths(
    label: str,
    delta0: float,
    omega1_over_delta0: float,
    omega2_over_delta0: float,
    f1: float,
    f2: float,
    F_lower: int,
    F_upper: int,
    excited_F: Optional[int] = None,
    ground_M: int = 0,
) -> AtomSpecies:
    """Build a species with sigma+ effective arm moments.

    Both doublet sublevels (F_lower, ground_M) and (F_upper, ground_M) couple
    to the common upper sublevel (excited_F, ground_M + 1); the arm moments
    are the circular projection prefactors times the reduced elements from the
    per-arm oscillator strengths.  ``excited_F`` defaults to ``F_upper``.
    """
    if delta0 <= 0.0:
        raise NonPositiveSplitting(f"delta0 must be > 0, got {delta0}")
    omega1 = omega1_over_delta0 * delta0
    omega2 = omega2_over_delta0 * delta0
    if excited_F is None:
        excited_F = F_upper
    red1 = reduced_dipole_from_oscillator_strength(f1, omega1, F_lower)
    red2 = reduced_dipole_from_oscillator_strength(f2, omega2, F_upper)
    d1 = dipole_plus(excited_F, ground_M + 1, F_lower, ground_M, red1)
    d2 = dipole_plus(excited_F, ground_M + 1, F_upper, ground_M, red2)
    if d1 == 0.0 or d2 == 0.0:
        raise ValidationError(
            f"projection prefactor vanishes for (F,M)=({F_lower},{ground_M}) or "
            f"({F_upper},{ground_M}) -> F'={excited_F}; pick different sublevels"
        )
    return AtomSpecies(
        label=label,
        delta0=delta0,
        omega1=omega1,
        omega2=omega2,
        d1=d1,
        d2=d2,
        f1=f1,
        f2=f2,
        ground_F_lower=F_lower,
        ground_F_upper=F_upper,
    )


def sodium_preset(
    frequency_convention: str = "cyclic",
    excited_F: int = 2,
    ground_M: int = 0,
) -> AtomSpecies:
    """The compiled-in Na-23 3S1/2 - 3P1/2 species.

    The quoted 1771.6 MHz splitting is read as a cyclic frequency by default
    (multiplied by 2 pi internally); pass ``frequency_convention="angular"``
    to take it as rad/s directly.
    """
    delta0 = _delta0_from_mhz(SODIUM_SPLITTING_MHZ, frequency_convention)
    return species_from_oscillator_strengths(
        label="Na-23 3S1/2-3P1/2",
        delta0=delta0,
        omega1_over_delta0=SODIUM_OMEGA1_OVER_DELTA0,
        omega2_over_delta0=SODIUM_OMEGA2_OVER_DELTA0,
        f1=SODIUM_D1_OSCILLATOR_STRENGTH,
        f2=SODIUM_D1_OSCILLATOR_STRENGTH,
        F_lower=1,
        F_upper=2,
        excited_F=excited_F,
        ground_M=ground_M,
    )


def _delta0_from_mhz(value_mhz: float, frequency_convention: str) -> float:
    if frequency_convention == "cyclic":
        return 2.0 * math.pi * 1e6 * value_mhz
    if frequency_convention == "angular":
        return 1e6 * value_mhz
    raise ValidationError(
        f"frequency_convention must be 'cyclic' or 'angular', got {frequency_convention!r}"
    )


def load_species(path, frequency_convention: str = "cyclic") -> AtomSpecies:
    """Load a species from a flat key-value text file.

    Required keys: label, delta0_mhz, omega1_over_delta0, omega2_over_delta0,
    f1, f2, F_lower, F_upper.  Optional: excited_F, ground_M.  Lines starting
    with '#' are comments.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read species file {path}: {exc}") from exc

    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        entries[key] = value

    missing = [k for k in _SPECIES_REQUIRED_KEYS if k not in entries]
    if missing:
        raise ConfigError(f"{path}: missing species keys: {', '.join(missing)}")
    unknown = set(entries) - set(_SPECIES_REQUIRED_KEYS) - {"excited_F", "ground_M"}
    if unknown:
        raise ConfigError(f"{path}: unknown species keys: {', '.join(sorted(unknown))}")

    def _float(key):
        try:
            return float(entries[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: key {key!r}: not a number: {entries[key]!r}") from exc

    def _int(key, default=None):
        if key not in entries:
            return default
        try:
            return int(entries[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: key {key!r}: not an integer: {entries[key]!r}") from exc

    try:
        return species_from_oscillator_strengths(
            label=entries["label"],
            delta0=_delta0_from_mhz(_float("delta0_mhz"), frequency_convention),
            omega1_over_delta0=_float("omega1_over_delta0"),
            omega2_over_delta0=_float("omega2_over_delta0"),
            f1=_float("f1"),
            f2=_float("f2"),
            F_lower=_int("F_lower"),
            F_upper=_int("F_upper"),
            excited_F=_int("excited_F"),
            ground_M=_int("ground_M", 0),
        )
    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
