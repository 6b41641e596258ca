"""Intensity propagation through the prepared medium.

In retarded coordinates zeta = delta0 z / c and tau_r = delta0 (t - z/c) the
envelope intensity I = |eta|^2 obeys an ordinary differential equation in zeta
at fixed tau_r:

    dI/dzeta = 2 Re[ g exp(-i (lambda2 - lambda1) (zeta + tau_r)) ] I,

where the complex gain coefficient

    g = i * (2 pi rho omega d1 d2 / (hbar delta0^2)) * (1/det2 - 1/det1)
          * (w1 alpha* beta + w2 albar* bebar) * bracket

collects the medium prefactor, the thermal channel sum, and the dressed-state
bracket.  With branch values frozen at the input front the equation integrates
in closed form; ``propagate_numeric`` integrates it directly with an adaptive
embedded Runge-Kutta pair, optionally re-evaluating the branch structure from
the local intensity ("nonlinear" mode).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .atomic import AtomSpecies, ScaledProblem, scaled_problem_from_eta, thermal_weights
from .atomic import DEFAULT_ADIABATIC_FLOOR
from .constants import HBAR
from .dressed import DressedPair, build_dressed_pair
from .errors import (
    GridError,
    IntegrationFailure,
    PhaseConventionViolation,
    ValidationError,
    ZeroDetuning,
)

# Above this input amplitude the frozen-branch closed form is advisory only.
WEAK_FIELD_ADVISORY = 0.3

_NEGATIVITY_TOLERANCE = 1e-12
_PHASE_TOLERANCE = 1e-12


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MediumScenario:
    """A prepared vapor column plus the input wave.

    ``density`` is atoms/cm^3, ``length_scaled`` the medium length as
    delta0 z_max / c, and (alpha, beta), (alpha_bar, beta_bar) the normalized
    superposition coefficients of the two thermal channels.  ``input_eta`` is
    the constant dimensionless amplitude of the entering front.
    """

    species: AtomSpecies
    density: float
    temperature: float
    length_scaled: float
    alpha: complex
    beta: complex
    alpha_bar: complex
    beta_bar: complex
    carrier_omega: float
    input_eta: complex

    def __post_init__(self):
        if self.density < 0.0:
            raise ValidationError(f"density must be >= 0, got {self.density}")
        if self.temperature < 0.0:
            raise ValidationError(f"temperature must be >= 0, got {self.temperature}")
        if self.length_scaled < 0.0:
            raise ValidationError(f"length_scaled must be >= 0, got {self.length_scaled}")
        for a, b, tag in (
            (self.alpha, self.beta, "(alpha, beta)"),
            (self.alpha_bar, self.beta_bar, "(alpha_bar, beta_bar)"),
        ):
            norm = abs(a) ** 2 + abs(b) ** 2
            if abs(norm - 1.0) > 1e-12:
                raise ValidationError(f"{tag} not normalized: |a|^2 + |b|^2 = {norm!r}")


@dataclass
class IntensityField:
    """Sampled |eta|^2 on a retarded-coordinate grid.

    ``values[i, j]`` is the intensity at ``zeta_grid[i]``, ``tau_grid[j]``
    (tau_grid holds retarded times delta0 (t - z/c)).
    """

    zeta_grid: np.ndarray
    tau_grid: np.ndarray
    values: np.ndarray
    mode: str


# ---------------------------------------------------------------------------
# Gain coefficient and right-hand side
# ---------------------------------------------------------------------------

def scaled_detunings(ms: MediumScenario) -> tuple[float, float]:
    """Scaled carrier detunings (det1, det2) of the scenario."""
    d0 = ms.species.delta0
    return (ms.carrier_omega - ms.species.omega1) / d0, (ms.carrier_omega - ms.species.omega2) / d0


def channel_sum(ms: MediumScenario) -> complex:
    """Thermally weighted coherence sum w1 alpha* beta + w2 alpha_bar* beta_bar."""
    w1, w2 = thermal_weights(ms.species.delta0, ms.temperature)
    return w1 * ms.alpha.conjugate() * ms.beta + w2 * ms.alpha_bar.conjugate() * ms.beta_bar


def medium_prefactor(ms: MediumScenario) -> float:
    """Dimensionless real prefactor (2 pi rho omega d1 d2 / hbar delta0^2)(1/det2 - 1/det1)."""
    det1, det2 = scaled_detunings(ms)
    if det1 == 0.0 or det2 == 0.0:
        raise ZeroDetuning("scaled detunings must be nonzero")
    sp = ms.species
    return (
        2.0 * math.pi * ms.density * ms.carrier_omega * sp.d1 * sp.d2
        / (HBAR * sp.delta0**2)
        * (1.0 / det2 - 1.0 / det1)
    )


def gain_coefficient(ms: MediumScenario, dp: DressedPair) -> complex:
    """Complex coefficient of the exp(-i (lambda2-lambda1)(zeta+tau)) gain term.

    Includes the leading imaginary unit of the propagation equation, so the
    real growth rate at zero phase is 2 Re(g).
    """
    return 1j * medium_prefactor(ms) * channel_sum(ms) * dp.bracket


def intensity_rhs(
    ms: MediumScenario, dp: DressedPair, zeta: float, tau: float, intensity: float
) -> float:
    """d|eta|^2/dzeta at (zeta, tau) for the given intensity; tau is retarded."""
    if intensity < 0.0:
        raise ValidationError(f"intensity must be >= 0, got {intensity}")
    g = gain_coefficient(ms, dp)
    delta = dp.lambda2 - dp.lambda1
    return 2.0 * (g * cmath.exp(-1j * delta * (zeta + tau))).real * intensity


# ---------------------------------------------------------------------------
# Closed-form solution (frozen branches)
# ---------------------------------------------------------------------------

def _log_relative_intensity(g: complex, delta: float, zeta, tau_retarded):
    """ln(I/I0) of the frozen-branch solution; accepts scalars or arrays."""
    if delta == 0.0:
        return np.zeros(np.broadcast(zeta, tau_retarded).shape)
    phase = np.exp(-1j * delta * np.asarray(tau_retarded)) - np.exp(
        -1j * delta * (np.asarray(tau_retarded) + np.asarray(zeta))
    )
    return 2.0 * ((g / (1j * delta)) * phase).real


def analytic_intensity(ms: MediumScenario, dp: DressedPair, zeta: float, tau_lab: float) -> float:
    """Closed-form |eta(zeta, t)|^2 with tau_lab = delta0 t the scaled lab time.

    Exact for branch values frozen at the input front; advisory outside the
    weak-field regime |eta| < 0.3 where that freezing is itself approximate.
    """
    if abs(ms.input_eta) > WEAK_FIELD_ADVISORY:
        warnings.warn(
            f"|input_eta| = {abs(ms.input_eta):.3g} exceeds the weak-field "
            f"advisory limit {WEAK_FIELD_ADVISORY}; closed form is advisory only",
            stacklevel=2,
        )
    g = gain_coefficient(ms, dp)
    delta = dp.lambda2 - dp.lambda1
    i0 = abs(ms.input_eta) ** 2
    return i0 * float(np.exp(_log_relative_intensity(g, delta, zeta, tau_lab - zeta)))


def analytic_field(
    ms: MediumScenario, dp: DressedPair, zeta_grid, tau_grid
) -> IntensityField:
    """Closed-form solution sampled on a retarded-coordinate grid."""
    zeta_grid, tau_grid = _checked_grids(zeta_grid, tau_grid)
    g = gain_coefficient(ms, dp)
    delta = dp.lambda2 - dp.lambda1
    i0 = abs(ms.input_eta) ** 2
    if delta == 0.0:
        values = np.full((zeta_grid.size, tau_grid.size), i0)
    else:
        # ln RI = 2 Re[(g/(i delta)) e^{-i delta tau_r} (1 - e^{-i delta zeta})]
        zfac = 1.0 - np.exp(-1j * delta * zeta_grid)
        tfac = np.exp(-1j * delta * tau_grid)
        values = i0 * np.exp(2.0 * ((g / (1j * delta)) * np.outer(zfac, tfac)).real)
    return IntensityField(zeta_grid, tau_grid, values, "analytic")


# ---------------------------------------------------------------------------
# Radiation-prepared form
# ---------------------------------------------------------------------------

def _validate_radiation_phases(ms: MediumScenario) -> None:
    checks = (
        (abs(ms.alpha.imag), "Im(alpha)"),
        (abs(ms.beta.real), "Re(beta)"),
        (abs(ms.alpha_bar.real), "Re(alpha_bar)"),
        (abs(ms.beta_bar.imag), "Im(beta_bar)"),
    )
    for value, name in checks:
        if value > _PHASE_TOLERANCE:
            raise PhaseConventionViolation(
                f"radiation-prepared phases require {name} = 0, got {value:.3e}"
            )


def radiation_prepared_exponent(
    ms: MediumScenario, dp: DressedPair, zeta: float, tau: float
) -> complex:
    """Exponent of the relative-intensity form for radiation-prepared media.

    Real under the phase conditions alpha real, beta imaginary, alpha_bar
    imaginary, beta_bar real; the imaginary part measures their violation.
    ``tau`` is the scaled lab time delta0 t.
    """
    _validate_radiation_phases(ms)
    g = gain_coefficient(ms, dp)
    delta = dp.lambda2 - dp.lambda1
    if delta == 0.0:
        return 0.0 + 0.0j
    return -2.0 * (g / delta) * (math.sin(delta * (tau - zeta)) - math.sin(delta * tau))


def relative_intensity_radiation_prepared(
    ms: MediumScenario, dp: DressedPair, zeta: float, tau: float
) -> float:
    """Relative intensity |eta(z,t)|^2 / |eta(0,t)|^2 for radiation-prepared media."""
    x = radiation_prepared_exponent(ms, dp, zeta, tau)
    if abs(x.imag) > 1e-9 * (1.0 + abs(x.real)):
        raise PhaseConventionViolation(
            f"exponent has imaginary part {x.imag:.3e}; phase conditions violated"
        )
    return math.exp(x.real)


# ---------------------------------------------------------------------------
# Direct numerical integration
# ---------------------------------------------------------------------------

def propagate_numeric(
    ms: MediumScenario,
    zeta_grid,
    tau_grid,
    mode: str = "linear",
    rtol: float = 1e-9,
    atol: float = 1e-14,
    first_step: float | None = None,
    adiabatic_floor: float = DEFAULT_ADIABATIC_FLOOR,
) -> IntensityField:
    """Integrate the intensity equation column by column over the grid.

    ``mode="linear"`` freezes the branch structure at the input front;
    ``mode="nonlinear"`` rebuilds characteristic values and bracket from the
    local intensity at every right-hand-side evaluation.  Columns (fixed
    retarded time) are independent scalar initial-value problems solved with
    an adaptive embedded Runge-Kutta pair.
    """
    zeta_grid, tau_grid = _checked_grids(zeta_grid, tau_grid)
    if zeta_grid[0] != 0.0:
        raise GridError("zeta grid must start at 0 (the medium entrance)")
    if mode not in ("linear", "nonlinear"):
        raise ValidationError(f"mode must be 'linear' or 'nonlinear', got {mode!r}")

    sp0 = scaled_problem_from_eta(ms.species, ms.input_eta, ms.carrier_omega, adiabatic_floor)
    dp0 = build_dressed_pair(sp0)
    iks = 1j * medium_prefactor(ms) * channel_sum(ms)
    i0 = abs(ms.input_eta) ** 2
    abs_eta0 = abs(ms.input_eta)

    if mode == "linear":
        g0 = iks * dp0.bracket
        delta0 = dp0.lambda2 - dp0.lambda1

        def rhs(z, y, tau_r):
            return (2.0 * (g0 * cmath.exp(-1j * delta0 * (z + tau_r))).real * y[0],)

    else:

        def rhs(z, y, tau_r):
            intensity = y[0]
            if intensity <= 0.0 or abs_eta0 == 0.0:
                return (0.0,)
            scale = math.sqrt(intensity) / abs_eta0
            sp = ScaledProblem(
                det1=sp0.det1,
                det2=sp0.det2,
                xi1=sp0.xi1 * scale,
                xi2=sp0.xi2 * scale,
                eta=sp0.eta * scale,
                omega_scaled=sp0.omega_scaled,
            )
            dp = build_dressed_pair(sp)
            g = iks * dp.bracket
            delta = dp.lambda2 - dp.lambda1
            return (2.0 * (g * cmath.exp(-1j * delta * (z + tau_r))).real * intensity,)

    span = float(zeta_grid[-1] - zeta_grid[0])
    if first_step is None:
        first_step = span / 1000.0

    values = np.empty((zeta_grid.size, tau_grid.size))
    for j, tau_r in enumerate(tau_grid):
        sol = solve_ivp(
            rhs,
            (0.0, span),
            [i0],
            method="RK45",
            t_eval=zeta_grid,
            args=(float(tau_r),),
            rtol=rtol,
            atol=atol,
            first_step=first_step,
        )
        if not sol.success:
            raise IntegrationFailure(f"column tau={tau_r!r}: {sol.message}")
        column = sol.y[0]
        if column.min() < -_NEGATIVITY_TOLERANCE:
            raise IntegrationFailure(
                f"column tau={tau_r!r}: intensity {column.min():.3e} below "
                f"-{_NEGATIVITY_TOLERANCE}"
            )
        np.clip(column, 0.0, None, out=column)
        values[:, j] = column

    return IntensityField(zeta_grid, tau_grid, values, f"numeric_{mode}")


def _checked_grids(zeta_grid, tau_grid) -> tuple[np.ndarray, np.ndarray]:
    zeta = np.asarray(zeta_grid, dtype=float)
    tau = np.asarray(tau_grid, dtype=float)
    for name, arr in (("zeta", zeta), ("tau", tau)):
        if arr.ndim != 1 or arr.size < 2:
            raise GridError(f"{name} grid must be 1-D with at least 2 points")
        if not np.all(np.diff(arr) > 0.0):
            raise GridError(f"{name} grid must be strictly increasing")
    return zeta, tau
