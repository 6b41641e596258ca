"""Pulse-train observables and parameter scans.

Traces are relative intensities sampled against scaled time; metric extraction
finds local maxima with quadratic sub-sample refinement and measures the full
width at half maximum against the per-period minimum (the trace oscillates
about 1, so a global-zero baseline would be meaningless).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .atomic import DEFAULT_ADIABATIC_FLOOR, ScaledProblem, scaled_problem_from_eta
from .dressed import build_dressed_pair
from .errors import InsufficientSamples, NoModulation, NonPositiveSplitting, ValidationError
from .propagation import MediumScenario, _log_relative_intensity, gain_coefficient

MIN_SAMPLES_PER_PERIOD = 64
MODULATION_FLOOR = 1e-6


@dataclass(frozen=True)
class PulseMetrics:
    """Observables of one periodic pulse train."""

    repetition_period_scaled: float
    repetition_rate_hz: float
    fwhm_scaled: float
    fwhm_seconds: float
    modulation_depth: float
    peak_gain: float


@dataclass(frozen=True)
class BracketScanRow:
    eta: float
    bracket_abs: float
    lambda_gap: float


@dataclass(frozen=True)
class DetuningScanRow:
    det1: float
    det2: float
    metrics: PulseMetrics


# ---------------------------------------------------------------------------
# Metric extraction
# ---------------------------------------------------------------------------

def pulse_metrics(tau, intensity, delta0: float) -> PulseMetrics:
    """Extract pulse-train metrics from a trace sampled over scaled time.

    Requires at least two full periods at 64+ samples per period.  The period
    is the mean spacing of refined peak positions; physical conversions use
    t = tau / delta0.
    """
    if delta0 <= 0.0:
        raise NonPositiveSplitting(f"delta0 must be > 0, got {delta0}")
    tau = np.asarray(tau, dtype=float)
    y = np.asarray(intensity, dtype=float)
    if tau.ndim != 1 or tau.shape != y.shape or tau.size < 8:
        raise ValidationError("trace must be two equal-length 1-D arrays, >= 8 samples")
    if not np.all(np.diff(tau) > 0.0):
        raise ValidationError("tau samples must be strictly increasing")

    ymax = float(y.max())
    ymin = float(y.min())
    if ymax <= 0.0:
        raise ValidationError("intensity trace must be positive somewhere")
    depth = (ymax - ymin) / ymax
    if depth < MODULATION_FLOOR:
        raise NoModulation(depth)

    positions, heights, indices = _refined_peaks(tau, y)
    if len(positions) < 3:
        raise InsufficientSamples(
            f"found {len(positions)} peaks; need >= 3 (two full periods)"
        )
    period = float(np.mean(np.diff(positions)))
    step = float(np.median(np.diff(tau)))
    if period / step < MIN_SAMPLES_PER_PERIOD:
        raise InsufficientSamples(
            f"{period / step:.1f} samples per period; need >= {MIN_SAMPLES_PER_PERIOD}"
        )

    widths = []
    for k in range(1, len(indices) - 1):
        width = _half_max_width(
            tau, y, indices[k], indices[k - 1], indices[k + 1], heights[k]
        )
        if width is not None:
            widths.append(width)
    if not widths:
        raise InsufficientSamples("no complete pulse with resolvable half-max crossings")
    fwhm = float(np.mean(widths))

    return PulseMetrics(
        repetition_period_scaled=period,
        repetition_rate_hz=delta0 / period,
        fwhm_scaled=fwhm,
        fwhm_seconds=fwhm / delta0,
        modulation_depth=depth,
        peak_gain=float(np.max(heights)),
    )


def _refined_peaks(tau, y):
    """Interior local maxima with parabolic refinement; plateau ties go left."""
    interior = np.arange(1, y.size - 1)
    mask = (y[interior] > y[interior - 1]) & (y[interior] >= y[interior + 1])
    indices = interior[mask]
    positions, heights = [], []
    for i in indices:
        ym, y0, yp = y[i - 1], y[i], y[i + 1]
        h = 0.5 * (tau[i + 1] - tau[i - 1])
        denom = ym - 2.0 * y0 + yp
        if denom < 0.0:
            shift = 0.5 * h * (ym - yp) / denom
            shift = float(np.clip(shift, -h, h))
            height = y0 - (yp - ym) ** 2 / (8.0 * denom)
        else:
            shift, height = 0.0, y0
        positions.append(tau[i] + shift)
        heights.append(height)
    return np.asarray(positions), np.asarray(heights), indices


def _half_max_width(tau, y, i_peak, i_prev, i_next, peak_height):
    baseline = float(np.min(y[i_prev : i_next + 1]))
    half = baseline + 0.5 * (peak_height - baseline)

    left = None
    for i in range(i_peak - 1, i_prev - 1, -1):
        if y[i] < half:
            left = tau[i] + (tau[i + 1] - tau[i]) * (half - y[i]) / (y[i + 1] - y[i])
            break
    right = None
    for i in range(i_peak + 1, i_next + 1):
        if y[i] < half:
            right = tau[i - 1] + (tau[i] - tau[i - 1]) * (half - y[i - 1]) / (y[i] - y[i - 1])
            break
    if left is None or right is None:
        return None
    return right - left


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def bracket_scan(sp_template: ScaledProblem, eta_values) -> list[BracketScanRow]:
    """Dressed-pair bracket magnitude and branch gap across field amplitudes.

    The template fixes the detunings and the arm ratio; its couplings are
    rescaled linearly to each requested amplitude, so the template must carry
    a nonzero ``eta``.
    """
    if sp_template.eta == 0:
        raise ValidationError("bracket_scan needs a template with nonzero eta")
    rows = []
    for eta in eta_values:
        eta = float(eta)
        if eta < 0.0:
            raise ValidationError(f"eta values must be >= 0, got {eta}")
        scale = eta / sp_template.eta
        sp = dataclasses.replace(
            sp_template,
            xi1=sp_template.xi1 * scale,
            xi2=sp_template.xi2 * scale,
            eta=complex(eta),
        )
        dp = build_dressed_pair(sp)
        rows.append(BracketScanRow(eta, abs(dp.bracket), dp.lambda1 - dp.lambda2))
    return rows


def detuning_scan(
    ms: MediumScenario,
    carrier_values,
    periods: int = 4,
    samples_per_period: int = 256,
    adiabatic_floor: float = DEFAULT_ADIABATIC_FLOOR,
) -> list[DetuningScanRow]:
    """Pulse metrics at the medium exit for each carrier frequency."""
    rows = []
    for carrier in carrier_values:
        scenario = dataclasses.replace(ms, carrier_omega=float(carrier))
        sp = scaled_problem_from_eta(
            scenario.species, scenario.input_eta, scenario.carrier_omega, adiabatic_floor
        )
        dp = build_dressed_pair(sp)
        delta = dp.lambda2 - dp.lambda1
        if delta == 0.0:
            raise NoModulation(0.0)
        period = 2.0 * np.pi / abs(delta)
        n = periods * samples_per_period + 1
        tau = np.linspace(0.0, periods * period, n)
        g = gain_coefficient(scenario, dp)
        ri = np.exp(
            _log_relative_intensity(g, delta, scenario.length_scaled, tau - scenario.length_scaled)
        )
        metrics = pulse_metrics(tau, ri, scenario.species.delta0)
        rows.append(DetuningScanRow(sp.det1, sp.det2, metrics))
    return rows
