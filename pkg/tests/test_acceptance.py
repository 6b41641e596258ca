"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.
"""

import dataclasses
import math
from pathlib import Path

import numpy as np
import pytest

from qspt import (
    MediumScenario,
    analytic_field,
    bracket_scan,
    build_dressed_pair,
    characteristic_values,
    coupling_params,
    dipole_minus,
    dipole_plus,
    oscillator_strength_from_reduced,
    propagate_numeric,
    pulse_metrics,
    radiation_prepared_exponent,
    reduced_dipole_from_oscillator_strength,
    relative_intensity_radiation_prepared,
    scaled_problem_from_eta,
    sodium_preset,
)
from qspt.cli import main

from oracles import dipole_minus_prefactor_sq, eig_reference
from test_dressed import random_problems
from test_propagation import radiation_scenarios

DATA_DIR = Path(__file__).parent / "data"


def trace_at_exit(ms, periods=3, samples_per_period=256):
    sp = scaled_problem_from_eta(ms.species, ms.input_eta, ms.carrier_omega)
    dp = build_dressed_pair(sp)
    delta = dp.lambda2 - dp.lambda1
    period = 2.0 * math.pi / abs(delta)
    tau = np.linspace(0.0, periods * period, periods * samples_per_period + 1)
    ri = np.array(
        [
            relative_intensity_radiation_prepared(ms, dp, ms.length_scaled, t)
            for t in tau
        ]
    )
    return tau, ri, dp


def test_criterion_1_zero_field_spectrum(sodium):
    sp = scaled_problem_from_eta(sodium, 0.0, 287360.0 * sodium.delta0)
    dp = build_dressed_pair(sp)
    assert abs(abs(dp.lambda1 - dp.lambda2) - 1.0) <= 1e-12
    assert abs(abs(dp.bracket) - 1.0) <= 1e-12
    print("PASS criterion 1: zero-field branch gap and bracket are exactly unity")


def test_criterion_2_eigen_oracle_equivalence():
    for sp in random_problems(20260809, 10000):
        p, q = coupling_params(sp)
        lam1, lam2 = characteristic_values(p, q)
        values, vectors = eig_reference(sp.det1, sp.det2, sp.xi1, sp.xi2)
        assert abs(lam1 - values[0]) <= 1e-10 * (1.0 + abs(lam1))
        assert abs(lam2 - values[1]) <= 1e-10 * (1.0 + abs(lam2))
        assert abs(lam1 + lam2 - p) <= 1e-12 * abs(p)
        assert abs(lam1 * lam2 - q) <= 1e-12 * max(abs(q), 1e-3)
        dp = build_dressed_pair(sp)
        for k, (a1, a2) in enumerate(((dp.a1_l1, dp.a2_l1), (dp.a1_l2, dp.a2_l2))):
            assert abs(a1 - vectors[0, k]) <= 1e-10
            assert abs(a2 - vectors[1, k]) <= 1e-10
    print("PASS criterion 2: 10^4 random problems match the dense eigensolver")


def test_criterion_3_bracket_flatness_and_baseline(sodium):
    template = scaled_problem_from_eta(sodium, 1.0, 287360.0 * sodium.delta0)
    rows = bracket_scan(template, np.linspace(0.0, 1.0, 101))
    values = np.array([r.bracket_abs for r in rows])
    variation = (values.max() - values.min()) / values.max()
    assert variation < 0.10

    baseline = np.loadtxt(DATA_DIR / "bracket_baseline.csv", delimiter=",", skiprows=1)
    assert baseline.shape == (101, 3)
    got = np.array([[r.eta, r.bracket_abs, r.lambda_gap] for r in rows])
    assert np.allclose(got, baseline, rtol=1e-12, atol=1e-15)
    print(
        f"PASS criterion 3: bracket flat over eta in [0,1] "
        f"(total variation {variation:.2e}); regression baseline matches"
    )


def test_criterion_4_analytic_numeric_equivalence(fig3_scenario, fig3_dressed):
    zeta = np.linspace(0.0, math.pi, 65)
    tau = np.linspace(0.0, 4.0 * math.pi, 513)
    numeric = propagate_numeric(fig3_scenario, zeta, tau, "linear")
    analytic = analytic_field(fig3_scenario, fig3_dressed, zeta, tau)
    rel = np.abs(numeric.values - analytic.values) / analytic.values
    assert rel.max() <= 1e-3
    print(
        f"PASS criterion 4: integrated intensity matches the closed form "
        f"(max rel deviation {rel.max():.2e})"
    )


def test_criterion_5_repetition_rate_law(fig3_scenario):
    tau, ri, dp = trace_at_exit(fig3_scenario)
    metrics = pulse_metrics(tau, ri, fig3_scenario.species.delta0)
    gap = abs(dp.lambda1 - dp.lambda2)
    assert metrics.repetition_period_scaled == pytest.approx(2.0 * math.pi / gap, rel=5e-3)
    assert metrics.repetition_rate_hz == pytest.approx(1.7716e9, rel=5e-3)

    # full eta0 span at the small detuning, full detuning span at the larger
    # amplitudes; the corner (1e-3, 12) sits inside the branch-pole guard
    # |lambda2 - q| < 1e-14 where amplitude evaluation is rejected by contract
    combos = [(1e-3, 6.0), (1e-2, 6.0), (1e-1, 6.0)]
    combos += [(eta0, det1) for eta0 in (1e-2, 1e-1) for det1 in (9.0, 12.0)]
    periods = []
    for eta0, det1 in combos:
        ms = dataclasses.replace(
            fig3_scenario,
            input_eta=complex(eta0),
            carrier_omega=(287351.0 + det1) * fig3_scenario.species.delta0,
        )
        t, r, _ = trace_at_exit(ms)
        periods.append(
            pulse_metrics(t, r, ms.species.delta0).repetition_period_scaled
        )
    periods = np.array(periods)
    drift = (periods.max() - periods.min()) / periods.mean()
    assert drift < 5e-3
    print(
        f"PASS criterion 5: repetition rate 1771.6 MHz; period drift {drift:.2e} "
        f"over eta0 in [1e-3, 1e-1] and detunings 6..12"
    )


def test_criterion_6_pulse_duration_window(fig3_scenario):
    widths = {}
    for convention in ("cyclic", "angular"):
        species = sodium_preset(frequency_convention=convention)
        ms = MediumScenario(
            species=species,
            density=fig3_scenario.density,
            temperature=fig3_scenario.temperature,
            length_scaled=fig3_scenario.length_scaled,
            alpha=fig3_scenario.alpha,
            beta=fig3_scenario.beta,
            alpha_bar=fig3_scenario.alpha_bar,
            beta_bar=fig3_scenario.beta_bar,
            carrier_omega=287360.0 * species.delta0,
            input_eta=fig3_scenario.input_eta,
        )
        tau, ri, _ = trace_at_exit(ms, samples_per_period=1024)
        metrics = pulse_metrics(tau, ri, species.delta0)
        widths[convention] = metrics.fwhm_seconds
        assert 10e-12 <= metrics.fwhm_seconds <= 1000e-12
    print(
        "PASS criterion 6: exit-face FWHM "
        + ", ".join(f"{k} {v * 1e12:.0f} ps" for k, v in widths.items())
        + " within 10..1000 ps"
    )


def test_criterion_7_reality_and_boundary_invariants():
    rng = np.random.default_rng(99)
    worst_imag = 0.0
    for ms in radiation_scenarios(20260810, 1000):
        dp = build_dressed_pair(
            scaled_problem_from_eta(ms.species, ms.input_eta, ms.carrier_omega)
        )
        x = radiation_prepared_exponent(
            ms, dp, float(rng.uniform(0.0, ms.length_scaled)), float(rng.uniform(0.0, 30.0))
        )
        worst_imag = max(worst_imag, abs(x.imag))
        assert relative_intensity_radiation_prepared(ms, dp, 0.0, 1.7) == 1.0
        doubled = dataclasses.replace(ms, density=2.0 * ms.density)
        x1 = radiation_prepared_exponent(ms, dp, ms.length_scaled, 2.2)
        x2 = radiation_prepared_exponent(doubled, dp, ms.length_scaled, 2.2)
        assert abs(x2.real - 2.0 * x1.real) <= 1e-12 * max(abs(x1.real), 1e-12)
    assert worst_imag <= 1e-12
    print(
        f"PASS criterion 7: exponent real (max |Im| {worst_imag:.1e}), entrance RI = 1, "
        "log-gain linear in density"
    )


def test_criterion_8_angular_momentum_suite():
    for F_from in range(0, 5):
        for F_to in range(max(0, F_from - 1), F_from + 2):
            for M_from in range(-F_from, F_from + 1):
                expected = dipole_minus_prefactor_sq(F_to, M_from - 1, F_from, M_from)
                if expected is not None:
                    got = dipole_minus(F_to, M_from - 1, F_from, M_from, 1.0)
                    assert abs(got**2 - float(expected)) <= 1e-14
                if abs(M_from + 1) <= F_to:
                    plus = dipole_plus(F_to, M_from + 1, F_from, M_from, 1.0)
                    minus = dipole_minus(F_from, M_from, F_to, M_from + 1, 1.0)
                    assert plus == minus
    for f, omega, F in ((0.3199, 3.2e15, 2), (0.05, 8e14, 1), (1.2, 5e15, 3)):
        d = reduced_dipole_from_oscillator_strength(f, omega, F)
        assert abs(oscillator_strength_from_reduced(d, omega, F) - f) <= 1e-12 * f
    print("PASS criterion 8: dipole tables, conjugation identity, and round trip hold")


def test_criterion_9_cli_determinism(tmp_path):
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    assert main(["preset", "fig3", "--out", str(out1)]) == 0
    assert main(["preset", "fig3", "--out", str(out2)]) == 0
    compared = []
    for name in ("intensity.csv", "metrics.csv", "dressed_pair.csv"):
        a = (out1 / name).read_bytes()
        b = (out2 / name).read_bytes()
        assert a == b, f"{name} differs between runs"
        compared.append(name)
    print(f"PASS criterion 9: byte-identical CSVs across runs ({', '.join(compared)})")
