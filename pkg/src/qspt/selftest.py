"""Built-in invariant suites behind ``qspt selftest``.

Each check prints one PASS/FAIL line; the runner returns False as soon as any
check fails (after finishing the list).  These are quick sanity suites, not
the full development test matrix.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .atomic import (
    dipole_minus,
    dipole_plus,
    oscillator_strength_from_reduced,
    reduced_dipole_from_oscillator_strength,
    scaled_problem_from_eta,
    sodium_preset,
    thermal_weights,
    ScaledProblem,
)
from .dressed import build_dressed_pair, characteristic_values, coupling_params
from .propagation import (
    MediumScenario,
    analytic_field,
    gain_coefficient,
    radiation_prepared_exponent,
)


def _random_problems(rng: np.random.Generator, n: int):
    problems = []
    while len(problems) < n:
        det1 = rng.uniform(5.0, 40.0) * rng.choice([-1.0, 1.0])
        det2 = det1 + 1.0
        if abs(det2) < 5.0:
            continue
        amp = rng.uniform(0.02, 0.5)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        ratio = rng.uniform(0.5, 1.5)
        xi1 = amp * phase
        xi2 = amp * ratio * phase
        p = 1.0 + abs(xi1) ** 2 / det1 + abs(xi2) ** 2 / det2
        q = abs(xi1) ** 2 / det1
        if p * p - 4.0 * q <= 1e-6:
            continue
        problems.append(
            ScaledProblem(det1, det2, xi1, xi2, eta=xi1, omega_scaled=2.9e5)
        )
    return problems


def _check_dressed_identities(rng, trials):
    worst_vieta = 0.0
    worst_norm = 0.0
    worst_residual = 0.0
    for sp in _random_problems(rng, trials):
        dp = build_dressed_pair(sp)
        p, q = coupling_params(sp)
        worst_vieta = max(worst_vieta, abs(dp.lambda1 + dp.lambda2 - p) / max(1.0, abs(p)))
        worst_vieta = max(worst_vieta, abs(dp.lambda1 * dp.lambda2 - q) / max(1.0, abs(q)))
        m = np.array(
            [
                [abs(sp.xi1) ** 2 / sp.det1, sp.xi1 * np.conj(sp.xi2) / sp.det2],
                [sp.xi2 * np.conj(sp.xi1) / sp.det1, 1.0 + abs(sp.xi2) ** 2 / sp.det2],
            ]
        )
        for lam, a1, a2 in (
            (dp.lambda1, dp.a1_l1, dp.a2_l1),
            (dp.lambda2, dp.a1_l2, dp.a2_l2),
        ):
            worst_norm = max(worst_norm, abs(abs(a1) ** 2 + abs(a2) ** 2 - 1.0))
            v = np.array([a1, a2])
            res = np.linalg.norm(m @ v - lam * v) / (1.0 + abs(lam))
            worst_residual = max(worst_residual, res)
    ok = worst_vieta < 1e-12 and worst_norm < 1e-12 and worst_residual < 1e-10
    return ok, (
        f"vieta {worst_vieta:.2e}, normalization {worst_norm:.2e}, "
        f"residual {worst_residual:.2e}"
    )


def _check_zero_intensity_anchor():
    species = sodium_preset()
    worst = 0.0
    for det1 in (6.0, 9.0, 15.0):
        carrier = (287351.0 + det1) * species.delta0
        sp = scaled_problem_from_eta(species, 1e-3, carrier)
        lam1, lam2 = characteristic_values(*coupling_params(sp))
        worst = max(worst, abs(abs(lam1 - lam2) - 1.0))
    return worst < 1e-4, f"max |gap - 1| = {worst:.2e} at eta = 1e-3"


def _check_thermal_weights(rng, trials):
    species = sodium_preset()
    ok = True
    for temperature in rng.uniform(1e-7, 1000.0, size=trials):
        w1, w2 = thermal_weights(species.delta0, float(temperature))
        ok &= abs(w1 + w2 - 1.0) <= 1e-15 and 0.0 <= w1 <= 1.0 and 0.0 <= w2 <= 1.0
    w1, w2 = thermal_weights(species.delta0, 0.0)
    ok &= (w1, w2) == (1.0, 0.0)
    return ok, "sum-to-one and range checks"


def _check_dipole_identities():
    for F_from in range(0, 5):
        for F_to in range(max(0, F_from - 1), min(4, F_from + 1) + 1):
            for M_from in range(-F_from, F_from + 1):
                M_to = M_from + 1
                if abs(M_to) > F_to:
                    continue
                plus = dipole_plus(F_to, M_to, F_from, M_from, 1.0)
                minus = dipole_minus(F_from, M_from, F_to, M_to, 1.0)
                if plus != minus:
                    return False, f"conjugation broken at F {F_from}->{F_to}, M {M_from}"
    for F in range(1, 5):
        total = Fraction(0)
        for M in range(-F + 1, F + 1):
            total += Fraction((F - M + 1) * (F + M), F * (F + 1) * (2 * F + 1))
        if total != Fraction(2, 3):
            return False, f"sum rule at F={F}: {total}"
        acc = 0.0
        for M in range(-F + 1, F + 1):
            acc += dipole_minus(F, M - 1, F, M, 1.0) ** 2
        if abs(acc - 2.0 / 3.0) > 1e-12:
            return False, f"numeric sum rule at F={F}: {acc!r}"
    return True, "conjugation + sum rule, F <= 4"


def _check_oscillator_round_trip(rng, trials):
    worst = 0.0
    for _ in range(trials):
        f = float(rng.uniform(1e-3, 2.0))
        omega = float(rng.uniform(1e14, 1e16))
        F = int(rng.integers(0, 5))
        d = reduced_dipole_from_oscillator_strength(f, omega, F)
        worst = max(worst, abs(oscillator_strength_from_reduced(d, omega, F) - f) / f)
    return worst < 1e-12, f"worst relative error {worst:.2e}"


def _radiation_scenario(rng) -> MediumScenario:
    a = rng.uniform(0.05, 0.95)
    b = np.sqrt(1.0 - a * a)
    ab = rng.uniform(0.05, 0.95)
    bb = np.sqrt(1.0 - ab * ab)
    return MediumScenario(
        species=sodium_preset(),
        density=float(rng.uniform(1e11, 1e13)),
        temperature=float(rng.uniform(1e-6, 300.0)),
        length_scaled=float(rng.uniform(0.1, 2.0 * np.pi)),
        alpha=complex(a),
        beta=complex(0.0, b * rng.choice([-1.0, 1.0])),
        alpha_bar=complex(0.0, ab * rng.choice([-1.0, 1.0])),
        beta_bar=complex(bb),
        carrier_omega=(287351.0 + rng.uniform(6.0, 20.0)) * sodium_preset().delta0,
        input_eta=complex(rng.uniform(3e-3, 0.1)),
    )


def _check_reality_and_boundary(rng, trials):
    worst_imag = 0.0
    worst_boundary = 0.0
    for _ in range(trials):
        ms = _radiation_scenario(rng)
        sp = scaled_problem_from_eta(ms.species, ms.input_eta, ms.carrier_omega)
        dp = build_dressed_pair(sp)
        x = radiation_prepared_exponent(
            ms, dp, float(rng.uniform(0.0, ms.length_scaled)), float(rng.uniform(0.0, 20.0))
        )
        worst_imag = max(worst_imag, abs(x.imag))
        field = analytic_field(ms, dp, np.linspace(0.0, ms.length_scaled, 3), np.linspace(0.0, 6.0, 4))
        worst_boundary = max(
            worst_boundary, float(np.max(np.abs(field.values[0] - abs(ms.input_eta) ** 2)))
        )
    ok = worst_imag <= 1e-12 and worst_boundary == 0.0
    return ok, f"max |Im| = {worst_imag:.2e}, boundary residue {worst_boundary:.2e}"


def _check_density_linearity(rng, trials):
    import dataclasses

    worst = 0.0
    for _ in range(trials):
        ms = _radiation_scenario(rng)
        sp = scaled_problem_from_eta(ms.species, ms.input_eta, ms.carrier_omega)
        dp = build_dressed_pair(sp)
        ms2 = dataclasses.replace(ms, density=2.0 * ms.density)
        g1 = gain_coefficient(ms, dp)
        g2 = gain_coefficient(ms2, dp)
        worst = max(worst, abs(g2 - 2.0 * g1) / max(1e-300, abs(g1)))
    return worst < 1e-12, f"worst relative deviation {worst:.2e}"


def run_selftest(seed: int = 2026, trials: int = 2000) -> bool:
    """Run every invariant suite; prints one line per check."""
    rng = np.random.default_rng(seed)
    checks = (
        ("dressed identities (Vieta, normalization, residual)", lambda: _check_dressed_identities(rng, min(trials, 2000))),
        ("zero-intensity branch gap anchor", _check_zero_intensity_anchor),
        ("thermal weight normalization", lambda: _check_thermal_weights(rng, 200)),
        ("dipole conjugation and sum rule", _check_dipole_identities),
        ("oscillator strength round trip", lambda: _check_oscillator_round_trip(rng, 200)),
        ("radiation-prepared reality + boundary identity", lambda: _check_reality_and_boundary(rng, 200)),
        ("gain linear in density", lambda: _check_density_linearity(rng, 100)),
    )
    all_ok = True
    for name, fn in checks:
        ok, detail = fn()
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
