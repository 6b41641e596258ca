import math

import numpy as np
import pytest

from qspt import (
    DressedPair,
    ScaledProblem,
    build_dressed_pair,
    characteristic_values,
    coupling_params,
    dressed_amplitudes,
    excited_amplitude,
    scaled_problem_from_eta,
    superposition_bracket,
)
from qspt.errors import ComplexRoots, DegenerateBranch, ZeroDetuning

from oracles import eig_reference


def make_sp(det1, det2, xi1, xi2, eta=None):
    if eta is None:
        eta = xi1
    return ScaledProblem(det1, det2, complex(xi1), complex(xi2), complex(eta), 2.9e5)


def random_problems(seed, n, amp_range=(0.02, 0.5)):
    rng = np.random.default_rng(seed)
    problems = []
    while len(problems) < n:
        det1 = rng.uniform(5.0, 40.0) * rng.choice([-1.0, 1.0])
        det2 = det1 + 1.0
        if abs(det2) < 5.0:
            continue
        amp = rng.uniform(*amp_range)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        ratio = rng.uniform(0.5, 1.5)
        sp = ScaledProblem(det1, det2, amp * phase, amp * ratio * phase, amp * phase, 2.9e5)
        p, q = coupling_params(sp)
        if p * p - 4.0 * q <= 1e-6:
            continue
        problems.append(sp)
    return problems


# ---------------------------------------------------------------------------
# coupling parameters and characteristic values
# ---------------------------------------------------------------------------

def test_coupling_params_free_atom():
    assert coupling_params(make_sp(9.0, 10.0, 0.0, 0.0)) == (1.0, 0.0)


def test_coupling_params_direct_substitution():
    # |xi1|^2 = det1 makes q = 1; with xi2 = 0 then p = 2
    assert coupling_params(make_sp(9.0, 10.0, 3.0, 0.0)) == (2.0, 1.0)


def test_coupling_params_weak_field_arithmetic():
    p, q = coupling_params(make_sp(9.0, 10.0, 0.1, 0.1))
    assert p == pytest.approx(1.0 + 0.01 / 9.0 + 0.01 / 10.0, rel=1e-15)
    assert q == pytest.approx(0.01 / 9.0, rel=1e-15)


def test_coupling_params_quadratic_in_eta():
    p1, q1 = coupling_params(make_sp(9.0, 10.0, 0.1, 0.08))
    p2, q2 = coupling_params(make_sp(9.0, 10.0, 0.2, 0.16))
    assert p2 - 1.0 == pytest.approx(4.0 * (p1 - 1.0), rel=1e-12)
    assert q2 == pytest.approx(4.0 * q1, rel=1e-12)


def test_coupling_params_zero_detuning():
    with pytest.raises(ZeroDetuning):
        coupling_params(make_sp(0.0, 1.0, 0.1, 0.1))


def test_characteristic_values_zero_field():
    assert characteristic_values(1.0, 0.0) == (1.0, 0.0)


def test_characteristic_values_degenerate():
    lam1, lam2 = characteristic_values(2.0, 1.0)
    assert lam1 == 1.0 and lam2 == 1.0


def test_characteristic_values_complex_roots():
    with pytest.raises(ComplexRoots):
        characteristic_values(0.0, 1.0)


def test_characteristic_values_ordering_and_vieta():
    rng = np.random.default_rng(3)
    for _ in range(500):
        p = float(rng.uniform(-5.0, 5.0))
        q = float(rng.uniform(-5.0, 5.0))
        if p * p - 4 * q < 0:
            continue
        lam1, lam2 = characteristic_values(p, q)
        assert lam1 >= lam2
        assert lam1 + lam2 == pytest.approx(p, rel=1e-12, abs=1e-12)
        assert lam1 * lam2 == pytest.approx(q, rel=1e-12, abs=1e-12)


def test_lambda2_stable_against_cancellation():
    # q ~ 1e-7: the subtractive root formula would lose ~9 digits here
    sp = make_sp(9.0, 10.0, 1e-3, 1e-3)
    p, q = coupling_params(sp)
    lam1, lam2 = characteristic_values(p, q)
    values, _ = eig_reference(sp.det1, sp.det2, sp.xi1, sp.xi2)
    assert lam2 == pytest.approx(values[1], rel=1e-12)
    assert lam1 * lam2 == pytest.approx(q, rel=1e-14)


# ---------------------------------------------------------------------------
# dressed amplitudes
# ---------------------------------------------------------------------------

def test_decoupled_limits():
    # xi1 = 0: q = 0 branch is the bare lower state
    sp = make_sp(9.0, 10.0, 0.0, 0.5)
    p, q = coupling_params(sp)
    lam1, lam2 = characteristic_values(p, q)
    assert (lam2, q) == (0.0, 0.0)
    assert dressed_amplitudes(sp, lam2, q) == (1.0 + 0.0j, 0.0 + 0.0j)
    assert dressed_amplitudes(sp, lam1, q) == (0.0 + 0.0j, 1.0 + 0.0j)
    # xi2 = 0: branch at lambda = q is the bare lower state again
    sp = make_sp(9.0, 10.0, 0.5, 0.0)
    p, q = coupling_params(sp)
    lam1, lam2 = characteristic_values(p, q)
    assert lam2 == pytest.approx(q, rel=1e-15)
    assert dressed_amplitudes(sp, lam2, q) == (1.0 + 0.0j, 0.0 + 0.0j)
    assert dressed_amplitudes(sp, lam1, q) == (0.0 + 0.0j, 1.0 + 0.0j)


def test_degenerate_branch_guard():
    # couplings ~ 1e-9 drive lambda2 - q far below the guard
    sp = make_sp(9.0, 10.0, 1e-9, 1e-9)
    p, q = coupling_params(sp)
    _, lam2 = characteristic_values(p, q)
    with pytest.raises(DegenerateBranch):
        dressed_amplitudes(sp, lam2, q)


def test_symmetric_strong_coupling_equalizes_amplitudes():
    # hypothetical equal detunings: in the strong-coupling limit the splitting
    # term is negligible and both branches approach |A1| = |A2| = 1/sqrt(2)
    sp = make_sp(10.0, 10.0, 200.0, 200.0)
    p, q = coupling_params(sp)
    lam1, lam2 = characteristic_values(p, q)
    for lam in (lam1, lam2):
        a1, a2 = dressed_amplitudes(sp, lam, q)
        assert abs(a1) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-3)
        assert abs(a2) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-3)
    # and they match the dense eigensolver to full precision
    values, vectors = eig_reference(sp.det1, sp.det2, sp.xi1, sp.xi2)
    a1, a2 = dressed_amplitudes(sp, lam1, q)
    assert a1 == pytest.approx(vectors[0, 0], abs=1e-12)
    assert a2 == pytest.approx(vectors[1, 0], abs=1e-12)


def test_eigen_oracle_equivalence_random_suite():
    for sp in random_problems(17, 2000):
        p, q = coupling_params(sp)
        lam1, lam2 = characteristic_values(p, q)
        values, vectors = eig_reference(sp.det1, sp.det2, sp.xi1, sp.xi2)
        assert abs(lam1 - values[0]) <= 1e-10 * (1.0 + abs(lam1))
        assert abs(lam2 - values[1]) <= 1e-10 * (1.0 + abs(lam2))
        assert lam1 + lam2 == pytest.approx(p, rel=1e-12)
        assert lam1 * lam2 == pytest.approx(q, rel=1e-12, abs=1e-15)
        m = np.array(
            [
                [abs(sp.xi1) ** 2 / sp.det1, sp.xi1 * np.conj(sp.xi2) / sp.det2],
                [sp.xi2 * np.conj(sp.xi1) / sp.det1, 1.0 + abs(sp.xi2) ** 2 / sp.det2],
            ]
        )
        for k, lam in enumerate((lam1, lam2)):
            a1, a2 = dressed_amplitudes(sp, lam, q)
            assert abs(a1) ** 2 + abs(a2) ** 2 == pytest.approx(1.0, abs=1e-12)
            assert abs(a1 - vectors[0, k]) < 1e-10
            assert abs(a2 - vectors[1, k]) < 1e-10
            v = np.array([a1, a2])
            residual = np.linalg.norm(m @ v - lam * v)
            assert residual <= 1e-10 * (1.0 + abs(lam))


def test_zero_intensity_anchor(sodium):
    # branch gap tends to the scaled splitting with O(eta^2) error
    for det1 in (6.0, 9.0, 15.0, 20.0):
        carrier = (287351.0 + det1) * sodium.delta0
        sp = scaled_problem_from_eta(sodium, 1e-3, carrier)
        lam1, lam2 = characteristic_values(*coupling_params(sp))
        assert abs(abs(lam1 - lam2) - 1.0) < 1e-4


# ---------------------------------------------------------------------------
# excited amplitude
# ---------------------------------------------------------------------------

def test_excited_amplitude_zero_coupling():
    sp = make_sp(9.0, 10.0, 0.0, 0.0)
    assert excited_amplitude(sp, 1.0, 0.0, 0.3) == 0.0


def test_excited_amplitude_single_arm():
    sp = make_sp(9.0, 10.0, 0.1, 0.1)
    b = excited_amplitude(sp, 0.6 + 0.1j, 0.0, 0.0)
    assert b == pytest.approx(-sp.xi1.conjugate() * (0.6 + 0.1j) / 9.0, rel=1e-15)


def test_excited_amplitude_magnitude_weak_field(fig3_dressed):
    # |b|^2 of order (xi/det)^2 ~ 1e-4 in the weak-field sodium regime
    sp = make_sp(9.0, 10.0, 0.1, 0.1)
    a1, a2 = 1.0 / math.sqrt(2), 1.0 / math.sqrt(2)
    b = excited_amplitude(sp, a1, a2, 0.0)
    assert 1e-5 < abs(b) ** 2 < 1e-3


def test_excited_amplitude_modulus_constant_in_time():
    sp = make_sp(9.0, 10.0, 0.2, 0.15)
    b0 = excited_amplitude(sp, 0.8, 0.6, 0.0)
    b1 = excited_amplitude(sp, 0.8, 0.6, 2.7)
    assert abs(b1) == pytest.approx(abs(b0), rel=1e-12)


def test_excited_amplitude_validity_warning():
    sp = make_sp(5.0, 6.0, 4.0, 4.0)
    with pytest.warns(UserWarning, match="adiabatic validity"):
        excited_amplitude(sp, 1.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# superposition bracket
# ---------------------------------------------------------------------------

def test_bracket_zero_field_is_unity():
    dp = build_dressed_pair(make_sp(9.0, 10.0, 0.0, 0.0))
    assert dp.lambda1 == 1.0 and dp.lambda2 == 0.0
    assert dp.bracket == 1.0 + 0.0j
    assert superposition_bracket(dp) == dp.bracket


def test_bracket_vanishes_for_identical_vectors():
    v = complex(1 / math.sqrt(2))
    dp = DressedPair(1.0, 1.0, v, v, v, v, 0.0, 0.0, 2.0, 1.0, 0.0)
    assert superposition_bracket(dp) == 0.0


def test_bracket_magnitude_bounded():
    for sp in random_problems(23, 300):
        dp = build_dressed_pair(sp)
        assert abs(dp.bracket) <= 1.0 + 1e-12


def test_bracket_fig2_regime(fig3_dressed):
    # weak field, sodium frequencies: bracket magnitude within 1e-3 of unity
    assert abs(abs(fig3_dressed.bracket) - 1.0) < 1e-3
