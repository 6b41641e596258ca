"""Adiabatic dressed states of the driven doublet.

With the upper level eliminated, the two ground amplitudes obey a 2x2 linear
system whose stationary solutions oscillate as exp(-i lambda tau).  The two
characteristic values are the roots of lambda^2 - p lambda + q = 0 with

    p = 1 + |xi1|^2/det1 + |xi2|^2/det2,      q = |xi1|^2/det1.

Each branch carries a normalized amplitude pair (A1, A2); the determinant-like
combination A2(l1) A1(l2) - A1(l1) A2(l2) ("superposition bracket") sets the
gain amplitude during propagation.  Branch 1 always carries the + root, so
the bracket sign is deterministic.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .atomic import ScaledProblem
from .errors import ComplexRoots, DegenerateBranch, ZeroDetuning

# Coupled branches closer to the pole than this are rejected rather than
# evaluated through the near-0/0 amplitude formula.
DEGENERATE_GUARD = 1e-14


@dataclass(frozen=True)
class DressedPair:
    """Both dressed branches of one scaled problem.

    ``a*_l1``/``a*_l2`` are the normalized ground amplitude pairs of the
    lambda1/lambda2 branches, ``b_l1``/``b_l2`` the eliminated upper-state
    amplitudes at tau = 0, and ``bracket`` the gain-controlling combination
    A2(l1) A1(l2) - A1(l1) A2(l2).
    """

    lambda1: float
    lambda2: float
    a1_l1: complex
    a2_l1: complex
    a1_l2: complex
    a2_l2: complex
    b_l1: complex
    b_l2: complex
    p: float
    q: float
    bracket: complex


def coupling_params(sp: ScaledProblem) -> tuple[float, float]:
    """Characteristic polynomial coefficients (p, q); both real."""
    if sp.det1 == 0.0 or sp.det2 == 0.0:
        raise ZeroDetuning("scaled detunings must be nonzero")
    a = (sp.xi1.conjugate() * sp.xi1).real / sp.det1
    b = (sp.xi2.conjugate() * sp.xi2).real / sp.det2
    return 1.0 + a + b, a


def characteristic_values(p: float, q: float) -> tuple[float, float]:
    """Roots of lambda^2 - p lambda + q, ordered lambda1 >= lambda2.

    The smaller-magnitude root is recovered through the product identity
    lambda1 lambda2 = q to avoid cancellation when q is tiny.
    """
    disc = p * p - 4.0 * q
    if disc < 0.0:
        raise ComplexRoots(f"p^2 - 4q = {disc:.3e} < 0 for p={p!r}, q={q!r}")
    s = math.sqrt(disc)
    if p >= 0.0:
        lam1 = 0.5 * (p + s)
        lam2 = q / lam1 if lam1 != 0.0 else 0.5 * (p - s)
    else:
        lam2 = 0.5 * (p - s)
        lam1 = q / lam2
    return lam1, lam2


def dressed_amplitudes(sp: ScaledProblem, lam: float, q: float) -> tuple[complex, complex]:
    """Normalized amplitude pair (A1, A2) of the branch with value ``lam``.

    A1/A2 = xi1 xi2* / (det2 (lam - q)) and |A1|^2 + |A2|^2 = 1 with A2 real
    positive.  When one coupling vanishes the system decouples and the branch
    reduces to a bare state: (1, 0) for the branch at lam = q, (0, 1) for the
    branch at lam = p - q.
    """
    coupling = sp.xi1 * sp.xi2.conjugate()
    if coupling == 0.0:
        p, _ = coupling_params(sp)
        if abs(lam - q) <= abs(lam - (p - q)):
            return complex(1.0), complex(0.0)
        return complex(0.0), complex(1.0)
    if abs(lam - q) < DEGENERATE_GUARD:
        raise DegenerateBranch(
            f"|lambda - q| = {abs(lam - q):.3e} with nonzero couplings"
        )
    r = coupling / (sp.det2 * (lam - q))
    a2 = 1.0 / math.sqrt(1.0 + (r.conjugate() * r).real)
    return r * a2, complex(a2)


def excited_amplitude(sp: ScaledProblem, a1: complex, a2: complex, t_scaled: float) -> complex:
    """Eliminated upper-state amplitude b at scaled time tau.

    Small by construction in the adiabatic regime; a warning is emitted when
    |b|^2 exceeds 0.1, signalling parameters outside the model's validity.
    """
    if sp.det1 == 0.0 or sp.det2 == 0.0:
        raise ZeroDetuning("scaled detunings must be nonzero")
    term1 = (sp.xi1.conjugate() / sp.det1) * a1 * cmath.exp(-1j * sp.det1 * t_scaled)
    # the doublet-frame redefinition shifts the second arm's phase by +tau
    term2 = (sp.xi2.conjugate() / sp.det2) * a2 * cmath.exp(-1j * (sp.det2 - 1.0) * t_scaled)
    b = -(term1 + term2)
    if (b.conjugate() * b).real > 0.1:
        warnings.warn(
            f"|b|^2 = {abs(b)**2:.3g} > 0.1: upper-state population outside "
            "the adiabatic validity domain",
            stacklevel=2,
        )
    return b


def superposition_bracket(dp: DressedPair) -> complex:
    """A2(l1) A1(l2) - A1(l1) A2(l2); magnitude <= 1 for normalized pairs."""
    return dp.a2_l1 * dp.a1_l2 - dp.a1_l1 * dp.a2_l2


def build_dressed_pair(sp: ScaledProblem) -> DressedPair:
    """Solve both branches of a scaled problem."""
    p, q = coupling_params(sp)
    lam1, lam2 = characteristic_values(p, q)
    a1_l1, a2_l1 = dressed_amplitudes(sp, lam1, q)
    a1_l2, a2_l2 = dressed_amplitudes(sp, lam2, q)
    b_l1 = excited_amplitude(sp, a1_l1, a2_l1, 0.0)
    b_l2 = excited_amplitude(sp, a1_l2, a2_l2, 0.0)
    bracket = a2_l1 * a1_l2 - a1_l1 * a2_l2
    return DressedPair(
        lambda1=lam1,
        lambda2=lam2,
        a1_l1=a1_l1,
        a2_l1=a2_l1,
        a1_l2=a1_l2,
        a2_l2=a2_l2,
        b_l1=b_l1,
        b_l2=b_l2,
        p=p,
        q=q,
        bracket=bracket,
    )
