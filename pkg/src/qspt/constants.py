"""Physical constants in CGS-Gaussian units.

All electromagnetic quantities inside the package are CGS-Gaussian (statC,
statV/cm, erg); the helpers below convert SI inputs at the boundary.
"""

import scipy.constants as _sc

HBAR = _sc.hbar * 1e7                    # erg s
ELEMENTARY_CHARGE = _sc.e * _sc.c * 10.0  # statC
ELECTRON_MASS = _sc.m_e * 1e3             # g
BOLTZMANN = _sc.k * 1e7                   # erg / K
SPEED_OF_LIGHT = _sc.c * 1e2              # cm / s


def field_si_to_cgs(e_volt_per_meter: float) -> float:
    """Electric field amplitude, V/m to statV/cm."""
    return e_volt_per_meter * 1e4 / _sc.c


def dipole_si_to_cgs(d_coulomb_meter: float) -> float:
    """Dipole moment, C m to statC cm."""
    return d_coulomb_meter * _sc.c * 1e3


def density_si_to_cgs(n_per_cubic_meter: float) -> float:
    """Number density, m^-3 to cm^-3."""
    return n_per_cubic_meter * 1e-6
