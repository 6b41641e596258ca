import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qspt import MediumScenario, build_dressed_pair, scaled_problem_from_eta, sodium_preset

FIG3_CARRIER_OVER_DELTA0 = 287360.0


@pytest.fixture(scope="session")
def sodium():
    return sodium_preset()


@pytest.fixture(scope="session")
def fig3_scenario(sodium):
    return MediumScenario(
        species=sodium,
        density=4e12,
        temperature=1e-6,
        length_scaled=math.pi,
        alpha=complex(0.5),
        beta=1j * math.sqrt(0.75),
        alpha_bar=1j * math.sqrt(0.75),
        beta_bar=complex(0.5),
        carrier_omega=FIG3_CARRIER_OVER_DELTA0 * sodium.delta0,
        input_eta=complex(0.01),
    )


@pytest.fixture(scope="session")
def fig3_dressed(fig3_scenario):
    sp = scaled_problem_from_eta(
        fig3_scenario.species, fig3_scenario.input_eta, fig3_scenario.carrier_omega
    )
    return build_dressed_pair(sp)
