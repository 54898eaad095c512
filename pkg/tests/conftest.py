import random

import pytest

from secrelay.link import LinkParams, MobilityContext
from secrelay.secrecy import SystemConfig


def random_system(rng, m_choices=(1, 2, 3), n_max=4, delta_range=(0.0, 40.0), gamma_range=(0.1, 10.0)):
    """Random valid network drawn from the ranges used by the oracle checks."""

    def link():
        return LinkParams(
            m=rng.choice(m_choices),
            omega=rng.uniform(0.5, 3.0),
            n_rx=rng.randint(1, n_max),
            sigma_eps_sq=rng.uniform(0.0, 0.2),
            delta_db=rng.uniform(*delta_range),
            speed_a_kmh=rng.uniform(0.0, 60.0),
            speed_b_kmh=rng.uniform(0.0, 60.0),
        )

    ctx = MobilityContext(carrier_frequency_hz=rng.uniform(1e9, 6e9), delay_s=rng.uniform(0.0, 1e-3))
    return SystemConfig(
        link_sr=link(), link_rd=link(), link_se1=link(), link_re2=link(), ctx=ctx,
        gamma_th=rng.uniform(*gamma_range),
    )


@pytest.fixture
def table1():
    return SystemConfig()


@pytest.fixture
def pyrng():
    return random.Random(20240611)
