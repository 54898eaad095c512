"""Mobility and CSI-impairment model of a single directed link.

A link X->Z is described by its Nakagami fading, receive-antenna count,
estimation/mobility noise powers, transmit SNR ``delta`` (in dB) and the
speeds of both end nodes. From these we derive the Jakes correlation
coefficient and the effective per-branch average SNR that feeds the Gamma
statistics of the combined SNR.
"""

import enum
import math
from dataclasses import dataclass

from .special import bessel_j0

LIGHT_SPEED = 2.99792458e8
KMH_TO_MPS = 1.0 / 3.6

# Marker for "derive the mobility noise power from omega and sigma_eps".
AUTO = "auto"


class SpeedConvention(enum.Enum):
    OPPOSITE_DIRECTIONS = "opposite"
    SAME_DIRECTION = "same"
    EXPLICIT_RELATIVE = "explicit"


@dataclass(frozen=True)
class MobilityContext:
    carrier_frequency_hz: float = 2.4e9
    delay_s: float = 1e-3
    light_speed_mps: float = LIGHT_SPEED
    speed_convention: SpeedConvention = SpeedConvention.OPPOSITE_DIRECTIONS

    def __post_init__(self):
        if not self.carrier_frequency_hz > 0:
            raise ValueError("carrier frequency must be positive")
        if not self.delay_s >= 0:
            raise ValueError("delay must be non-negative")


@dataclass(frozen=True)
class LinkParams:
    """One directed link.

    ``speed_a_kmh`` is the transmitter speed and ``speed_b_kmh`` the receiver
    speed; under ``EXPLICIT_RELATIVE`` the first one is the relative speed
    itself. ``sigma_w_sq`` is either a float or :data:`AUTO`.
    """

    m: int = 2
    omega: float = 2.0
    n_rx: int = 1
    sigma_eps_sq: float = 0.1
    sigma_w_sq: object = AUTO
    delta_db: float = 30.0
    speed_a_kmh: float = 25.0
    speed_b_kmh: float = 25.0

    @property
    def delta_linear(self):
        return 10.0 ** (self.delta_db / 10.0)

    @property
    def shape(self):
        return self.m * self.n_rx


@dataclass(frozen=True)
class EffectiveSnr:
    rho: float
    upsilon: float
    upsilon_ceiling: float


def relative_speed(link, ctx):
    """Relative speed of the two end nodes in m/s."""
    conv = ctx.speed_convention
    if conv is SpeedConvention.OPPOSITE_DIRECTIONS:
        kmh = link.speed_a_kmh + link.speed_b_kmh
    elif conv is SpeedConvention.SAME_DIRECTION:
        kmh = abs(link.speed_b_kmh - link.speed_a_kmh)
    else:
        kmh = link.speed_a_kmh
    return kmh * KMH_TO_MPS


def jakes_argument(link, ctx):
    return 2.0 * math.pi * relative_speed(link, ctx) * ctx.carrier_frequency_hz * ctx.delay_s / ctx.light_speed_mps


def correlation_coefficient(link, ctx):
    """Jakes time-correlation between the estimated and the actual channel."""
    return bessel_j0(jakes_argument(link, ctx))


def resolve_sigma_w(link):
    if isinstance(link.sigma_w_sq, str):
        return link.omega + link.sigma_eps_sq
    return float(link.sigma_w_sq)


def impairment_power(rho, link):
    """Estimation plus mobility noise power seen by one branch, per unit fading power."""
    rho2 = rho * rho
    return rho2 * link.sigma_eps_sq + (1.0 - rho2) * resolve_sigma_w(link)


def effective_avg_snr(link, ctx, rho=None):
    """Effective per-branch average SNR and its high-SNR ceiling.

    ``rho`` may be passed to bypass the Jakes model (used by property tests
    and by the fading-level oracle).
    """
    if rho is None:
        rho = correlation_coefficient(link, ctx)
    rho2 = rho * rho
    delta = link.delta_linear
    impair = impairment_power(rho, link)
    upsilon = rho2 * delta / (delta / link.omega * impair + 1.0)
    ceiling = rho2 * link.omega / impair if impair > 0 else math.inf
    return EffectiveSnr(rho=rho, upsilon=upsilon, upsilon_ceiling=ceiling)
