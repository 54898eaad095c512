"""Gamma statistics of the post-MRC SNR of one hop."""

import math
from dataclasses import dataclass

from .errors import DomainError
from .special import log_regularized_gamma_p


@dataclass(frozen=True)
class SnrDistribution:
    """Gamma law with ``shape = m * N`` and ``rate = m / upsilon``."""

    shape: float
    rate: float

    def __post_init__(self):
        if not (self.shape > 0 and self.rate > 0):
            raise DomainError(f"shape and rate must be positive, got {self.shape}, {self.rate}")

    @classmethod
    def for_link(cls, m, n_rx, upsilon):
        return cls(shape=m * n_rx, rate=m / upsilon)

    @property
    def mean(self):
        return self.shape / self.rate

    @property
    def variance(self):
        return self.shape / self.rate ** 2


def log_pdf(d, y):
    if y < 0:
        raise DomainError(f"SNR density is defined for y >= 0, got {y}")
    if y == 0:
        if d.shape == 1:
            return math.log(d.rate)
        return -math.inf if d.shape > 1 else math.inf
    return d.shape * math.log(d.rate) - math.lgamma(d.shape) + (d.shape - 1.0) * math.log(y) - d.rate * y


def pdf(d, y):
    return math.exp(log_pdf(d, y))


def cdf(d, y):
    if y < 0:
        raise DomainError(f"SNR CDF is defined for y >= 0, got {y}")
    return math.exp(log_regularized_gamma_p(d.shape, d.rate * y))


def sf(d, y):
    """Complementary CDF."""
    return -math.expm1(log_regularized_gamma_p(d.shape, d.rate * y))


def sample(d, rng, n):
    """Draw ``n`` i.i.d. variates from ``rng`` (a :class:`numpy.random.Generator`).

    numpy's Gamma sampler is the Marsaglia-Tsang squeeze method, valid
    without boosting because ``shape = m * N >= 1`` always holds here.
    """
    return rng.gamma(d.shape, 1.0 / d.rate, size=n)
