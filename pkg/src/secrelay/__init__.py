"""Intercept probability of a dual-hop decode-and-forward relay link under
Nakagami-m fading, node mobility and imperfect channel estimation."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    PreconditionError,
    SecrelayError,
)
from .link import LinkParams, MobilityContext, SpeedConvention, effective_avg_snr  # noqa: E402
from .secrecy import (  # noqa: E402
    EvalPath,
    IpReport,
    SystemConfig,
    crossover_probability,
    ip_asymptotic_scenario1,
    ip_asymptotic_scenario2,
    ip_exact,
    ip_low_threshold_floor,
    ip_reference_quadrature,
)
