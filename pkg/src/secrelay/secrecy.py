"""Closed-form intercept probability of the dual-hop DF relay link.

Hop shapes and rates follow the Gamma law of the combined SNR:
``a = m * N`` and ``r = m / upsilon``. The four hops are labelled

* ``sr``  source -> relay (legitimate, first hop)
* ``rd``  relay -> destination (legitimate, second hop)
* ``se1`` source -> first eavesdropper
* ``re2`` relay -> second eavesdropper

The exact expression is a double finite sum of incomplete-gamma terms.
Each term is formed as a log magnitude (prefactor included), exponentiated
once and accumulated with its sign via ``math.fsum``; the individual terms
are bounded by one, so nothing overflows even for ``m * N`` in the
sixties.
"""

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate, special as sps

from .errors import ConsistencyError, DomainError, PreconditionError
from .link import LinkParams, MobilityContext, effective_avg_snr
from .special import (
    ln_gamma,
    log_factorial,
    log_gamma_lower,
    log_gamma_upper,
    log_gauss_2f1,
)

LINK_NAMES = ("sr", "rd", "se1", "re2")
CLAMP_TOL = 1e-9
UPSILON_FLOOR = 1e-300


class EvalPath(enum.Enum):
    EXACT = "EXACT"
    LOW_THRESHOLD_FLOOR = "LOW_THRESHOLD_FLOOR"
    ASYMPTOTIC_S1 = "ASYMPTOTIC_S1"
    ASYMPTOTIC_S2 = "ASYMPTOTIC_S2"
    MONTE_CARLO = "MONTE_CARLO"


@dataclass(frozen=True)
class SystemConfig:
    link_sr: LinkParams = field(default_factory=lambda: LinkParams(n_rx=4))
    link_rd: LinkParams = field(default_factory=lambda: LinkParams(n_rx=4))
    link_se1: LinkParams = field(default_factory=lambda: LinkParams(n_rx=2, delta_db=10.0))
    link_re2: LinkParams = field(default_factory=lambda: LinkParams(n_rx=2, delta_db=10.0))
    ctx: MobilityContext = field(default_factory=MobilityContext)
    gamma_th: float = 3.0

    def links(self):
        return {name: getattr(self, "link_" + name) for name in LINK_NAMES}

    def with_links(self, **links):
        return replace(self, **{"link_" + k: v for k, v in links.items()})


@dataclass
class IpReport:
    ip: float
    path: EvalPath
    terms: dict = field(default_factory=dict)
    aux: dict = field(default_factory=dict)
    mc_stderr: float = None


@dataclass(frozen=True)
class CrossoverInputs:
    m_l: int
    m_w: int
    omega_l: float
    omega_w: float
    n_l: int
    n_w: int


def effective_snrs(cfg):
    return {name: effective_avg_snr(link, cfg.ctx) for name, link in cfg.links().items()}


def _require_integer_m(cfg):
    bad = [n for n, link in cfg.links().items() if not (float(link.m).is_integer() and link.m >= 1)]
    if bad:
        raise PreconditionError(
            "closed-form evaluation needs integer Nakagami m >= 1 on every link; offending links: " + ", ".join(bad)
        )


def _clamp(raw, what):
    if not (-CLAMP_TOL <= raw <= 1.0 + CLAMP_TOL) or math.isnan(raw):
        raise ConsistencyError(f"{what}: raw intercept probability {raw!r} outside [0, 1]")
    return min(1.0, max(0.0, raw))


def _log_upper(a, x):
    # Gamma_inc(a, 0) = Gamma(a); the threshold-free floor passes x = 0.
    if x == 0.0:
        return math.lgamma(a)
    return log_gamma_upper(a, x)


def _success_probability(shapes, upsilons, ms, gamma_th):
    """Probability that every secrecy capacity is positive and the relay decodes.

    Returns the probability, the per-term contributions (labelled 1..4) and
    the auxiliary rates ``Delta`` and ``Psi``.
    """
    a1, a_d, b1, a2 = (int(shapes[k]) for k in LINK_NAMES)
    ups = {k: max(upsilons[k], UPSILON_FLOOR) for k in LINK_NAMES}
    alpha, mu, beta, lam = (ms[k] / ups[k] for k in LINK_NAMES)
    big_lam = lam + mu
    delta = alpha + big_lam
    psi = delta + beta
    ab = alpha + beta
    g = gamma_th
    ln_alpha, ln_beta, ln_lam = math.log(alpha), math.log(beta), math.log(lam)
    ln_mu, ln_big_lam, ln_delta, ln_psi, ln_ab = (math.log(v) for v in (mu, big_lam, delta, psi, ab))

    log_pref = a1 * ln_alpha + a2 * ln_lam - ln_gamma(a1) - ln_gamma(a2)
    log_b = [
        math.lgamma(a2 + l) + l * ln_mu - log_factorial(l) - (a2 + l) * ln_big_lam for l in range(a_d)
    ]
    log_i1 = _log_upper(a1, alpha * g) - a1 * ln_alpha
    log_i2 = [
        n * ln_beta - log_factorial(n) + _log_upper(a1 + n, ab * g) - (a1 + n) * ln_ab for n in range(b1)
    ]
    p_max = a2 + a_d - 1
    log_i3 = [
        p * ln_big_lam - log_factorial(p) + _log_upper(a1 + p, delta * g) - (a1 + p) * ln_delta
        for p in range(p_max)
    ]
    log_i4 = [
        [
            n * ln_beta + p * ln_big_lam - log_factorial(n) - log_factorial(p)
            + _log_upper(a1 + n + p, psi * g) - (a1 + n + p) * ln_psi
            for n in range(b1)
        ]
        for p in range(p_max)
    ]

    parts = {1: [], 2: [], 3: [], 4: []}
    for l in range(a_d):
        base = log_pref + log_b[l]
        parts[1].append(_exp(base + log_i1))
        parts[2].extend(-_exp(base + t) for t in log_i2)
        for p in range(a2 + l):
            parts[3].append(-_exp(base + log_i3[p]))
            parts[4].extend(_exp(base + t) for t in log_i4[p])
    contributions = {k: math.fsum(v) for k, v in parts.items()}
    success = math.fsum(x for v in parts.values() for x in v)
    return success, contributions, {"Delta": delta, "Psi": psi}


def _exp(x):
    if x > 709.0:
        raise ConsistencyError(f"log-space term {x:.3g} exceeds the representable range")
    return math.exp(x)


def _closed_form(cfg, upsilons, gamma_th, path, labels, aux_names=("Delta", "Psi")):
    _require_integer_m(cfg)
    links = cfg.links()
    shapes = {k: links[k].m * links[k].n_rx for k in LINK_NAMES}
    ms = {k: links[k].m for k in LINK_NAMES}
    success, contrib, aux = _success_probability(shapes, upsilons, ms, gamma_th)
    ip = _clamp(1.0 - success, path.value)
    terms = {labels + str(k): v for k, v in contrib.items()}
    aux = dict(zip(aux_names, aux.values()))
    aux.update({"upsilon_" + k: upsilons[k] for k in LINK_NAMES})
    return IpReport(ip=ip, path=path, terms=terms, aux=aux)


def ip_exact(cfg, upsilons=None):
    """Exact intercept probability.

    ``upsilons`` overrides the per-link effective SNRs (a test hook used by
    the comparison report); by default they come from the link model.
    A zero decoding threshold is served by the threshold-free floor.
    """
    if upsilons is None:
        upsilons = {k: s.upsilon for k, s in effective_snrs(cfg).items()}
    if cfg.gamma_th == 0.0:
        report = _closed_form(cfg, upsilons, 0.0, EvalPath.EXACT, "V")
        report.aux["routed_to_floor"] = 1.0
        return report
    return _closed_form(cfg, upsilons, cfg.gamma_th, EvalPath.EXACT, "I")


def ip_low_threshold_floor(cfg):
    """Limit of the exact expression as the decoding threshold goes to zero."""
    upsilons = {k: s.upsilon for k, s in effective_snrs(cfg).items()}
    return _closed_form(cfg, upsilons, 0.0, EvalPath.LOW_THRESHOLD_FLOOR, "V")


def ip_asymptotic_scenario1(cfg):
    """High-SNR floor for mobile nodes with imperfect CSI.

    The legitimate hops run at their ceiling SNR, so the result does not
    depend on their transmit SNR at all.
    """
    snrs = effective_snrs(cfg)
    for k in ("sr", "rd"):
        if math.isinf(snrs[k].upsilon_ceiling):
            raise PreconditionError(
                f"ceiling SNR of link {k} is unbounded (rho = 1 and zero estimation noise); no floor exists"
            )
    upsilons = {k: s.upsilon for k, s in snrs.items()}
    upsilons["sr"] = snrs["sr"].upsilon_ceiling
    upsilons["rd"] = snrs["rd"].upsilon_ceiling
    return _closed_form(cfg, upsilons, cfg.gamma_th, EvalPath.ASYMPTOTIC_S1, "H", aux_names=("Q", "S"))


def is_ideal(cfg):
    """True for static nodes with perfect channel estimation on every link."""
    snrs = effective_snrs(cfg)
    return all(s.rho == 1.0 for s in snrs.values()) and all(
        link.sigma_eps_sq == 0.0 for link in cfg.links().values()
    )


def ip_asymptotic_scenario2(cfg, delta_db):
    """High-SNR expansion ``G_c * delta^-G_d`` for static nodes with perfect CSI.

    ``delta_db`` is the common transmit SNR of both legitimate hops; the
    wiretap hops keep the SNRs stored in ``cfg``.
    """
    _require_integer_m(cfg)
    if not is_ideal(cfg):
        raise PreconditionError(
            "scenario II needs static nodes (rho = 1) and zero estimation noise on every link"
        )
    links = cfg.links()
    snrs = effective_snrs(cfg)
    m_sr = links["sr"].m
    a_s = links["sr"].shape
    a_d = links["rd"].shape
    b1 = links["se1"].shape
    a2 = links["re2"].shape
    r1 = links["se1"].m / snrs["se1"].upsilon
    r2 = links["re2"].m / snrs["re2"].upsilon
    g = cfg.gamma_th

    log_r = (
        a_d * math.log(links["rd"].m / r2)
        + math.lgamma(a2 + a_d) - math.lgamma(a2) - math.lgamma(a_d + 1)
    )
    if g > 0:
        log_t1 = (
            a_s * math.log(m_sr * g) + log_gamma_lower(a2, r2 * g) + log_gamma_lower(b1, r1 * g)
            - math.lgamma(a_s + 1) - math.lgamma(a2) - math.lgamma(b1)
        )
        t1 = math.exp(log_t1)
    else:
        t1 = 0.0

    def f_term(r, a):
        return math.exp(-a_s * math.log(r) + _log_upper(a + a_s, r * g) - math.lgamma(a))

    def g_term(rx, ax, rz, az):
        log_pre = ax * math.log(rx) - math.lgamma(ax)
        s = rx + rz
        return math.fsum(
            math.exp(
                log_pre + n * math.log(rz) - log_factorial(n)
                + _log_upper(ax + a_s + n, s * g) - (n + ax + a_s) * math.log(s)
            )
            for n in range(az)
        )

    scale = math.exp(a_s * math.log(m_sr) - math.lgamma(a_s + 1))
    f_se1, f_re2 = f_term(r1, b1), f_term(r2, a2)
    g_12, g_21 = g_term(r1, b1, r2, a2), g_term(r2, a2, r1, b1)
    t2 = scale * (f_se1 + f_re2)
    t3 = scale * (g_12 + g_21)
    r = math.exp(log_r)
    if a_s > a_d:
        gc = r
    elif a_s < a_d:
        gc = t1 + t2 - t3
    else:
        gc = r + t1 + t2 - t3
    gd = min(a_s, a_d)
    raw = gc * 10.0 ** (-gd * delta_db / 10.0)
    return IpReport(
        ip=min(1.0, raw),
        path=EvalPath.ASYMPTOTIC_S2,
        terms={"G_c": gc, "G_d": float(gd), "R": r, "T1": t1, "T2": t2, "T3": t3},
        aux={"F_SE1": f_se1, "F_RE2": f_re2, "G_SE1_RE2": g_12, "G_RE2_SE1": g_21, "asymptote": raw},
    )


def crossover_probability(inp):
    """Probability that the legitimate fading sum exceeds the wiretap one."""
    if min(inp.m_l, inp.m_w, inp.omega_l, inp.omega_w, inp.n_l, inp.n_w) <= 0:
        raise DomainError(f"crossover inputs must all be positive, got {inp}")
    a_l = inp.m_l * inp.n_l
    a_w = inp.m_w * inp.n_w
    r_l = inp.m_l / inp.omega_l
    r_w = inp.m_w / inp.omega_w
    s = r_l + r_w
    log_pref = (
        a_l * math.log(r_l) + a_w * math.log(r_w) + math.lgamma(a_l + a_w)
        - math.lgamma(a_l) - math.lgamma(a_w + 1) - (a_l + a_w) * math.log(s)
    )
    return math.exp(log_pref + log_gauss_2f1(1.0, a_l + a_w, a_w + 1.0, r_w / s))


def secrecy_capacities(gamma_sr, gamma_rd, gamma_se1, gamma_re2):
    """First-hop, cross and second-hop secrecy capacities (bits) and their minimum."""
    c_sr = math.log2((1.0 + gamma_sr) / (1.0 + gamma_se1))
    c_srd = math.log2((1.0 + gamma_sr) / (1.0 + gamma_re2))
    c_rd = math.log2((1.0 + gamma_rd) / (1.0 + gamma_re2))
    return c_sr, c_srd, c_rd, min(c_sr, c_srd, c_rd)


def ip_reference_quadrature(cfg, epsabs=1e-11, epsrel=1e-10):
    """Intercept probability by direct adaptive quadrature of the defining integral.

    Works from scipy's regularized incomplete gamma rather than the
    package's own kernels, and accepts non-integer m, so it serves as an
    independent check on :func:`ip_exact`.
    """
    links = cfg.links()
    snrs = effective_snrs(cfg)
    shape = {k: links[k].m * links[k].n_rx for k in LINK_NAMES}
    rate = {k: links[k].m / max(snrs[k].upsilon, UPSILON_FLOOR) for k in LINK_NAMES}

    def log_pdf(k, y):
        a, r = shape[k], rate[k]
        return a * math.log(r) - sps.gammaln(a) + (a - 1.0) * math.log(y) - r * y

    def pdf(k, y):
        if y <= 0.0:
            return 0.0
        return math.exp(log_pdf(k, y))

    def quantiles(k, probs):
        return [float(sps.gammaincinv(shape[k], p)) / rate[k] for p in probs]

    probs = (1e-10, 1e-4, 0.05, 0.5, 0.95, 1 - 1e-4)

    def inner(y):
        if y <= 0.0:
            return 0.0
        pts = sorted(q for q in quantiles("re2", probs) + quantiles("rd", probs) if 0.0 < q < y)
        val, _ = integrate.quad(
            lambda z: pdf("re2", z) * float(sps.gammaincc(shape["rd"], rate["rd"] * z)),
            0.0, y, points=pts or None, limit=400, epsabs=epsabs, epsrel=epsrel,
        )
        return val

    lo = cfg.gamma_th
    hi = quantiles("sr", (1 - 1e-16,))[0]
    if hi <= lo:
        return 1.0
    pts = sorted(q for q in quantiles("sr", probs) if lo < q < hi)
    val, _ = integrate.quad(
        lambda y: pdf("sr", y) * float(sps.gammainc(shape["se1"], rate["se1"] * y)) * inner(y),
        lo, hi, points=pts or None, limit=400, epsabs=epsabs, epsrel=epsrel,
    )
    return 1.0 - val
