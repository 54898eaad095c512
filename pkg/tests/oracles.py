"""Independent numerical references shared by the test modules."""

import math

import numpy as np

from scipy import integrate, special as sps, stats

from secrelay.secrecy import effective_snrs


def _gl_nodes(a, b, panels=24, order=24):
    """Composite Gauss-Legendre nodes/weights on [a, b]; a and b may be arrays."""
    x, w = np.polynomial.legendre.leggauss(order)
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    edges = np.linspace(0.0, 1.0, panels + 1)
    lo, hi = edges[:-1], edges[1:]
    u = ((hi - lo)[:, None] * (x + 1) / 2 + lo[:, None]).ravel()
    wu = ((hi - lo)[:, None] * w / 2).ravel()
    return a + (b - a) * u, (b - a) * wu


def outage_form_ip(cfg):
    """Intercept probability integrated from outage CDFs (no 1 - success cancellation).

    IP = E[P_sr(M) + P_rd(g2) - P_sr(M) P_rd(g2)] with M = max(g1, g2, gamma_th),
    where P_x is the Gamma CDF of hop x and g1, g2 the wiretap SNRs. Both
    integrals use fixed composite Gauss-Legendre rules, vectorized in numpy.
    """
    links = cfg.links()
    snrs = effective_snrs(cfg)
    law = {k: stats.gamma(a=l.m * l.n_rx, scale=snrs[k].upsilon / l.m) for k, l in links.items()}
    sr, rd, e1, e2 = law["sr"], law["rd"], law["se1"], law["re2"]
    g = cfg.gamma_th

    top2 = e2.ppf(1 - 1e-16)
    top1 = e1.ppf(1 - 1e-16)
    parts = [(0.0, min(g, top2)), (min(g, top2), top2)] if g > 0 else [(0.0, top2)]
    total = 0.0
    for a, b in parts:
        if b <= a:
            continue
        y, wy = _gl_nodes(a, b)
        t = np.maximum(y, g)
        x, wx = _gl_nodes(np.minimum(t, top1), top1)
        tail = np.sum(wx * e1.pdf(x) * sr.cdf(x), axis=-1)
        p_sr = e1.cdf(t) * sr.cdf(t) + tail
        p_rd = rd.cdf(y)
        total += float(np.sum(wy * e2.pdf(y) * (p_sr + p_rd - p_sr * p_rd)))
    return total


def crossover_quadrature(m_l, m_w, omega_l, omega_w, n_l, n_w):
    """P(X_l > X_w) for independent Gamma(m N, Omega / m) powers."""
    xl = stats.gamma(a=m_l * n_l, scale=omega_l / m_l)
    xw = stats.gamma(a=m_w * n_w, scale=omega_w / m_w)
    val, _ = integrate.quad(lambda x: xw.pdf(x) * xl.sf(x), 0, math.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    return val


def log_gammainc_upper(a, x):
    return math.log(sps.gammaincc(a, x)) + math.lgamma(a)
