"""Stochastic oracles for the closed-form engine.

Two independent checks live here:

* an SNR-level estimator that draws the four Gamma-distributed hop SNRs
  and counts intercept events directly from the secrecy-capacity
  definition (relay decoding failure counts as an intercept);
* a fading-level estimator that draws the estimated channel, estimation
  noise, mobility noise and receiver noise, and measures the per-branch
  SNR, which validates the effective-SNR formula that the SNR-level
  estimator takes as an input.

Work is split into partitions, each with its own child of a
``numpy.random.SeedSequence``; results are merged by summing integer
counts (or float sums in partition order), so the outcome depends only on
``(seed, n_partitions)`` and never on thread scheduling.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .link import effective_avg_snr, correlation_coefficient, resolve_sigma_w
from .secrecy import LINK_NAMES, EvalPath, IpReport, effective_snrs
from .snr import SnrDistribution, sample

CHUNK = 1_000_000


@dataclass(frozen=True)
class McSettings:
    n_samples: int = 9_000_000
    seed: int = 0
    n_partitions: int = 8

    def __post_init__(self):
        if self.n_samples < 10_000:
            raise ValueError(f"Monte-Carlo needs at least 1e4 samples, got {self.n_samples}")
        if self.n_partitions < 1:
            raise ValueError("n_partitions must be >= 1")

    def partition_sizes(self):
        base, extra = divmod(self.n_samples, self.n_partitions)
        return [base + (i < extra) for i in range(self.n_partitions)]

    def partition_rngs(self):
        root = np.random.SeedSequence(self.seed)
        return [np.random.default_rng(child) for child in root.spawn(self.n_partitions)]


@dataclass(frozen=True)
class FadingSample:
    h_hat: np.ndarray
    eps: np.ndarray
    w: np.ndarray
    h: np.ndarray
    rho: float


@dataclass(frozen=True)
class FadingEstimate:
    mean: float
    stderr: float
    n: int


def max_workers():
    env = os.environ.get("SECRELAY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_partitions(fn, s):
    sizes = s.partition_sizes()
    rngs = s.partition_rngs()
    workers = min(max_workers(), s.n_partitions)
    if workers == 1:
        return [fn(rng, n) for rng, n in zip(rngs, sizes)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, rngs, sizes))


def intercept_mask(g_sr, g_rd, g_se1, g_re2, gamma_th):
    """Boolean mask of intercept events (secrecy capacity <= 0 or relay outage)."""
    secure = (g_sr > g_se1) & (g_sr > g_re2) & (g_rd > g_re2) & (g_sr > gamma_th)
    return ~secure


def _draw(link, upsilon, rng, n):
    if upsilon <= 0.0:
        return np.zeros(n)
    return sample(SnrDistribution.for_link(link.m, link.n_rx, upsilon), rng, n)


def mc_intercept_probability(cfg, s, upsilons=None):
    """Monte-Carlo intercept probability with its binomial standard error."""
    if upsilons is None:
        upsilons = {k: v.upsilon for k, v in effective_snrs(cfg).items()}
    links = cfg.links()

    def count(rng, n):
        hits = 0
        done = 0
        while done < n:
            k = min(CHUNK, n - done)
            g = {name: _draw(links[name], upsilons[name], rng, k) for name in LINK_NAMES}
            hits += int(np.count_nonzero(intercept_mask(g["sr"], g["rd"], g["se1"], g["re2"], cfg.gamma_th)))
            done += k
        return hits

    hits = sum(_run_partitions(count, s))
    p = hits / s.n_samples
    return IpReport(
        ip=p,
        path=EvalPath.MONTE_CARLO,
        aux={"hits": float(hits), "n_samples": float(s.n_samples)},
        mc_stderr=math.sqrt(p * (1.0 - p) / s.n_samples),
    )


def _complex_gaussian(rng, variance, shape):
    scale = math.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def draw_fading(link, rho, rng, n_vectors):
    """Draw ``n_vectors`` channel vectors of length ``link.n_rx`` under the AR(1) model.

    The estimated channel has a Nakagami-m envelope (Gamma(m, omega/m)
    power) with uniform phase; the phase law is not pinned by the model
    and does not affect any SNR statistic.
    """
    shape = (n_vectors, link.n_rx)
    power = rng.gamma(link.m, link.omega / link.m, size=shape)
    phase = rng.uniform(0.0, 2.0 * math.pi, size=shape)
    h_hat = np.sqrt(power) * np.exp(1j * phase)
    eps = _complex_gaussian(rng, link.sigma_eps_sq, shape)
    w = _complex_gaussian(rng, resolve_sigma_w(link), shape)
    h = rho * (h_hat + eps) + math.sqrt(max(0.0, 1.0 - rho * rho)) * w
    return FadingSample(h_hat=h_hat, eps=eps, w=w, h=h, rho=rho)


def fading_level_mean_snr(link, ctx, s, rho=None):
    """Mean per-branch SNR measured on simulated fading and noise realizations.

    The receiver noise power is normalized to one, so the transmit power is
    ``delta / omega``. Signal power is ``P rho^2 |h_hat|^2``; the
    interference-plus-noise power is measured from the realized
    ``sqrt(P) (rho eps + sqrt(1 - rho^2) w) + n``. The estimate is the ratio
    of the two sample means, with a delta-method standard error.
    """
    if rho is None:
        rho = correlation_coefficient(link, ctx)
    p_tx = link.delta_linear / link.omega
    root_p = math.sqrt(p_tx)
    rho_c = math.sqrt(max(0.0, 1.0 - rho * rho))

    def moments(rng, n):
        acc = np.zeros(6)
        done = 0
        while done < n:
            k = min(CHUNK, n - done)
            vectors = -(-k // link.n_rx)
            f = draw_fading(link, rho, rng, vectors)
            noise = _complex_gaussian(rng, 1.0, f.h_hat.shape)
            sig = (p_tx * rho * rho * np.abs(f.h_hat) ** 2).ravel()[:k]
            imp = (np.abs(root_p * (rho * f.eps + rho_c * f.w) + noise) ** 2).ravel()[:k]
            acc += [k, sig.sum(), imp.sum(), (sig * sig).sum(), (imp * imp).sum(), (sig * imp).sum()]
            done += k
        return acc

    n, s_sum, i_sum, ss, ii, si = np.sum(_run_partitions(moments, s), axis=0)
    s_mean, i_mean = s_sum / n, i_sum / n
    var_s = ss / n - s_mean ** 2
    var_i = ii / n - i_mean ** 2
    cov = si / n - s_mean * i_mean
    ratio = s_mean / i_mean
    var_ratio = (var_s - 2.0 * ratio * cov + ratio * ratio * var_i) / (i_mean * i_mean * n)
    return FadingEstimate(mean=float(ratio), stderr=float(math.sqrt(max(var_ratio, 0.0))), n=int(n))


def closed_form_branch_snr(link, ctx, rho=None):
    """Convenience wrapper returning the analytic per-branch SNR the oracle targets."""
    return effective_avg_snr(link, ctx, rho=rho).upsilon
