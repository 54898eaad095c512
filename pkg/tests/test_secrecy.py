import math
import random
from dataclasses import replace

import numpy as np
import pytest

from oracles import crossover_quadrature, outage_form_ip
from conftest import random_system
from secrelay.errors import ConsistencyError, DomainError, PreconditionError
from secrelay.link import LinkParams
from secrelay.secrecy import (
    CrossoverInputs,
    EvalPath,
    SystemConfig,
    _clamp,
    crossover_probability,
    effective_snrs,
    ip_asymptotic_scenario1,
    ip_asymptotic_scenario2,
    ip_exact,
    ip_low_threshold_floor,
    ip_reference_quadrature,
    is_ideal,
    secrecy_capacities,
)


def with_deltas(cfg, **deltas):
    return cfg.with_links(**{k: replace(getattr(cfg, "link_" + k), delta_db=v) for k, v in deltas.items()})


def ideal_static(delta_db=30.0, wiretap_db=30.0):
    def link(n, d):
        return LinkParams(n_rx=n, sigma_eps_sq=0.0, delta_db=d, speed_a_kmh=0.0, speed_b_kmh=0.0)

    return SystemConfig(
        link_sr=link(4, delta_db), link_rd=link(4, delta_db),
        link_se1=link(2, wiretap_db), link_re2=link(2, wiretap_db),
    )


def test_exact_is_probability_and_reports_terms(table1):
    r = ip_exact(table1)
    assert r.path is EvalPath.EXACT
    assert 0.0 < r.ip < 1.0
    assert r.ip == pytest.approx(0.10643, abs=5e-5)


def test_exact_matches_quadrature_on_random_configs(pyrng):
    for _ in range(8):
        cfg = random_system(pyrng)
        assert ip_exact(cfg).ip == pytest.approx(ip_reference_quadrature(cfg), abs=1e-8)


def test_exact_matches_outage_form(table1):
    cfg = with_deltas(table1, sr=40.0, rd=40.0, se1=0.0, re2=20.0)
    assert ip_exact(cfg).ip == pytest.approx(outage_form_ip(cfg), abs=1e-9)


def test_quadrature_accepts_non_integer_m(table1):
    cfg = table1.with_links(sr=replace(table1.link_sr, m=1.5))
    lo = ip_reference_quadrature(table1.with_links(sr=replace(table1.link_sr, m=1)))
    hi = ip_reference_quadrature(table1.with_links(sr=replace(table1.link_sr, m=2)))
    mid = ip_reference_quadrature(cfg)
    assert min(lo, hi) < mid < max(lo, hi)


def test_closed_form_rejects_non_integer_m(table1):
    cfg = table1.with_links(rd=replace(table1.link_rd, m=2.5))
    with pytest.raises(PreconditionError, match="integer"):
        ip_exact(cfg)


def test_monotone_in_legitimate_snr(table1):
    ips = [ip_exact(with_deltas(table1, sr=d, rd=d)).ip for d in range(0, 41, 5)]
    assert all(a >= b for a, b in zip(ips, ips[1:]))


def test_monotone_in_wiretap_snr(table1):
    ips = [ip_exact(with_deltas(table1, se1=d)).ip for d in range(0, 31, 5)]
    assert all(a <= b for a, b in zip(ips, ips[1:]))


def test_zero_threshold_routes_to_floor(table1):
    r = ip_exact(replace(table1, gamma_th=0.0))
    assert r.aux["routed_to_floor"] == 1.0
    assert r.ip == pytest.approx(ip_low_threshold_floor(table1).ip, abs=1e-15)


def test_floor_is_threshold_independent(table1):
    a = ip_low_threshold_floor(replace(table1, gamma_th=0.5)).ip
    b = ip_low_threshold_floor(replace(table1, gamma_th=50.0)).ip
    assert a == b


def test_threshold_limits(table1):
    floor = ip_low_threshold_floor(table1).ip
    assert ip_exact(replace(table1, gamma_th=1e-9)).ip == pytest.approx(floor, abs=1e-8)
    assert ip_exact(replace(table1, gamma_th=1e8)).ip == pytest.approx(1.0, abs=1e-9)


def test_scenario1_floor_is_delta_independent(table1):
    vals = {ip_asymptotic_scenario1(with_deltas(table1, sr=d, rd=d)).ip for d in (0.0, 17.0, 30.0, 95.0)}
    assert len(vals) == 1


def test_scenario1_is_limit_of_exact(table1):
    floor = ip_asymptotic_scenario1(table1).ip
    assert ip_exact(with_deltas(table1, sr=80.0, rd=80.0)).ip == pytest.approx(floor, rel=1e-5)


def test_scenario1_needs_finite_ceiling():
    with pytest.raises(PreconditionError):
        ip_asymptotic_scenario1(ideal_static())


def test_is_ideal(table1):
    assert is_ideal(ideal_static())
    assert not is_ideal(table1)


def test_scenario2_requires_ideal_config(table1):
    with pytest.raises(PreconditionError):
        ip_asymptotic_scenario2(table1, 30.0)


def test_scenario2_diversity_order():
    r = ip_asymptotic_scenario2(ideal_static(), 40.0)
    assert r.terms["G_d"] == 8.0
    cfg = ideal_static().with_links(rd=replace(ideal_static().link_rd, n_rx=2))
    assert ip_asymptotic_scenario2(cfg, 40.0).terms["G_d"] == 4.0


@pytest.mark.parametrize("n_sr,n_rd", [(4, 4), (3, 4), (4, 3)])
def test_scenario2_converges_to_outage_oracle(n_sr, n_rd):
    # ratio asymptote / exact must shrink towards 1 as delta grows
    base = ideal_static()
    base = base.with_links(sr=replace(base.link_sr, n_rx=n_sr), rd=replace(base.link_rd, n_rx=n_rd))
    ratios = []
    for d in (50.0, 60.0, 70.0):
        cfg = with_deltas(base, sr=d, rd=d)
        ratios.append(ip_asymptotic_scenario2(cfg, d).aux["asymptote"] / outage_form_ip(cfg))
    assert abs(ratios[-1] - 1) < 0.02
    assert abs(ratios[0] - 1) > abs(ratios[1] - 1) > abs(ratios[2] - 1)


def test_scenario2_clamps_and_keeps_raw():
    r = ip_asymptotic_scenario2(ideal_static(), 10.0)
    assert r.ip == 1.0
    assert r.aux["asymptote"] > 1.0


def test_clamp_assert_then_clamp():
    assert _clamp(-1e-12, "x") == 0.0
    assert _clamp(1 + 1e-12, "x") == 1.0
    with pytest.raises(ConsistencyError):
        _clamp(1.01, "x")
    with pytest.raises(ConsistencyError):
        _clamp(float("nan"), "x")


def test_crossover_symmetric_is_half():
    assert crossover_probability(CrossoverInputs(2, 2, 1.5, 1.5, 3, 3)) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("ol", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("ow", [0.5, 1.0, 3.0])
def test_crossover_against_quadrature(ol, ow):
    args = (2, 1, ol, ow, 3, 2)
    assert crossover_probability(CrossoverInputs(*args)) == pytest.approx(crossover_quadrature(*args), abs=1e-10)


def test_crossover_domain():
    with pytest.raises(DomainError):
        crossover_probability(CrossoverInputs(2, 2, 0.0, 1.0, 1, 1))


def test_secrecy_capacities():
    c_sr, c_srd, c_rd, cs = secrecy_capacities(7.0, 3.0, 1.0, 3.0)
    assert (c_sr, c_srd, c_rd) == pytest.approx((2.0, 1.0, 0.0))
    assert cs == 0.0


def test_effective_snrs_cover_all_links(table1):
    assert set(effective_snrs(table1)) == {"sr", "rd", "se1", "re2"}
