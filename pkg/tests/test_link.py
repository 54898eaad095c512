import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sps

from secrelay.link import (
    AUTO,
    LinkParams,
    MobilityContext,
    SpeedConvention,
    correlation_coefficient,
    effective_avg_snr,
    impairment_power,
    relative_speed,
    resolve_sigma_w,
)


def test_speed_conventions():
    link = LinkParams(speed_a_kmh=20.0, speed_b_kmh=50.0)
    opp = MobilityContext(speed_convention=SpeedConvention.OPPOSITE_DIRECTIONS)
    same = MobilityContext(speed_convention=SpeedConvention.SAME_DIRECTION)
    expl = MobilityContext(speed_convention=SpeedConvention.EXPLICIT_RELATIVE)
    assert relative_speed(link, opp) == pytest.approx(70 / 3.6)
    assert relative_speed(link, same) == pytest.approx(30 / 3.6)
    assert relative_speed(link, expl) == pytest.approx(20 / 3.6)


def test_static_nodes_have_unit_correlation():
    link = LinkParams(speed_a_kmh=0.0, speed_b_kmh=0.0)
    assert correlation_coefficient(link, MobilityContext()) == 1.0


def test_zero_delay_has_unit_correlation():
    assert correlation_coefficient(LinkParams(), MobilityContext(delay_s=0.0)) == 1.0


def test_default_correlation_matches_scipy():
    ctx = MobilityContext()
    x = 2 * math.pi * (50 / 3.6) * 2.4e9 * 1e-3 / 2.99792458e8
    assert correlation_coefficient(LinkParams(), ctx) == pytest.approx(float(sps.j0(x)), abs=1e-14)
    assert correlation_coefficient(LinkParams(), ctx) == pytest.approx(0.88166, abs=5e-6)


def test_auto_noise_variance():
    assert resolve_sigma_w(LinkParams(omega=2.0, sigma_eps_sq=0.1)) == pytest.approx(2.1)
    assert resolve_sigma_w(LinkParams(sigma_w_sq=0.7)) == 0.7
    assert LinkParams().sigma_w_sq == AUTO


def _upsilon_oracle(rho, omega, eps, w, delta_db):
    # same quantity rearranged: rho^2 * omega * delta / (delta * impairment + omega)
    d = 10 ** (delta_db / 10)
    imp = rho * rho * eps + (1 - rho * rho) * w
    return rho * rho * omega * d / (d * imp + omega)


@given(
    rho=st.floats(-0.4, 1.0),
    omega=st.floats(0.1, 5.0),
    eps=st.floats(0.0, 0.5),
    delta_db=st.floats(-10.0, 60.0),
)
@settings(max_examples=200, deadline=None)
def test_effective_snr_rearranged_oracle(rho, omega, eps, delta_db):
    link = LinkParams(omega=omega, sigma_eps_sq=eps, delta_db=delta_db)
    got = effective_avg_snr(link, MobilityContext(), rho=rho)
    want = _upsilon_oracle(rho, omega, eps, omega + eps, delta_db)
    assert got.upsilon == pytest.approx(want, rel=1e-12, abs=1e-300)
    assert got.upsilon <= got.upsilon_ceiling * (1 + 1e-12)


def test_ideal_link_reduces_to_transmit_snr():
    link = LinkParams(sigma_eps_sq=0.0, delta_db=20.0)
    snr = effective_avg_snr(link, MobilityContext(), rho=1.0)
    assert snr.upsilon == pytest.approx(100.0)
    assert math.isinf(snr.upsilon_ceiling)


def test_ceiling_is_limit_of_effective_snr():
    link = LinkParams(delta_db=200.0)
    snr = effective_avg_snr(link, MobilityContext())
    assert snr.upsilon == pytest.approx(snr.upsilon_ceiling, rel=1e-12)
    assert impairment_power(snr.rho, link) > 0


def test_table1_effective_snr():
    snr = effective_avg_snr(LinkParams(n_rx=4), MobilityContext())
    assert snr.upsilon == pytest.approx(2.8402, abs=5e-4)


def test_context_validation():
    with pytest.raises(ValueError):
        MobilityContext(carrier_frequency_hz=0.0)
    with pytest.raises(ValueError):
        MobilityContext(delay_s=-1.0)
