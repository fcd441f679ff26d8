import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tbsim.components import (
    CapabilityError,
    DelayLine,
    DomainError,
    Heater,
    MziArmPair,
    TransferMatrix2,
    TunableCoupler,
    dc_transfer,
    heater_phase,
    mzi_response,
    tunable_coupler_matrix,
    tunable_coupler_transfer,
    voltage_for_phase,
)

ratios = st.floats(0.0, 1.0)
phases = st.floats(-10.0, 10.0)


def test_balanced_splitter():
    np.testing.assert_allclose(dc_transfer(0.5).powers((1, 0)), [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("kappa, bar, cross", [(0.0, 1.0, 0.0), (1.0, 0.0, 1.0), (0.3, 0.7, 0.3)])
def test_dc_limits(kappa, bar, cross):
    m = np.abs(dc_transfer(kappa).m) ** 2
    np.testing.assert_allclose(m, [[bar, cross], [cross, bar]], atol=1e-15)


@pytest.mark.parametrize("kappa", [-0.1, 1.2, float("nan")])
def test_dc_rejects_bad_ratio(kappa):
    with pytest.raises(DomainError):
        dc_transfer(kappa)


def test_transfer_matrix_validation():
    with pytest.raises(DomainError):
        TransferMatrix2(np.eye(3))
    with pytest.raises(DomainError):
        TransferMatrix2(2 * np.eye(2))
    with pytest.raises(DomainError):
        TransferMatrix2(0.5 * np.eye(2), lossless=True)


@given(ratios, ratios, phases)
def test_tunable_coupler_unitary(k1, k2, phi):
    m = tunable_coupler_transfer(k1, k2, phi).m
    np.testing.assert_allclose(m.conj().T @ m, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(tunable_coupler_matrix(k1, k2, phi), m, atol=1e-14)


@given(st.floats(0.0, 2 * math.pi))
def test_balanced_tunable_coupler_cross_power(phi):
    p = tunable_coupler_transfer(0.5, 0.5, phi).powers((1, 0))
    assert p[1] == pytest.approx(math.cos(phi / 2) ** 2, abs=1e-12)


@pytest.mark.parametrize("phi, bar", [(0.0, 0.0), (math.pi, 1.0), (math.pi / 2, 0.5)])
def test_tunable_coupler_points(phi, bar):
    assert tunable_coupler_transfer(0.5, 0.5, phi).powers((1, 0))[0] == pytest.approx(bar, abs=1e-15)


def test_heater_formula():
    h = Heater("h", alpha=0.1, dac_bits=0)
    assert heater_phase(h, 0.0) == 0.0
    assert heater_phase(h, 4.0) == pytest.approx(1.6, abs=1e-15)
    assert voltage_for_phase(h, 1.6) == pytest.approx(4.0, abs=1e-12)
    assert voltage_for_phase(h, 0.0) == 0.0


def test_heater_zero_voltage_is_phi0():
    h = Heater("h", phi0=0.3)
    assert h.phase == 0.3


def test_default_heater_span():
    h = Heater("h")
    assert h.alpha * h.u_max**2 == pytest.approx(2.5 * math.pi)


def test_quantization_within_one_code():
    h = Heater("h")
    code = 1234
    u = code * h.dac_step
    eps = 0.3 * h.dac_step
    assert heater_phase(h, u) == heater_phase(h, u + eps) == heater_phase(h, u - eps)


@given(st.floats(0.0, 10.0))
def test_phase_monotone(u):
    h = Heater("h")
    u2 = min(u + 0.01, h.u_max)
    assert heater_phase(h, u2) >= heater_phase(h, u)


def test_round_trip_within_one_step():
    h = Heater("h")
    rng = np.random.default_rng(7)
    for u in rng.uniform(0, h.u_max, 100):
        phi = heater_phase(h, u)
        back = heater_phase(h, voltage_for_phase(h, phi))
        # targets above 2*pi come back wrapped
        diff = (back - phi + math.pi) % (2 * math.pi) - math.pi
        assert abs(diff) <= 2 * h.alpha * h.u_max * h.dac_step


def test_voltage_out_of_range():
    with pytest.raises(DomainError):
        heater_phase(Heater("h"), 10.5)
    with pytest.raises(DomainError):
        Heater("h", u=-1.0)


def test_unreachable_phase():
    h = Heater("h", alpha=0.01)  # span 1 rad
    with pytest.raises(CapabilityError):
        voltage_for_phase(h, 2.0)


def test_wrapped_phase_target():
    h = Heater("h")
    u = voltage_for_phase(h, -math.pi / 2)
    assert (heater_phase(h, u) - 1.5 * math.pi) == pytest.approx(0, abs=1e-3)


def test_delay_line_group_index():
    ng = DelayLine.group_index_for(795.0, 14.0)
    assert ng == pytest.approx(1.70, abs=0.005)
    assert DelayLine(14.0, ng).delay_ps == pytest.approx(795.0)


def _mzi(dL, loss=0.0, u=0.0):
    arms = MziArmPair(dL, Heater("a", u=u), loss)
    return arms, (TunableCoupler(Heater("c1", u=math.sqrt(2) * 10 / math.sqrt(5))),
                  TunableCoupler(Heater("c2", u=math.sqrt(2) * 10 / math.sqrt(5))))


def test_mzi_complementary_when_lossless():
    arms, cps = _mzi(265.0)
    for lam in np.linspace(1540, 1570, 200):
        p = mzi_response(arms, cps, lam).powers((1, 0))
        assert p.sum() == pytest.approx(1.0, abs=1e-12)


def test_balanced_mzi_is_flat():
    arms, cps = _mzi(0.0)
    p = [mzi_response(arms, cps, lam).powers((1, 0))[0] for lam in np.linspace(1500, 1600, 11)]
    assert np.ptp(p) < 1e-14


def test_lossy_arm_is_subunitary():
    arms, cps = _mzi(100.0, loss=3.0)
    m = mzi_response(arms, cps, 1550.0).m
    assert np.linalg.norm(m, 2) <= 1 + 1e-12
    assert np.abs(m @ [1, 0]).sum() < 2


@pytest.mark.parametrize("kw", [dict(delta_L_opt=-1), dict(arm_loss_db=-1), dict(heater_arm=2)])
def test_arm_pair_validation(kw):
    with pytest.raises(DomainError):
        MziArmPair(**kw)


@settings(max_examples=50)
@given(ratios, ratios, phases, phases)
def test_cascade_stays_passive(k1, k2, a, b):
    m = tunable_coupler_transfer(k1, k2, a) @ TransferMatrix2(np.diag([np.exp(1j * b), 0.5]))
    assert np.linalg.norm(m.m, 2) <= 1 + 1e-12
