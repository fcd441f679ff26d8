import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tbsim.calibration import tune_demux
from tbsim.detection import calibrated_reference_chip
from tbsim.circuit import (
    PAIR_PORT,
    Arms,
    ChipParams,
    CircuitError,
    CircuitNetlist,
    ClassicalField,
    ConfigurationError,
    Coupler,
    PortLookupError,
    build_reference_chip,
    path_amplitudes,
    path_insertion_loss,
    path_transmission,
    propagate,
    pulse_response,
    spectra_csv,
    spectral_sweep,
)


@pytest.fixture(scope="module")
def chip():
    return build_reference_chip()


def test_reference_chip_shape(chip):
    assert len(chip.heaters) == 15
    assert chip.numbered_ports == [str(k) for k in range(1, 13)]


def test_group_index():
    assert ChipParams().group_index == pytest.approx(1.70239, abs=1e-5)


def test_reference_waveguide_loss(chip):
    assert path_insertion_loss(chip, "ref_in", "ref_out", 1550.0) == pytest.approx(4.5, abs=1e-12)


def test_port6_to_port12_loss():
    il = path_insertion_loss(calibrated_reference_chip(), "6", "12", 1550.9, bin=1)
    assert 9.0 <= il <= 11.0


def test_zero_loss_chip_only_splits(chip):
    lossless = chip.with_losses(0.0)
    net, _ = tune_demux(lossless, 1)
    net, _ = tune_demux(net, 2)
    il = path_insertion_loss(net, "6", "12", 1550.9)
    assert il == pytest.approx(3.0, abs=0.1)


def test_pulse_into_port2_gives_double_pulses(chip):
    rows = pulse_response(chip, "2", 1555.7)
    by_port = {}
    for port, b, off, pw in rows:
        by_port.setdefault(port, {})[b] = (off, pw)
    for port in ("3", "4"):
        assert sorted(by_port[port]) == [0, 1]
        assert by_port[port][1][0] - by_port[port][0][0] == 795.0


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.sampled_from(["p", "p_in", "p_out", "n1", "n1_in", "s", "s_out", "i_in"]),
                       st.floats(0.0, 10.0), max_size=4),
       st.sampled_from(["1", "2", "5", "6"]),
       st.floats(1540.0, 1570.0))
def test_lossless_power_conservation(volts, port, lam):
    net = build_reference_chip().with_losses(0.0).with_voltages(volts)
    out = propagate(net, ClassicalField({(port, lam, 0): 1.0 + 0j}, net.bin_ps))
    assert out.total_power == pytest.approx(1.0, abs=1e-12)


def test_lossy_chip_loses_power(chip):
    out = propagate(chip, ClassicalField({("2", 1555.7, 0): 1.0}, chip.bin_ps))
    assert out.total_power < 1.0


def test_output_coupler_equalizes_early_pulses_for_any_input_split(chip):
    for u_in in (2.0, 4.5, 7.0):
        net = chip.with_voltages({"p_in": u_in})
        e3 = path_transmission(net, "2", "3", 1555.7, 0)
        e4 = path_transmission(net, "2", "4", 1555.7, 0)
        assert e3 == pytest.approx(e4, rel=1e-3)


def test_cascaded_interferometers_make_three_bins():
    # pump interferometer (port 2 -> 3) followed off-chip by an analyzer
    net = build_reference_chip()
    first = propagate(net, ClassicalField({("2", 1555.7, 0): 1.0}, net.bin_ps))
    bins = first.bins("3")
    assert bins == [0, 1]
    second = {}
    for b in bins:
        amps = path_amplitudes(net, "s_in.in0", "s_out.out0", 1550.9)
        for d, a in amps.items():
            second.setdefault(b + d, []).append(first.amplitude("3", 1555.7, b) * a)
    assert sorted(second) == [0, 1, 2]
    assert len(second[1]) == 2


def test_lossless_demux_outputs_complementary(chip):
    net = chip.with_losses(0.0)
    grid = np.linspace(1540, 1570, 301)
    spec = spectral_sweep(net, "7", grid, ["5", "6"])
    total = 10 ** (spec["5"] / 10) + 10 ** (spec["6"] / 10)
    np.testing.assert_allclose(total, 1.0, atol=1e-12)


def test_tuned_demux1_rejects_pump(chip):
    net, rep = tune_demux(chip, 1)
    t = {lam: path_transmission(net, "6", PAIR_PORT, lam) for lam in (1550.9, 1555.7, 1560.0)}
    rej = 10 * math.log10(min(t[1550.9], t[1560.0]) / t[1555.7])
    assert rej >= 25.0


def test_demux_reciprocity(chip):
    # forward transmission 6 -> 7 equals reverse 7 -> 6
    net = chip.with_voltages({"n1": 3.3})
    for lam in (1550.9, 1555.7, 1560.0):
        fwd = path_transmission(net, "6", "7", lam)
        rev = spectral_sweep(net, "7", [lam], ["6"])["6"][0]
        assert 10 * math.log10(fwd) == pytest.approx(rev, abs=1e-9)


def test_spectra_csv_header(chip):
    grid = [1550.0, 1551.0]
    text = spectra_csv(grid, spectral_sweep(chip, "7", grid, ["5"]))
    lines = text.splitlines()
    assert lines[0] == "lambda_nm,port,transmission_db"
    assert len(lines) == 3


def test_json_round_trip(chip):
    net = chip.with_voltages({"s": 1.25})
    back = CircuitNetlist.from_json(net.to_json())
    assert back.voltages == net.voltages
    assert path_transmission(back, "6", "12", 1550.9) == pytest.approx(path_transmission(net, "6", "12", 1550.9))


def test_json_reports_format_field(chip):
    d = json.loads(chip.to_json())
    d["format"] = "tbsim-circuit/0"
    with pytest.raises(CircuitError, match="format"):
        CircuitNetlist.from_dict(d)


def test_json_reports_bad_component(chip):
    d = json.loads(chip.to_json())
    d["components"][0]["kind"] = "mystery"
    with pytest.raises(CircuitError) as exc:
        CircuitNetlist.from_dict(d)
    assert "components[0]" in str(exc.value)


def test_dangling_port_detected():
    comps = {"a": Coupler(None), "b": Coupler(None)}
    with pytest.raises(CircuitError) as exc:
        CircuitNetlist(comps, (("a.out0", "b.in0"),), {"1": "a.in0"}, {})
    assert len(exc.value.problems) >= 1


def test_cycle_detected():
    comps = {"a": Coupler(None), "b": Coupler(None)}
    conns = (("a.out0", "b.in0"), ("b.out0", "a.in0"), ("a.out1", "b.in1"), ("b.out1", "a.in1"))
    with pytest.raises(CircuitError, match="cycle"):
        CircuitNetlist(comps, conns, {}, {})


def test_unknown_port_named(chip):
    with pytest.raises(PortLookupError, match="99"):
        path_transmission(chip, "99", "3", 1555.7)


def test_unknown_heater(chip):
    with pytest.raises(PortLookupError, match="zz"):
        chip.with_voltages({"zz": 1.0})


def test_non_integral_delay_rejected():
    comps = {"c": Coupler(None), "arms": Arms(None, long_delay_ps=400.0), "d": Coupler(None)}
    conns = (("c.out0", "arms.in0"), ("c.out1", "arms.in1"), ("arms.out0", "d.in0"), ("arms.out1", "d.in1"))
    ext = {"1": "c.in0", "2": "c.in1", "3": "d.out0", "4": "d.out1"}
    net = CircuitNetlist(comps, conns, ext, {})
    with pytest.raises(ConfigurationError):
        propagate(net, ClassicalField({("1", 1550.0, 0): 1.0}, net.bin_ps))


def test_invalid_chip_params():
    with pytest.raises(CircuitError):
        build_reference_chip(ChipParams(delay_ps=-1))
