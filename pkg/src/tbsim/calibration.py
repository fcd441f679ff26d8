"""Heater calibration on the noiseless classical chip model.

Each procedure turns one heater knob at a time, like the bench procedure:
a coarse voltage grid picks the basin, golden-section search narrows it to
one DAC step, and the neighbouring DAC codes are checked last.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .circuit import (
    DEMUX,
    PAIR_PORT,
    UMZI_STAGES,
    ChipParams,
    CircuitNetlist,
    path_amplitudes,
    path_transmission,
)
from .components import tunable_coupler_matrix, voltage_for_phase

CALIBRATION_FORMAT = "tbsim-calibration/1"
GOLDEN = (math.sqrt(5) - 1) / 2
BALANCE_TOL = 1e-3
PUMP_REJECTION_TARGET_DB = 25.0
EXCESS_LOSS_LIMIT_DB = 0.5
IDLER_SUPPRESSION_TARGET_DB = 20.0


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScanResult:
    u: float
    f: float
    n_evals: int
    converged: bool


def scan_1d(objective: Callable[[float], float], bounds: tuple[float, float], tol: float,
            grid: int = 0) -> ScanResult:
    """Bracketed golden-section minimization, optionally seeded by a coarse grid."""
    lo, hi = map(float, bounds)
    if hi < lo:
        raise ValueError("bounds must satisfy lo <= hi")
    n = 0

    def f(u):
        nonlocal n
        n += 1
        v = float(objective(u))
        if not math.isfinite(v):
            raise CalibrationError(f"objective is not finite at u={u!r}")
        return v

    if hi - lo <= tol:
        mid = 0.5 * (lo + hi)
        return ScanResult(mid, f(mid), n, True)
    if grid > 2:
        xs = np.linspace(lo, hi, grid)
        k = int(np.argmin([f(x) for x in xs]))
        lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, grid - 1)]
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    return ScanResult(mid, f(mid), n, True)


def _tune_heater(net: CircuitNetlist, hid: str, cost: Callable[[CircuitNetlist], float],
                 grid: int = 64) -> tuple[CircuitNetlist, float, int]:
    h = net.heaters[hid]
    tol = h.dac_step or 1e-6
    res = scan_1d(lambda u: cost(net.with_voltages({hid: u})), (0.0, h.u_max), tol, grid)
    # golden section stops within a DAC step; settle on the best nearby code
    best_u, best_f = None, math.inf
    for k in range(-2, 3):
        u = min(max(h.quantize(res.u) + k * h.dac_step, 0.0), h.u_max)
        fu = cost(net.with_voltages({hid: u}))
        if fu < best_f:
            best_u, best_f = u, fu
    return net.with_voltages({hid: best_u}), best_f, res.n_evals + 5


# --------------------------------------------------------------------------
# interferometer couplers


@dataclass(frozen=True)
class BalanceResult:
    heater: str
    u: float
    objective: float
    converged: bool
    n_evals: int
    net: CircuitNetlist = field(repr=False, compare=False)


def _umzi_ends(net: CircuitNetlist, umzi: str):
    cin, arms, cout = UMZI_STAGES[umzi]
    shift = round(net.components[arms].long_delay_ps / net.bin_ps)
    return f"{cin}.in0", (f"{cout}.out0", f"{cout}.out1"), shift


def _imbalance(x: float, y: float) -> float:
    s = x + y
    return abs(x - y) / s if s > 0 else 1.0


def output_imbalance(net: CircuitNetlist, umzi: str, lam: float, bin: int = 0) -> float:
    src, (o0, o1), shift = _umzi_ends(net, umzi)
    b = 0 if bin == 0 else shift
    return _imbalance(path_transmission(net, src, o0, lam, b), path_transmission(net, src, o1, lam, b))


def bin_imbalance(net: CircuitNetlist, umzi: str, lam: float) -> float:
    src, (o0, _), shift = _umzi_ends(net, umzi)
    amps = path_amplitudes(net, src, o0, lam)
    return _imbalance(abs(amps.get(0, 0j)) ** 2, abs(amps.get(shift, 0j)) ** 2)


def balance_output_coupler(net: CircuitNetlist, umzi: str = "p", lam: float = 1555.7) -> BalanceResult:
    """Equalize the early pulses at the two outputs with the output-coupler heater."""
    hid = f"{umzi}_out"
    tuned, f, n = _tune_heater(net, hid, lambda nn: output_imbalance(nn, umzi, lam, 0))
    return BalanceResult(hid, tuned.heaters[hid].u, f, f < BALANCE_TOL, n, tuned)


def balance_input_coupler(net: CircuitNetlist, umzi: str = "p", lam: float = 1555.7) -> BalanceResult:
    """Equalize early and late pulses at the monitored output (compensates long-arm loss)."""
    hid = f"{umzi}_in"
    tuned, f, n = _tune_heater(net, hid, lambda nn: bin_imbalance(nn, umzi, lam))
    return BalanceResult(hid, tuned.heaters[hid].u, f, f < BALANCE_TOL, n, tuned)


# --------------------------------------------------------------------------
# demultiplexers


def _db(t: float) -> float:
    return 10 * math.log10(max(t, 1e-30))


def demux1_levels(net: CircuitNetlist, p: ChipParams) -> dict[str, float]:
    src = "n1_in.in1"
    return {name: _db(path_transmission(net, src, PAIR_PORT, lam))
            for name, lam in (("pump", p.lambda_pump), ("signal", p.lambda_signal), ("idler", p.lambda_idler))}


def pump_rejection_db(net: CircuitNetlist, p: ChipParams | None = None) -> float:
    """Gap between pump and the worse of signal/idler at the pair port of demux 1."""
    lv = demux1_levels(net, p or ChipParams())
    return min(lv["signal"], lv["idler"]) - lv["pump"]


def demux2_levels(net: CircuitNetlist, p: ChipParams) -> dict[str, float]:
    src = "n2_in.in0"
    out = {}
    for port, tag in (("n2_out.out0", "s_port"), ("n2_out.out1", "i_port")):
        for name, lam in (("signal", p.lambda_signal), ("idler", p.lambda_idler)):
            out[f"{tag}_{name}"] = path_transmission(net, src, port, lam)
    return out


def idler_suppression_db(net: CircuitNetlist, p: ChipParams, port: str = "12") -> float:
    sig = path_transmission(net, "6", port, p.lambda_signal)
    idl = path_transmission(net, "6", port, p.lambda_idler)
    if port == "11":
        sig, idl = idl, sig
    return _db(sig) - _db(idl)


@dataclass
class CalibrationReport:
    settings: dict[str, float] = field(default_factory=dict)
    objectives: dict[str, float] = field(default_factory=dict)
    iterations: dict[str, int] = field(default_factory=dict)
    converged: dict[str, bool] = field(default_factory=dict)

    @property
    def all_converged(self) -> bool:
        return all(self.converged.values())

    def merge(self, other: "CalibrationReport") -> "CalibrationReport":
        for name in ("settings", "objectives", "iterations", "converged"):
            getattr(self, name).update(getattr(other, name))
        return self

    def to_dict(self) -> dict:
        return {
            "format": CALIBRATION_FORMAT,
            "heater_voltages": {k: float(v) for k, v in sorted(self.settings.items())},
            "objectives": {k: float(v) for k, v in sorted(self.objectives.items())},
            "iterations": {k: int(v) for k, v in sorted(self.iterations.items())},
            "converged": {k: bool(v) for k, v in sorted(self.converged.items())},
            "all_converged": bool(self.all_converged),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def tune_demux(net: CircuitNetlist, demux_id: int, p: ChipParams | None = None,
               rounds: int = 3) -> tuple[CircuitNetlist, CalibrationReport]:
    """Coordinate descent over the three heaters of one demultiplexer."""
    p = p or ChipParams()
    cin, arms, cout = DEMUX[demux_id]
    heaters = [net.components[arms].heater, net.components[cin].heater, net.components[cout].heater]

    if demux_id == 1:
        def cost(nn):
            lv = demux1_levels(nn, p)
            keep = min(lv["signal"], lv["idler"])
            return max(lv["pump"], -200.0) + 100.0 * max(0.0, -EXCESS_LOSS_LIMIT_DB - keep)
    else:
        def cost(nn):
            lv = demux2_levels(nn, p)
            return lv["s_port_idler"] + lv["i_port_signal"]

    rep = CalibrationReport()
    n_total = 0
    for _ in range(rounds):
        for hid in heaters:
            net, _, n = _tune_heater(net, hid, cost)
            n_total += n
    tag = f"demux{demux_id}"
    rep.settings.update({hid: net.heaters[hid].u for hid in heaters})
    rep.iterations[tag] = n_total
    if demux_id == 1:
        lv = demux1_levels(net, p)
        rej = min(lv["signal"], lv["idler"]) - lv["pump"]
        excess = -min(lv["signal"], lv["idler"])
        rep.objectives.update({f"{tag}_pump_rejection_db": rej, f"{tag}_excess_loss_db": excess})
        rep.converged[tag] = rej >= PUMP_REJECTION_TARGET_DB and excess <= EXCESS_LOSS_LIMIT_DB
    else:
        lv = demux2_levels(net, p)
        sup_s = _db(lv["s_port_signal"]) - _db(lv["s_port_idler"])
        sup_i = _db(lv["i_port_idler"]) - _db(lv["i_port_signal"])
        rep.objectives.update({f"{tag}_idler_suppression_db": sup_s, f"{tag}_signal_suppression_db": sup_i,
                               f"{tag}_signal_excess_loss_db": -_db(lv["s_port_signal"])})
        rep.converged[tag] = min(sup_s, sup_i) >= IDLER_SUPPRESSION_TARGET_DB
    return net, rep


def _balance_umzi(net, umzi, lam, rep):
    out = balance_output_coupler(net, umzi, lam)
    inp = balance_input_coupler(out.net, umzi, lam)
    for r in (out, inp):
        rep.settings[r.heater] = r.u
        rep.objectives[f"{r.heater}_imbalance"] = r.objective
        rep.iterations[r.heater] = r.n_evals
        rep.converged[r.heater] = r.converged
    return inp.net


def calibrate_chip(net: CircuitNetlist, p: ChipParams | None = None) -> tuple[CircuitNetlist, CalibrationReport]:
    """Full classical set-up: pump interferometer, demux 1, analyzers, demux 2."""
    p = p or ChipParams()
    rep = CalibrationReport()
    net = _balance_umzi(net, "p", p.lambda_pump, rep)
    net, r1 = tune_demux(net, 1, p)
    rep.merge(r1)
    net = _balance_umzi(net, "s", p.lambda_signal, rep)
    net = _balance_umzi(net, "i", p.lambda_idler, rep)
    net, r2 = tune_demux(net, 2, p)
    rep.merge(r2)
    rep.objectives["pump_rejection_db"] = pump_rejection_db(net, p)
    return net, rep


# --------------------------------------------------------------------------
# closed-form settings (independent of the search above)


def _solve_coupler_phase(k1: float, k2: float, bar_target: float) -> float:
    """Phase in [0, pi] giving bar power ``bar_target`` on in0 -> out0."""
    g = lambda phi: abs(tunable_coupler_matrix(k1, k2, phi)[0, 0]) ** 2 - bar_target  # noqa: E731
    return brentq(g, 0.0, math.pi, xtol=1e-15)


def analytic_chip(net: CircuitNetlist) -> CircuitNetlist:
    """Set every interferometer coupler from the closed-form coupler law.

    Output couplers go to 50:50; input couplers send 1/(1+eta) of the power
    into the long arm, eta being the long-arm power transmission.
    """
    volts = {}
    for umzi, (cin, arms, cout) in UMZI_STAGES.items():
        ci, co = net.components[cin], net.components[cout]
        eta = 10 ** (-net.components[arms].long_loss_db / 10)
        for comp, target in ((co, 0.5), (ci, 1 / (1 + eta))):
            h = net.heaters[comp.heater]
            volts[comp.heater] = voltage_for_phase(h, _solve_coupler_phase(comp.k1, comp.k2, target))
    return net.with_voltages(volts)
