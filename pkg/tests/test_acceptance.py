"""Acceptance criteria, one test per criterion.

Each test records a ``CRITERION n: PASS|FAIL`` line that is printed in the
pytest terminal summary (and directly when the module is run as a script).
"""
import cmath
import math
import time
from dataclasses import replace
from functools import lru_cache

import numpy as np

from tbsim.analysis import classical_limit_test, fit_fringe, singles_flatness, visibility
from tbsim.calibration import balance_input_coupler, balance_output_coupler, tune_demux
from tbsim.circuit import ClassicalField, build_reference_chip, path_insertion_loss, propagate
from tbsim.components import tunable_coupler_matrix
from tbsim.detection import (
    DEFAULT_SEED,
    ExperimentConfig,
    calibrated_reference_chip,
    fringe_scan,
    run_experiment,
)
from tbsim.quantum import (
    M,
    AnalyzerParams,
    PumpBins,
    analyzer_distribution,
    ideal_analyzer,
    middle_coincidence_prob,
    oracle_distribution,
    pair_state,
    pump_bins,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}

U_GRID = np.sqrt(np.linspace(0.0, 100.0, 21))  # 21 points uniform in u^2 over the heater range


def _record(n, ok, detail):
    line = f"CRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line, flush=True)
    assert ok, line


def _with_detectors(cfg, **kw):
    return replace(cfg, det_s=replace(cfg.det_s, **kw), det_i=replace(cfg.det_i, **kw))


@lru_cache(maxsize=None)
def _scan(idler_volts, noise=True, threads=1):
    cfg = ExperimentConfig(heater_voltages={"i": idler_volts})
    if not noise:
        cfg = cfg.noiseless()
    t0 = time.perf_counter()
    scan = fringe_scan(cfg, "s", U_GRID, threads=threads)
    return scan, time.perf_counter() - t0


def _visibility(scan):
    return visibility(fit_fringe(scan))


# 1 -------------------------------------------------------------------------


def _random_analyzer(rng):
    u_in = tunable_coupler_matrix(*rng.uniform(0, 1, 2), rng.uniform(0, 2 * math.pi))
    u_out = tunable_coupler_matrix(*rng.uniform(0, 1, 2), rng.uniform(0, 2 * math.pi))
    t = math.sqrt(rng.uniform(0.1, 1.0)) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    return AnalyzerParams(
        rng.uniform(-math.pi, math.pi),
        u_out[0, 1] * u_in[1, 0], u_out[0, 0] * t * u_in[0, 0],
        u_out[1, 1] * u_in[1, 0], u_out[1, 0] * t * u_in[0, 0],
    )


def test_criterion_01_oracle_equivalence():
    rng = np.random.default_rng(DEFAULT_SEED)
    draws = []
    for _ in range(1000):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        draws.append((PumpBins(*(a / np.linalg.norm(a))), _random_analyzer(rng), _random_analyzer(rng)))
    t0 = time.perf_counter()
    worst = 0.0
    for bins, s, i in draws:
        fast = analyzer_distribution(pair_state(bins), s, i)
        slow = oracle_distribution(bins, s, i)
        for x, y in ((fast.probs, slow.probs), (fast.marg_s, slow.marg_s), (fast.marg_i, slow.marg_i)):
            worst = max(worst, float(np.max(np.abs(x - y))))
    dt = time.perf_counter() - t0
    _record(1, worst <= 1e-12 and dt < 1.0, f"max deviation {worst:.2e} (tol 1e-12), runtime {dt:.3f} s (< 1 s)")


# 2 -------------------------------------------------------------------------


def test_criterion_02_fringe_law():
    phis = np.linspace(0, 2 * math.pi, 64, endpoint=False)
    state = pair_state(PumpBins.balanced())
    p = np.array([middle_coincidence_prob(analyzer_distribution(state, ideal_analyzer(x), ideal_analyzer()))
                  for x in phis])
    fit = fit_fringe((phis, p), alpha=1.0)
    resid = float(np.max(np.abs(fit.model(phis) - p)))
    v = visibility(fit)[0]
    _record(2, resid < 1e-10 and abs(v - 1) < 1e-10, f"max residual {resid:.2e} (< 1e-10), V = {v:.12f}")


# 3, 4, 5 -------------------------------------------------------------------


def test_criterion_03_visibility_band():
    parts, ok, total = [], True, 0.0
    for volts in (0.0, 4.0):
        scan, dt = _scan(volts)
        v, s = _visibility(scan)
        verdict = classical_limit_test(v, s)
        total += dt
        ok &= 0.85 <= v <= 0.91 and verdict == "pass"
        parts.append(f"idler {volts:g} V: V = {v:.4f} +- {s:.4f} ({verdict})")
    ok &= total <= 300
    n = ExperimentConfig().n_pulses
    _record(3, ok, "; ".join(parts) + f"; {n:.0e} pulses/point, {total:.1f} s")


def test_criterion_04_ideal_limit():
    vs = [_visibility(_scan(volts, noise=False)[0])[0] for volts in (0.0, 4.0)]
    _record(4, min(vs) >= 0.99, "noise off: V = " + ", ".join(f"{v:.4f}" for v in vs) + " (>= 0.99)")


def test_criterion_05_singles_flatness():
    parts, ok = [], True
    for volts in (0.0, 4.0):
        cs, ci, dof = singles_flatness(_scan(volts)[0])
        ok &= 0.5 <= cs / dof <= 2 and 0.5 <= ci / dof <= 2
        parts.append(f"idler {volts:g} V: chi2/dof s {cs / dof:.2f}, i {ci / dof:.2f}")
    _record(5, ok, "; ".join(parts) + " (band [0.5, 2])")


# 6 -------------------------------------------------------------------------


def test_criterion_06_demux_calibration():
    _, rep = tune_demux(build_reference_chip().with_losses(0.0), 1)
    rej = rep.objectives["demux1_pump_rejection_db"]
    loss = rep.objectives["demux1_excess_loss_db"]
    ok = rej >= 25 and loss <= 0.5 and rep.converged["demux1"]
    _record(6, ok, f"lossless arms: pump rejection {rej:.1f} dB (>= 25), excess loss {loss:.3f} dB (<= 0.5)")


# 7 -------------------------------------------------------------------------


def test_criterion_07_coupler_balancing():
    chip = build_reference_chip()
    net = balance_input_coupler(balance_output_coupler(chip).net).net
    st = pair_state(pump_bins(net))
    dev = max(abs(abs(st.amp_EE) ** 2 - 0.5), abs(abs(st.amp_LL) ** 2 - 0.5))
    step = chip.heaters["p_out"].dac_step
    us = [balance_output_coupler(chip.with_voltages({"p_in": u})).u for u in (2.0, 4.47, 7.5)]
    spread = max(us) - min(us)
    ok = dev <= 1e-6 and spread <= step
    _record(7, ok, f"| |amp_EE|^2 - 0.5 | = {dev:.2e} (tol 1e-6); output optimum spread "
                   f"{spread:.2e} V over 3 input settings (DAC step {step:.2e} V)")


# 8 -------------------------------------------------------------------------


def test_criterion_08_persistence_peak():
    cfg = ExperimentConfig(heater_voltages={"s": 0.0, "i": 0.0})
    with_pp = run_experiment(cfg).histogram
    without = run_experiment(_with_detectors(cfg, p_persist=0.0)).histogram
    side = with_pp.get(-795.0, 0)
    main = with_pp.get(0.0, 0)
    # secondary: populated, below the main peak, well above counting noise
    ok = 0 < side < main and side > 5 * math.sqrt(side) and without.get(-795.0, 0) == 0
    _record(8, ok, f"p_persist 0.04: counts at -795 ps {side} vs main {main}; "
                   f"p_persist 0: {without.get(-795.0, 0)}")


# 9 -------------------------------------------------------------------------

# pulses per point are chosen so each sweep point collects several thousand
# coincidences per fringe point; the seed is the same everywhere
SWEEPS = {
    "mu": [(0.005, 400e9), (0.01, 200e9), (0.02, 100e9), (0.05, 40e9)],
    "p_dark": [(0.0, 200e9), (1e-5, 200e9), (1e-4, 200e9)],
    "p_persist": [(0.0, 100e9), (0.02, 100e9), (0.05, 100e9), (0.1, 100e9)],
}


def _sweep_cfg(name, value, n):
    cfg = replace(ExperimentConfig(), n_pulses=int(n), rng_seed=DEFAULT_SEED)
    if name == "mu":
        return replace(cfg, source=replace(cfg.source, mu0=value))
    return _with_detectors(cfg, **{name: value})


def test_criterion_09_noise_monotonicity():
    parts, ok = [], True
    for name, points in SWEEPS.items():
        vs = [_visibility(fringe_scan(_sweep_cfg(name, x, n), "s", U_GRID)) for x, n in points]
        mono = all(b[0] <= a[0] for a, b in zip(vs, vs[1:]))
        ok &= mono
        parts.append(f"{name}: " + " ".join(f"{x:g}->{v:.4f}+-{s:.4f}" for (x, _), (v, s) in zip(points, vs)))
    _record(9, ok, "; ".join(parts))


# 10 ------------------------------------------------------------------------


def test_criterion_10_conservation_and_determinism():
    rng = np.random.default_rng(DEFAULT_SEED)
    base = build_reference_chip().with_losses(0.0)
    worst = 0.0
    for _ in range(50):
        volts = {h: float(rng.uniform(0, 10)) for h in base.heaters}
        net = base.with_voltages(volts)
        port = str(rng.choice(["1", "2", "5", "6"]))
        lam = float(rng.uniform(1540, 1570))
        out = propagate(net, ClassicalField({(port, lam, 0): 1.0 + 0j}, net.bin_ps))
        worst = max(worst, abs(out.total_power - 1.0))
    cfg = replace(ExperimentConfig(), n_pulses=2_000_000_000)
    a = run_experiment(cfg, threads=1)
    b = run_experiment(cfg, threads=8)
    c = run_experiment(cfg, threads=1)
    same = a == b == c
    _record(10, worst <= 1e-12 and same,
            f"lossless power error {worst:.1e} (tol 1e-12); threads 1/8/1 identical: {same}")


# 11 ------------------------------------------------------------------------


def test_criterion_11_chip_parameters():
    ref = path_insertion_loss(build_reference_chip(), "ref_in", "ref_out", 1550.0)
    il = path_insertion_loss(calibrated_reference_chip(), "6", "12", 1550.9, bin=1)
    ok = abs(ref - 4.5) < 1e-9 and 9 <= il <= 11
    _record(11, ok, f"reference waveguide {ref:.3f} dB (4.5); port 6 -> 12 {il:.2f} dB ([9, 11])")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
