"""Pulse-resolved Monte Carlo of the gated coincidence experiment.

Each laser pulse independently yields a pair of detector outcomes
("tags"): nothing, a click in the middle-bin gate (M), or a charge-persistence
click left by an early-bin photon (E). The per-pulse tag distribution is
computed exactly from the two-photon joint distribution, the pair-number
statistics, losses, dark counts and persistence; the sampler then draws only
the pulses that produce at least one click (geometric skips) and replays them
in order through the detector deadtime.

Pulses are split into partitions; partition ``k`` of scan point ``j`` draws
from a Philox stream keyed by ``(seed, j, k)``, so results do not depend on
how many threads execute the partitions.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .analysis import FringeScan
from .circuit import ChipParams, CircuitNetlist
from .quantum import (
    JointDistribution,
    analyzer_distribution,
    analyzer_from_netlist,
    pair_state,
    pump_bins,
)

EXPERIMENT_FORMAT = "tbsim-experiment/1"
DEFAULT_SEED = 20151016

# tag codes; order matters: a persistence click opens the gate and blocks M
NONE, CLICK_M, CLICK_E = 0, 1, 2
TAG_OFFSET_BINS = {CLICK_M: 0, CLICK_E: -1}


class ExperimentConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PairSourceParams:
    mu0: float = 0.03
    p_ref: float = 0.45
    statistics: str = "thermal"  # thermal | poisson | single

    def mu(self, power_w: float) -> float:
        return self.mu0 * (power_w / self.p_ref) ** 2


@dataclass(frozen=True)
class DetectorParams:
    efficiency: float = 0.10
    p_dark: float = 1e-6
    gate_width_ns: float = 1.0
    gate_bin: str = "M"
    deadtime_gates: int = 1000
    p_persist: float = 0.04


@dataclass(frozen=True)
class ExperimentConfig:
    netlist: CircuitNetlist | None = None  # None -> calibrated reference chip
    heater_voltages: Mapping[str, float] = field(default_factory=dict)
    rep_rate_mhz: float = 50.0
    n_pulses: int = 40_000_000_000
    eta_s_db: float = -10.0
    eta_i_db: float = -10.0
    pump_power_w: float = 0.45
    source: PairSourceParams = field(default_factory=PairSourceParams)
    det_s: DetectorParams = field(default_factory=DetectorParams)
    det_i: DetectorParams = field(default_factory=DetectorParams)
    rng_seed: int = DEFAULT_SEED
    partitions: int = 16
    channels: ChipParams = field(default_factory=ChipParams)

    def problems(self) -> list[str]:
        out = []
        if self.n_pulses < 1:
            out.append("n_pulses must be >= 1")
        if self.partitions < 1:
            out.append("partitions must be >= 1")
        for name in ("eta_s_db", "eta_i_db"):
            if getattr(self, name) > 0:
                out.append(f"{name} must be <= 0 dB")
        if self.source.mu0 < 0:
            out.append("source.mu0 must be >= 0")
        if self.source.statistics not in ("thermal", "poisson", "single"):
            out.append(f"unknown pair statistics {self.source.statistics!r}")
        if self.source.statistics == "single" and self.mu > 1:
            out.append("single-pair statistics need mu <= 1")
        if self.pump_power_w < 0:
            out.append("pump_power_w must be >= 0")
        for tag, d in (("det_s", self.det_s), ("det_i", self.det_i)):
            for name in ("efficiency", "p_dark", "p_persist"):
                v = getattr(d, name)
                if not 0 <= v <= 1:
                    out.append(f"{tag}.{name}={v} outside [0, 1]")
            if d.deadtime_gates < 0:
                out.append(f"{tag}.deadtime_gates must be >= 0")
            if d.gate_bin != "M":
                out.append(f"{tag}.gate_bin: only the middle bin gate is modelled")
        if not 0 <= self.rng_seed < 2**64:
            out.append("rng_seed must be an unsigned 64-bit integer")
        return out

    def validate(self) -> "ExperimentConfig":
        problems = self.problems()
        if problems:
            raise ExperimentConfigError("; ".join(problems))
        return self

    @property
    def mu(self) -> float:
        return self.source.mu(self.pump_power_w)

    def noiseless(self) -> "ExperimentConfig":
        """Dark counts, persistence and multi-pair emission switched off."""
        quiet = dict(p_dark=0.0, p_persist=0.0)
        return replace(self, det_s=replace(self.det_s, **quiet), det_i=replace(self.det_i, **quiet),
                       source=replace(self.source, statistics="single"))

    def chip(self) -> CircuitNetlist:
        net = self.netlist if self.netlist is not None else calibrated_reference_chip()
        return net.with_voltages(self.heater_voltages) if self.heater_voltages else net

    # -- serialization -------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "format": EXPERIMENT_FORMAT,
            "circuit": None if self.netlist is None else self.netlist.to_dict(),
            "heater_voltages": dict(self.heater_voltages),
            "rep_rate_mhz": self.rep_rate_mhz,
            "n_pulses": self.n_pulses,
            "eta_s_db": self.eta_s_db,
            "eta_i_db": self.eta_i_db,
            "pump_power_w": self.pump_power_w,
            "source": asdict(self.source),
            "detectors": {"signal": asdict(self.det_s), "idler": asdict(self.det_i)},
            "rng_seed": self.rng_seed,
            "partitions": self.partitions,
            "channels": {k: getattr(self.channels, k) for k in ("lambda_pump", "lambda_signal", "lambda_idler")},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: Mapping) -> "ExperimentConfig":
        if d.get("format") != EXPERIMENT_FORMAT:
            raise ExperimentConfigError(f"field 'format': expected {EXPERIMENT_FORMAT!r}, got {d.get('format')!r}")
        known = {"format", "circuit", "heater_voltages", "rep_rate_mhz", "n_pulses", "eta_s_db", "eta_i_db",
                 "pump_power_w", "source", "detectors", "rng_seed", "partitions", "channels"}
        extra = sorted(set(d) - known)
        if extra:
            raise ExperimentConfigError(f"unknown field(s): {', '.join(extra)}")
        kw = {}
        try:
            if d.get("circuit") is not None:
                kw["netlist"] = CircuitNetlist.from_dict(d["circuit"])
            for k in ("heater_voltages",):
                if k in d:
                    kw[k] = {str(h): float(u) for h, u in d[k].items()}
            for k in ("rep_rate_mhz", "eta_s_db", "eta_i_db", "pump_power_w"):
                if k in d:
                    kw[k] = float(d[k])
            for k in ("n_pulses", "rng_seed", "partitions"):
                if k in d:
                    kw[k] = int(d[k])
            if "source" in d:
                kw["source"] = PairSourceParams(**d["source"])
            dets = d.get("detectors", {})
            if "signal" in dets:
                kw["det_s"] = DetectorParams(**dets["signal"])
            if "idler" in dets:
                kw["det_i"] = DetectorParams(**dets["idler"])
            if "channels" in d:
                kw["channels"] = ChipParams(**d["channels"])
        except (TypeError, ValueError) as exc:
            raise ExperimentConfigError(str(exc)) from exc
        return cls(**kw).validate()

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ExperimentConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
        return cls.from_dict(d)


_CAL_CACHE: dict = {}


def calibrated_reference_chip(p: ChipParams | None = None) -> CircuitNetlist:
    """Reference chip after the full classical calibration (cached per parameter set)."""
    from .calibration import calibrate_chip
    from .circuit import build_reference_chip

    p = p or ChipParams()
    if p not in _CAL_CACHE:
        _CAL_CACHE[p] = calibrate_chip(build_reference_chip(p), p)[0]
    return _CAL_CACHE[p]


@dataclass
class ExperimentResult:
    singles_s: int = 0
    singles_i: int = 0
    coincidences: int = 0
    histogram: dict = field(default_factory=dict)  # offset_ps -> counts
    n_pulses: int = 0

    def __add__(self, other: "ExperimentResult") -> "ExperimentResult":
        hist = dict(self.histogram)
        for k, v in other.histogram.items():
            hist[k] = hist.get(k, 0) + v
        return ExperimentResult(self.singles_s + other.singles_s, self.singles_i + other.singles_i,
                                self.coincidences + other.coincidences, dict(sorted(hist.items())),
                                self.n_pulses + other.n_pulses)

    def histogram_csv(self) -> str:
        lines = ["offset_ps,counts"]
        lines += [f"{k:g},{v}" for k, v in sorted(self.histogram.items())]
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# exact per-pulse outcome distribution


def joint_distribution(cfg: ExperimentConfig, net: CircuitNetlist | None = None) -> JointDistribution:
    net = net or cfg.chip()
    ch = cfg.channels
    state = pair_state(pump_bins(net, ch.lambda_pump))
    s = analyzer_from_netlist(net, "s", ch.lambda_signal)
    i = analyzer_from_netlist(net, "i", ch.lambda_idler)
    return analyzer_distribution(state, s, i)


def _full_joint(jd: JointDistribution) -> np.ndarray:
    """4x4 joint over (E, M, L, not detected-port) for signal and idler."""
    J = np.zeros((4, 4))
    J[:3, :3] = jd.probs
    J[:3, 3] = jd.marg_s - jd.probs.sum(axis=1)
    J[3, :3] = jd.marg_i - jd.probs.sum(axis=0)
    J = np.clip(J, 0.0, None)
    J[3, 3] = max(0.0, 1.0 - J.sum())
    return J


def _detector_matrix(eta: float, d: DetectorParams) -> np.ndarray:
    """Rows: photon bin E, M, L, absent. Columns: tag none, M, E."""
    pe = eta * d.p_persist
    return np.array([[1 - pe, 0.0, pe], [1 - eta, eta, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])


def _cdf(q: np.ndarray) -> np.ndarray:
    return q.cumsum(axis=0).cumsum(axis=1)


def pulse_outcome_pmf(cfg: ExperimentConfig, jd: JointDistribution) -> np.ndarray:
    """Exact 3x3 probability of (signal tag, idler tag) for one pulse.

    The first pair follows the coherent joint distribution, further pairs
    the product of the singles marginals; a detector's tag is the maximum
    over everything that reaches it in the gate (E > M > none).
    """
    eta_s = 10 ** (cfg.eta_s_db / 10) * cfg.det_s.efficiency
    eta_i = 10 ** (cfg.eta_i_db / 10) * cfg.det_i.efficiency
    Ds, Di = _detector_matrix(eta_s, cfg.det_s), _detector_matrix(eta_i, cfg.det_i)
    J = _full_joint(jd)
    F1 = _cdf(Ds.T @ J @ Di)
    F2 = _cdf(np.outer(J.sum(axis=1) @ Ds, J.sum(axis=0) @ Di))
    mu = cfg.mu
    stats = cfg.source.statistics
    if stats == "thermal":
        x = mu / (1 + mu)
        F = (1 - x) + (1 - x) * x * F1 / (1 - x * F2)
    elif stats == "poisson":
        F = math.exp(-mu) * (1 + F1 * np.where(F2 > 0, np.expm1(mu * F2) / np.where(F2 > 0, F2, 1), mu))
    else:
        F = (1 - mu) + mu * F1
    fd_s = np.array([1 - cfg.det_s.p_dark, 1.0, 1.0])
    fd_i = np.array([1 - cfg.det_i.p_dark, 1.0, 1.0])
    F = F * np.outer(fd_s, fd_i)
    pmf = np.diff(np.diff(F, axis=0, prepend=0.0), axis=1, prepend=0.0)
    return np.clip(pmf, 0.0, None)


# --------------------------------------------------------------------------
# sampling


def _stream(seed: int, point: int, part: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(point, part))
    return np.random.Generator(np.random.Philox(ss))


def _active_pulses(rng: np.random.Generator, q: float, n: int) -> np.ndarray:
    """Sorted indices of pulses with at least one click, via geometric skips."""
    if q <= 0:
        return np.empty(0, dtype=np.int64)
    if q >= 1:
        return np.arange(n, dtype=np.int64)
    chunks, last = [], -1
    while True:
        size = int(q * (n - last) + 6 * math.sqrt(q * (n - last)) + 16)
        pos = last + np.cumsum(rng.geometric(q, size=size), dtype=np.int64)
        if pos[-1] >= n:
            chunks.append(pos[pos < n])
            break
        chunks.append(pos)
        last = int(pos[-1])
    return np.concatenate(chunks)


def _apply_deadtime(gates: np.ndarray, deadtime: int) -> np.ndarray:
    """Mask of clicks that occur while the detector is live.

    A click further than ``deadtime`` gates from its predecessor is always
    accepted; only clicks inside some earlier window need the sequential rule.
    """
    keep = np.ones(gates.size, dtype=bool)
    if gates.size < 2:
        return keep
    close = np.flatnonzero(np.diff(gates) <= deadtime) + 1
    g = gates.tolist()
    last_acc = -1
    prev = -2
    for k in close.tolist():
        if prev != k - 1:  # predecessor was uncontested, hence accepted
            last_acc = g[k - 1]
        if g[k] - last_acc <= deadtime:
            keep[k] = False
        else:
            last_acc = g[k]
        prev = k
    return keep


def _simulate_partition(pmf_flat, q, n, det_s, det_i, bin_ps, rng) -> ExperimentResult:
    pos = _active_pulses(rng, q, n)
    if pos.size == 0:
        return ExperimentResult(n_pulses=n)
    cats = rng.choice(8, size=pos.size, p=pmf_flat[1:] / pmf_flat[1:].sum()) + 1
    ts, ti = cats // 3, cats % 3
    click_s, click_i = ts > 0, ti > 0
    live_s = np.zeros(pos.size, dtype=bool)
    live_i = np.zeros(pos.size, dtype=bool)
    live_s[click_s] = _apply_deadtime(pos[click_s], det_s.deadtime_gates)
    live_i[click_i] = _apply_deadtime(pos[click_i], det_i.deadtime_gates)
    both = live_s & live_i
    offs = np.array([0, 0, -1])
    delta = (offs[ts[both]] - offs[ti[both]]) * bin_ps
    keys, counts = np.unique(delta, return_counts=True)
    hist = {float(k): int(c) for k, c in zip(keys, counts)}
    return ExperimentResult(int(live_s.sum()), int(live_i.sum()), int(both.sum()), hist, n)


def run_experiment(cfg: ExperimentConfig, jd: JointDistribution | None = None, threads: int = 1,
                   point: int = 0) -> ExperimentResult:
    """Simulate ``cfg.n_pulses`` pulses; bit-exact for fixed (seed, partitions, point)."""
    cfg.validate()
    net = cfg.chip()
    jd = jd if jd is not None else joint_distribution(cfg, net)
    pmf = pulse_outcome_pmf(cfg, jd).ravel()
    q = float(1.0 - pmf[0]) if pmf[1:].sum() > 0 else 0.0
    sizes = [cfg.n_pulses // cfg.partitions + (k < cfg.n_pulses % cfg.partitions) for k in range(cfg.partitions)]

    def task(k):
        return _simulate_partition(pmf, q, sizes[k], cfg.det_s, cfg.det_i, net.bin_ps,
                                   _stream(cfg.rng_seed, point, k))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(task, range(cfg.partitions)))
    else:
        parts = [task(k) for k in range(cfg.partitions)]
    total = ExperimentResult()
    for r in parts:
        total = total + r
    return total


def expected_rates(cfg: ExperimentConfig, jd: JointDistribution | None = None) -> dict[str, float]:
    """Per-pulse click probabilities without deadtime (analytic reference)."""
    jd = jd if jd is not None else joint_distribution(cfg)
    pmf = pulse_outcome_pmf(cfg, jd)
    return {"singles_s": float(pmf[1:, :].sum()), "singles_i": float(pmf[:, 1:].sum()),
            "coincidences": float(pmf[1:, 1:].sum()), "main_peak": float(pmf[1, 1] + pmf[2, 2])}


def fringe_scan(cfg: ExperimentConfig, heater: str, u_grid: Sequence[float], threads: int = 1) -> FringeScan:
    """Coincidences and singles while one heater is stepped over ``u_grid``."""
    cfg.validate()
    base = cfg.chip()
    if heater not in base.heaters:
        raise ExperimentConfigError(f"unknown heater {heater!r}")
    h = base.heaters[heater]
    u_grid = [float(u) for u in u_grid]
    bad = [u for u in u_grid if not 0 <= u <= h.u_max]
    if bad:
        raise ExperimentConfigError(f"grid voltages {bad} outside [0, {h.u_max}] for heater {heater}")
    C, Ss, Si, hist = [], [], [], ExperimentResult()
    for j, u in enumerate(u_grid):
        net = base.with_voltages({heater: u})
        point_cfg = replace(cfg, netlist=net, heater_voltages={})
        res = run_experiment(point_cfg, joint_distribution(point_cfg, net), threads, point=j)
        C.append(res.coincidences)
        Ss.append(res.singles_s)
        Si.append(res.singles_i)
        hist = hist + res
    return FringeScan(np.array(u_grid), np.array(C), np.array(Ss), np.array(Si), heater=heater,
                      n_pulses=cfg.n_pulses, histogram=hist.histogram)


def histogram_offsets(res: ExperimentResult | Mapping[float, int]) -> list[tuple[float, int]]:
    """Populated histogram offsets as (offset_ps, counts), highest first.

    The histogram is resolved at one time bin, so each populated offset is a
    separate peak (main peak at 0, persistence satellites at +-one bin).
    """
    hist = res.histogram if isinstance(res, ExperimentResult) else dict(res)
    if not hist:
        raise ValueError("histogram is empty")
    peaks = [(float(off), int(cnt)) for off, cnt in hist.items() if cnt > 0]
    return sorted(peaks, key=lambda p: (-p[1], p[0]))
