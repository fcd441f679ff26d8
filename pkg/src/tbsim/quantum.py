"""Two-photon time-bin state and its analysis by two unbalanced interferometers.

Bins are indexed 0, 1, 2 = early, middle, late after the analyzers; the
source only emits into 0 (E) and 1 (L). Joint probabilities are arrays
indexed ``[signal_bin, idler_bin]``.
"""
from __future__ import annotations

import cmath
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .circuit import ANALYZERS, CircuitNetlist, path_amplitudes

E, M, L = 0, 1, 2
BIN_NAMES = ("E", "M", "L")


class DegenerateConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class PumpBins:
    a_E: complex
    a_L: complex

    @property
    def phi_p(self) -> float:
        if self.a_E == 0 or self.a_L == 0:
            return 0.0
        return cmath.phase(self.a_L / self.a_E)

    @property
    def p_E(self) -> float:
        return abs(self.a_E) ** 2

    @property
    def p_L(self) -> float:
        return abs(self.a_L) ** 2

    @classmethod
    def balanced(cls, phi_p: float = 0.0) -> "PumpBins":
        r = 1 / math.sqrt(2)
        return cls(r, r * cmath.exp(1j * phi_p))


@dataclass(frozen=True)
class TwoPhotonState:
    amp_EE: complex
    amp_LL: complex

    def __post_init__(self):
        norm = abs(self.amp_EE) ** 2 + abs(self.amp_LL) ** 2
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"two-photon state not normalized (norm {norm})")

    @property
    def amps(self) -> tuple[complex, complex]:
        return (self.amp_EE, self.amp_LL)


@dataclass(frozen=True)
class AnalyzerParams:
    """Path amplitudes of one analyzer interferometer.

    A photon entering in bin t reaches the monitored port in bin t through
    the short arm with amplitude ``short_amp * exp(i phi)`` and in bin t+1
    through the long arm with amplitude ``long_amp``. ``other_*`` are the
    same amplitudes towards the spare output port, when known.
    """

    phi: float
    short_amp: complex
    long_amp: complex
    other_short: complex | None = None
    other_long: complex | None = None

    def __post_init__(self):
        if abs(self.short_amp) ** 2 + abs(self.long_amp) ** 2 > 1 + 1e-12:
            raise ValueError("analyzer path amplitudes exceed unit power")

    @property
    def short_path(self) -> complex:
        return self.short_amp * cmath.exp(1j * self.phi)

    def paths(self, port: int = 0) -> tuple[complex, complex] | None:
        """(short, long) amplitudes, heater phase included, for port 0 (monitored) or 1."""
        if port == 0:
            return (self.short_path, self.long_amp)
        if self.other_short is None:
            return None
        return (self.other_short * cmath.exp(1j * self.phi), self.other_long)

    def with_phi(self, phi: float) -> "AnalyzerParams":
        return AnalyzerParams(phi, self.short_amp, self.long_amp, self.other_short, self.other_long)


def ideal_analyzer(phi: float = 0.0, long_power: float = 1.0) -> AnalyzerParams:
    """50:50 analyzer whose long arm transmits ``long_power``; global phases removed."""
    t = math.sqrt(long_power)
    return AnalyzerParams(phi, 0.5, 0.5 * t, 0.5j, -0.5j * t)


@dataclass(frozen=True)
class JointDistribution:
    probs: np.ndarray  # [signal bin, idler bin] at the monitored ports
    marg_s: np.ndarray  # signal singles per bin, idler unconstrained
    marg_i: np.ndarray
    full: dict | None = None  # (port_s, bin_s, port_i, bin_i) -> prob, when enumerated

    def __getitem__(self, key):
        bs, bi = key
        if isinstance(bs, str):
            bs = BIN_NAMES.index(bs)
        if isinstance(bi, str):
            bi = BIN_NAMES.index(bi)
        return float(self.probs[bs, bi])

    @property
    def total(self) -> float:
        return float(self.probs.sum())


# --------------------------------------------------------------------------


def pump_bins(net: CircuitNetlist, lam_pump: float = 1555.7, in_port="2", out_port="3") -> PumpBins:
    """Early/late pump amplitudes at the nanowire port for a unit pump pulse."""
    amps = path_amplitudes(net, in_port, out_port, lam_pump)
    a_E, a_L = amps.get(0, 0j), amps.get(1, 0j)
    if abs(a_E) ** 2 + abs(a_L) ** 2 == 0:
        raise DegenerateConfigurationError("pump interferometer delivers no light to the pair source")
    return PumpBins(a_E, a_L)


def pair_state(bins: PumpBins) -> TwoPhotonState:
    """Pair amplitudes follow the pump field squared in each bin."""
    e, l = bins.a_E**2, bins.a_L**2
    norm = math.sqrt(abs(e) ** 2 + abs(l) ** 2)
    if norm == 0:
        raise DegenerateConfigurationError("no pump power in either time bin")
    return TwoPhotonState(e / norm, l / norm)


def analyzer_from_netlist(net: CircuitNetlist, which: str, lam: float) -> AnalyzerParams:
    """Path amplitudes of analyzer ``'s'`` or ``'i'`` read off the netlist (no facets)."""
    cin, arms, cout = ANALYZERS[which]
    phi = net.heaters[net.components[arms].heater].phase
    rot = cmath.exp(-1j * phi)
    mon = path_amplitudes(net, f"{cin}.in0", f"{cout}.out0", lam)
    oth = path_amplitudes(net, f"{cin}.in0", f"{cout}.out1", lam)
    shift = round(net.components[arms].long_delay_ps / net.bin_ps)
    return AnalyzerParams(
        phi,
        mon.get(0, 0j) * rot,
        mon.get(shift, 0j),
        oth.get(0, 0j) * rot,
        oth.get(shift, 0j),
    )


def _path_matrix(a: AnalyzerParams) -> np.ndarray:
    s, l = a.short_path, a.long_amp
    return np.array([[s, l, 0], [0, s, l]], dtype=complex)


def analyzer_distribution(state: TwoPhotonState, s: AnalyzerParams, i: AnalyzerParams) -> JointDistribution:
    """Joint bin distribution at the monitored ports.

    The middle-middle entry is the coherent sum of the early-long and
    late-short paths; every other entry has a single contributing path.
    Singles marginals are summed incoherently, which is exact whenever the
    analyzer's short and long paths are orthogonal across its output ports
    (true for any coupler/arm-loss interferometer).
    """
    ps, pi = _path_matrix(s), _path_matrix(i)
    c = np.array(state.amps)
    amp = np.einsum("t,tb,tc->bc", c, ps, pi)
    w = np.abs(c) ** 2
    return JointDistribution(
        np.abs(amp) ** 2,
        w @ np.abs(ps) ** 2,
        w @ np.abs(pi) ** 2,
    )


def middle_coincidence_prob(d: JointDistribution) -> float:
    return float(d.probs[M, M])


def oracle_distribution(bins: PumpBins, s: AnalyzerParams, i: AnalyzerParams) -> JointDistribution:
    """Brute-force distribution by enumerating every source/path combination.

    Terms are summed coherently when they land in the same (port, bin)
    outcome for both photons, then squared. Spare ports are enumerated when
    both analyzers know them; power missing from an analyzer is assigned to
    a loss outcome labelled by the source bin.
    """
    pair_amp = {0: bins.a_E**2, 1: bins.a_L**2}
    norm = math.sqrt(sum(abs(v) ** 2 for v in pair_amp.values()))
    pair_amp = {t: v / norm for t, v in pair_amp.items()}

    def outcomes(a: AnalyzerParams, t: int):
        ports = [0] if a.paths(1) is None else [0, 1]
        total = 0.0
        for port in ports:
            short, long_ = a.paths(port)
            for delay, amp in ((0, short), (1, long_)):
                total += abs(amp) ** 2
                yield (port, t + delay), amp
        deficit = 1.0 - total
        if deficit > 1e-15:
            yield ("loss", t), math.sqrt(deficit)

    acc: dict = defaultdict(complex)
    for t in (0, 1):
        for (os_, as_), (oi, ai) in itertools.product(outcomes(s, t), outcomes(i, t)):
            acc[(os_, oi)] += pair_amp[t] * as_ * ai
    full = {k: abs(v) ** 2 for k, v in acc.items()}
    probs = np.zeros((3, 3))
    marg_s, marg_i = np.zeros(3), np.zeros(3)
    for ((ps_, bs), (pi_, bi)), p in full.items():
        if ps_ == 0:
            marg_s[bs] += p
        if pi_ == 0:
            marg_i[bi] += p
        if ps_ == 0 and pi_ == 0:
            probs[bs, bi] += p
    flat = {(k[0][0], k[0][1], k[1][0], k[1][1]): v for k, v in full.items()}
    return JointDistribution(probs, marg_s, marg_i, flat)


def fringe_phase(phi_s: float, phi_i: float, phi_p: float) -> float:
    return phi_s + phi_i + 2 * phi_p


def analytic_middle_fringe(state: TwoPhotonState, s: AnalyzerParams, i: AnalyzerParams, phis) -> np.ndarray:
    """P(M, M) as the signal analyzer phase runs over ``phis``."""
    return np.array([middle_coincidence_prob(analyzer_distribution(state, s.with_phi(p), i)) for p in phis])

