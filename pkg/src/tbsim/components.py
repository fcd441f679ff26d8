"""Transfer-matrix models of the elementary optical elements on the chip.

All matrices act on field amplitudes of two waveguide modes. Port 0 of a
coupler is the "bar" reference; the cross path picks up a factor of ``i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

C_UM_PER_PS = 299.792458  # speed of light in um/ps
TOL = 1e-12


class DomainError(ValueError):
    """Parameter outside its physical domain."""


class CapabilityError(ValueError):
    """Requested phase cannot be reached by the heater."""


@dataclass(frozen=True)
class TransferMatrix2:
    m: np.ndarray
    lossless: bool = False

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        object.__setattr__(self, "m", m)
        if np.linalg.norm(m, 2) > 1 + TOL:
            raise DomainError("transfer matrix is not passive (spectral norm > 1)")
        if self.lossless and not np.allclose(m.conj().T @ m, np.eye(2), atol=TOL, rtol=0):
            raise DomainError("element flagged lossless but matrix is not unitary")

    def __matmul__(self, other: "TransferMatrix2") -> "TransferMatrix2":
        return TransferMatrix2(self.m @ other.m, self.lossless and other.lossless)

    def powers(self, field_in=(1.0, 0.0)) -> np.ndarray:
        """Output powers for an input field vector."""
        return np.abs(self.m @ np.asarray(field_in, dtype=complex)) ** 2


def _check_ratio(kappa: float, name: str = "kappa") -> None:
    if not (0.0 <= kappa <= 1.0) or math.isnan(kappa):
        raise DomainError(f"{name}={kappa} outside [0, 1]")


def dc_transfer(kappa: float) -> TransferMatrix2:
    """Directional coupler with power cross-coupling ratio ``kappa``."""
    _check_ratio(kappa)
    t = math.sqrt(1.0 - kappa)
    k = 1j * math.sqrt(kappa)
    return TransferMatrix2(np.array([[t, k], [k, t]]), lossless=True)


@dataclass(frozen=True)
class Heater:
    """Resistive heater with a quadratic thermo-optic phase law.

    ``dac_bits=0`` disables voltage quantization.
    """

    id: str
    alpha: float = 2.5 * math.pi / 100.0  # rad/V^2, 2.5*pi over [0, 10 V]
    phi0: float = 0.0
    u: float = 0.0
    u_max: float = 10.0
    dac_bits: int = 16

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError(f"heater {self.id}: alpha must be >= 0")
        if self.u_max <= 0:
            raise DomainError(f"heater {self.id}: u_max must be > 0")
        _check_voltage(self, self.u)

    @property
    def dac_step(self) -> float:
        if self.dac_bits <= 0:
            return 0.0
        return self.u_max / (2**self.dac_bits - 1)

    @property
    def phase(self) -> float:
        return heater_phase(self, self.u)

    def quantize(self, u: float) -> float:
        step = self.dac_step
        if step == 0.0:
            return float(u)
        return min(round(u / step) * step, self.u_max)

    def set(self, u: float) -> "Heater":
        return replace(self, u=float(u))


def _check_voltage(h: Heater, u: float) -> None:
    # tolerate float fuzz from callers that compute u from u_max
    if not (-1e-12 <= u <= h.u_max * (1 + 1e-12)) or math.isnan(u):
        raise DomainError(f"heater {h.id}: voltage {u} outside [0, {h.u_max}]")


def heater_phase(h: Heater, u: float) -> float:
    """Phase phi0 + alpha * q(u)**2 with q the DAC-quantized voltage."""
    _check_voltage(h, u)
    q = h.quantize(max(u, 0.0))
    return h.phi0 + h.alpha * q * q


def voltage_for_phase(h: Heater, phi_target: float) -> float:
    """Inverse of :func:`heater_phase`, snapped to the nearest DAC code.

    When the reachable window spans at least 2*pi the target is wrapped
    into ``[phi0, phi0 + 2*pi)`` first.
    """
    span = h.alpha * h.u_max**2
    rel = phi_target - h.phi0
    if span >= 2 * math.pi:
        rel = rel % (2 * math.pi)
        # wrapping can land a hair below 2*pi; keep exact zero for rel ~ 2*pi
        if 2 * math.pi - rel < 1e-12:
            rel = 0.0
    elif rel < -1e-12 or rel > span + 1e-12:
        raise CapabilityError(
            f"heater {h.id}: phase {phi_target:.6g} outside reachable window "
            f"[{h.phi0:.6g}, {h.phi0 + span:.6g}]"
        )
    if h.alpha == 0:
        return 0.0
    u = math.sqrt(max(rel, 0.0) / h.alpha)
    return h.quantize(min(u, h.u_max))


def tunable_coupler_transfer(k1: float, k2: float, phi: float) -> TransferMatrix2:
    """Balanced MZI acting as a coupler: dc(k2) . diag(e^{i phi}, 1) . dc(k1)."""
    arm = TransferMatrix2(np.diag([np.exp(1j * phi), 1.0]), lossless=True)
    return dc_transfer(k2) @ arm @ dc_transfer(k1)


def tunable_coupler_matrix(k1: float, k2: float, phi: float) -> np.ndarray:
    """Raw-array version of :func:`tunable_coupler_transfer` for inner loops."""
    t1, c1 = math.sqrt(1 - k1), 1j * math.sqrt(k1)
    t2, c2 = math.sqrt(1 - k2), 1j * math.sqrt(k2)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array(
        [
            [t2 * e * t1 + c2 * c1, t2 * e * c1 + c2 * t1],
            [c2 * e * t1 + t2 * c1, c2 * e * c1 + t2 * t1],
        ]
    )


@dataclass(frozen=True)
class DelayLine:
    length_cm: float
    group_index: float
    loss_db_per_cm: float = 0.0

    def __post_init__(self):
        if self.length_cm < 0 or self.group_index <= 0 or self.loss_db_per_cm < 0:
            raise DomainError("delay line needs length >= 0, group_index > 0, loss >= 0")

    @property
    def delay_ps(self) -> float:
        return self.length_cm * 1e4 * self.group_index / C_UM_PER_PS

    @property
    def loss_db(self) -> float:
        return self.length_cm * self.loss_db_per_cm

    @staticmethod
    def group_index_for(delay_ps: float, length_cm: float) -> float:
        return delay_ps * C_UM_PER_PS / (length_cm * 1e4)


@dataclass(frozen=True)
class MziArmPair:
    """Two MZI arms; arm 0 is the longer one and carries ``arm_loss_db``.

    ``heater_arm`` selects which arm (0 long, 1 short) the heater phase is
    applied to.
    """

    delta_L_opt: float = 0.0  # um
    arm_heater: Heater = field(default_factory=lambda: Heater("arm"))
    arm_loss_db: float = 0.0
    heater_arm: int = 0

    def __post_init__(self):
        if self.delta_L_opt < 0:
            raise DomainError("delta_L_opt must be >= 0")
        if self.arm_loss_db < 0:
            raise DomainError("arm_loss_db must be >= 0")
        if self.heater_arm not in (0, 1):
            raise DomainError("heater_arm must be 0 or 1")

    def arm_factors(self, lam_nm: float) -> tuple[complex, complex]:
        if lam_nm <= 0:
            raise DomainError("wavelength must be > 0")
        opt = 2 * math.pi * self.delta_L_opt * 1e3 / lam_nm
        heat = self.arm_heater.phase
        long_amp = 10 ** (-self.arm_loss_db / 20) * np.exp(1j * opt)
        short_amp = 1.0 + 0j
        if self.heater_arm == 0:
            long_amp *= np.exp(1j * heat)
        else:
            short_amp *= np.exp(1j * heat)
        return complex(long_amp), complex(short_amp)

    def transfer(self, lam_nm: float) -> TransferMatrix2:
        a0, a1 = self.arm_factors(lam_nm)
        return TransferMatrix2(np.diag([a0, a1]), lossless=self.arm_loss_db == 0)


@dataclass(frozen=True)
class TunableCoupler:
    heater: Heater
    k1: float = 0.5
    k2: float = 0.5

    def transfer(self) -> TransferMatrix2:
        return tunable_coupler_transfer(self.k1, self.k2, self.heater.phase)


def mzi_response(
    arms: MziArmPair,
    couplers: tuple[TunableCoupler, TunableCoupler],
    lam_nm: float,
) -> TransferMatrix2:
    """Wavelength-dependent transfer of a full MZI (input coupler, arms, output coupler)."""
    c_in, c_out = couplers
    return c_out.transfer() @ arms.transfer(lam_nm) @ c_in.transfer()
