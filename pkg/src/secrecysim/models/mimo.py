"""Massive MIMO link with mutual coupling, front-end responses and
multi-user interference."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..errors import DomainError
from ..secrecy import SecrecyMetrics, SinrInputs, secrecy_metrics, sinr


@dataclass(frozen=True)
class MimoScenario:
    """One BS-to-UE link plus an eavesdropper.

    The channel is ``H = a * (|hbar| exp(j 2 pi alpha) + htilde) * b`` where
    ``hbar`` is the mutual-coupling component (phase ``coupling_phase`` in
    cycles) and ``htilde`` the remaining multipath. ``interference`` holds
    the complex amplitudes I_k of neighbouring users.
    """

    tx_power: float
    noise_power: float = 1.0
    front_end_tx: complex = 1.0
    front_end_rx: complex = 1.0
    coupling_magnitude: float = 1.0
    coupling_phase: float = 0.0
    multipath: complex = 0.0
    interference: tuple[complex, ...] = ()
    coupling_power: float = 0.0
    eve_channel_gain: float = 0.0
    eve_noise_power: float | None = None
    eve_interference_power: float | None = None
    bs_antennas: int = 1
    ue_antennas: int = 1
    threshold: float = 0.0
    main_link_gain: float = 1.0
    eve_link_gain: float = 1.0

    def __post_init__(self):
        for k in ("tx_power", "coupling_magnitude", "coupling_power", "eve_channel_gain",
                  "threshold", "main_link_gain", "eve_link_gain"):
            if getattr(self, k) < 0:
                raise DomainError(f"{k} must be >= 0")
        if self.noise_power <= 0 or (self.eve_noise_power is not None and self.eve_noise_power <= 0):
            raise DomainError("noise power must be > 0")
        if self.eve_interference_power is not None and self.eve_interference_power < 0:
            raise DomainError("eve_interference_power must be >= 0")
        if self.bs_antennas < 1 or self.ue_antennas < 1:
            raise DomainError("antenna counts must be >= 1")


@dataclass(frozen=True)
class PowerBudget:
    tx: float
    noise: float
    interference: float
    coupling: float
    front_end: float

    @property
    def total(self) -> float:
        return self.tx + self.noise + self.interference + self.coupling + self.front_end


def channel_coefficient(s: MimoScenario) -> complex:
    hbar = s.coupling_magnitude * cmath.exp(2j * math.pi * s.coupling_phase)
    return s.front_end_tx * (hbar + s.multipath) * s.front_end_rx


def interference_power(s: MimoScenario) -> float:
    return float(sum(abs(i) ** 2 for i in s.interference))


def front_end_power(s: MimoScenario) -> float:
    return abs(s.front_end_tx) ** 2 * abs(s.front_end_rx) ** 2


def power_budget(s: MimoScenario) -> PowerBudget:
    return PowerBudget(s.tx_power, s.noise_power, interference_power(s), s.coupling_power, front_end_power(s))


def mimo_secrecy(s: MimoScenario) -> SecrecyMetrics:
    ip = interference_power(s)
    main = SinrInputs(
        s.tx_power * abs(channel_coefficient(s)) ** 2 * s.main_link_gain,
        s.noise_power, ip, s.coupling_power,
    )
    eve = SinrInputs(
        s.tx_power * s.eve_channel_gain * s.eve_link_gain,
        s.eve_noise_power if s.eve_noise_power is not None else s.noise_power,
        s.eve_interference_power if s.eve_interference_power is not None else ip,
        s.coupling_power,
    )
    return secrecy_metrics(sinr(main), sinr(eve), s.threshold)
