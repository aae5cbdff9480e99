"""Spectrum sensing and cooperative spectrum sharing with a malicious
primary transmitter."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from ..secrecy import SecrecyMetrics, secrecy_metrics
from ..units import q_function


@dataclass(frozen=True)
class SharingScenario:
    """Two-phase relaying: the secondary transmitter lends a fraction
    ``chi`` of its power ``total_power`` to the primary signal and keeps
    ``1 - chi`` for its own. Channel coefficients use the names of the links
    they describe; ``*_2`` marks the second (relay) phase.
    """

    total_power: float
    chi: float = 0.5
    noise_var: float = 1.0
    h_pr: complex = 1.0
    h_st: complex = 1.0
    h_sr: complex = 1.0
    h_pr_2: complex = 1.0
    h_sr_2: complex = 1.0
    h_pt_2: complex = 0.0
    # energy-detector sensing stage
    sense_threshold: float = 1.0
    sense_snr: float = 1.0
    sense_time: float = 1e-3
    sample_rate: float = 1e5
    sense_noise_var: float = 1.0
    threshold: float = 0.0
    main_link_gain: float = 1.0
    eve_link_gain: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.chi <= 1.0:
            raise DomainError(f"chi must be in [0, 1], got {self.chi}")
        if self.total_power < 0:
            raise DomainError("total_power must be >= 0")
        if self.noise_var <= 0:
            raise DomainError("noise_var must be > 0")

    @property
    def sample_count(self) -> int:
        return int(math.floor(self.sense_time * self.sample_rate))

    @property
    def snr(self) -> float:
        return self.total_power / self.noise_var


def sensing_probabilities(s: SharingScenario) -> tuple[float, float]:
    """(P_detect, P_false_alarm) for energy detection over mu * f_N samples."""
    mf = s.sense_time * s.sample_rate
    if mf <= 0:
        raise DomainError("sense_time * sample_rate must be > 0")
    if s.sense_noise_var <= 0:
        raise DomainError("sense_noise_var must be > 0")
    if s.sense_snr < 0:
        raise DomainError("sense_snr must be >= 0")
    ratio = s.sense_threshold / s.sense_noise_var
    p_d = q_function((ratio - s.sense_snr - 1.0) * math.sqrt(mf / (2.0 * s.sense_snr + 1.0)))
    p_fa = q_function((ratio - 1.0) * math.sqrt(mf))
    return p_d, p_fa


def secondary_receiver_snr(s: SharingScenario) -> float:
    """P_sr = (1 - chi) P g_sr with P = o / n and g_sr = |h_sr'|^2."""
    return (1.0 - s.chi) * s.snr * abs(s.h_sr_2) ** 2 * s.main_link_gain


def primary_transmitter_snr(s: SharingScenario) -> float:
    """SNR of the secondary payload at the (malicious) primary transmitter.

    The primary transmitter knows its own signal v_pt, so only the
    ``1 - chi`` share carrying v_st counts.
    """
    return (1.0 - s.chi) * s.snr * abs(s.h_pt_2) ** 2 * s.eve_link_gain


def sharing_secrecy(s: SharingScenario) -> SecrecyMetrics:
    # the 1/2 accounts for the two transmission slots
    return secrecy_metrics(secondary_receiver_snr(s), primary_transmitter_snr(s), s.threshold, scale=0.5)
