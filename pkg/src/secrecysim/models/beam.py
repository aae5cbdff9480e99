"""Receive beamforming: the unit-gain minimum-noise combiner (MRC)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..secrecy import SecrecyMetrics, secrecy_metrics


@dataclass(frozen=True)
class BeamScenario:
    channel: np.ndarray
    noise_var: float = 1.0
    tx_power: float = 1.0
    eve_channel: np.ndarray | None = None
    threshold: float = 0.0
    main_link_gain: float = 1.0
    eve_link_gain: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "channel", np.atleast_1d(np.asarray(self.channel, dtype=complex)))
        if self.eve_channel is not None:
            object.__setattr__(self, "eve_channel", np.atleast_1d(np.asarray(self.eve_channel, dtype=complex)))
        if self.noise_var <= 0:
            raise DomainError("noise_var must be > 0")
        if self.tx_power < 0:
            raise DomainError("tx_power must be >= 0")


@dataclass(frozen=True)
class BeamformerResult:
    weights: np.ndarray
    snr: float
    multiplier: float


def noise_power(weights, noise_var) -> float:
    """Output noise power theta^2 ||w||^2 for i.i.d. per-antenna noise."""
    w = np.asarray(weights)
    return float(noise_var * np.vdot(w, w).real)


def optimal_beamformer(s: BeamScenario) -> BeamformerResult:
    """w* = h / ||h||^2 minimises noise power subject to w^H h = 1.

    The Lagrange multiplier is 2 / ||h||^2 and the resulting SNR is
    rho ||h||^2 with rho the transmit SNR.
    """
    h = s.channel
    norm2 = float(np.vdot(h, h).real)
    if norm2 == 0:
        raise DomainError("channel vector is zero")
    return BeamformerResult(h / norm2, s.tx_power * norm2 * s.main_link_gain, 2.0 / norm2)


def beam_secrecy(s: BeamScenario) -> SecrecyMetrics:
    """Secrecy of the MRC link against an eavesdropper that runs its own
    matched combiner on ``eve_channel`` (zero leakage when absent)."""
    snr_main = optimal_beamformer(s).snr
    if s.eve_channel is None:
        snr_eve = 0.0
    else:
        snr_eve = s.tx_power * float(np.vdot(s.eve_channel, s.eve_channel).real) * s.eve_link_gain
    return secrecy_metrics(snr_main, snr_eve, s.threshold)
