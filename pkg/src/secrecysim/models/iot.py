"""Multi-user IoT downlink with co-channel interference; secrecy outage."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..secrecy import SopInputs, secrecy_outage_probability
from ..simkit import FadingDescriptor, McEstimate, draw_power
from ..units import RandomStream


@dataclass(frozen=True)
class IotScenario:
    """``alpha_m`` is the per-user transmit SNR c_m / N_0; each interferer
    has power ``eta * c_m``. With ``antennas > 1`` the transmitter picks
    the antenna with the strongest main-link gain and the eavesdropper
    observes that same antenna."""

    alpha_m: float = 10.0
    eta: float = 0.1
    interferers_main: int = 0
    interferers_eve: int = 0
    antennas: int = 1
    users: int = 1
    user_pool: int = 1
    target_rate: float = 0.5
    bound_threshold: float | None = None
    main_fading: FadingDescriptor = field(default_factory=FadingDescriptor.rayleigh)
    eve_fading: FadingDescriptor = field(default_factory=FadingDescriptor.rayleigh)
    interferer_fading: FadingDescriptor = field(default_factory=FadingDescriptor.rayleigh)
    main_link_gain: float = 1.0
    eve_link_gain: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"eta must be in [0, 1], got {self.eta}")
        if self.alpha_m < 0:
            raise DomainError("alpha_m must be >= 0")
        if self.interferers_main < 0 or self.interferers_eve < 0:
            raise DomainError("interferer counts must be >= 0")
        if self.antennas < 1 or not 1 <= self.users <= self.user_pool:
            raise DomainError("need antennas >= 1 and 1 <= users <= user_pool")
        if self.target_rate < 0:
            raise DomainError("target_rate must be >= 0")


def received_sinr(alpha_m, gain, interferer_gains, eta) -> np.ndarray:
    """Q = alpha_m |h|^2 / (sum_i eta alpha_m |h_i|^2 + 1); ``interferer_gains``
    has shape (n, I)."""
    interference = eta * alpha_m * np.asarray(interferer_gains).sum(axis=-1)
    return alpha_m * np.asarray(gain) / (interference + 1.0)


def _samplers(s: IotScenario):
    # main and eve must see the same selected antenna, so both SINRs are
    # produced in one pass and the eve sampler replays the cached result
    cache = {}

    def main(rng, n):
        g_main = draw_power(s.main_fading, rng, (n, s.antennas))
        g_eve = draw_power(s.eve_fading, rng, (n, s.antennas))
        pick = np.argmax(g_main, axis=1)
        rows = np.arange(n)
        i_p = draw_power(s.interferer_fading, rng, (n, s.interferers_main))
        i_e = draw_power(s.interferer_fading, rng, (n, s.interferers_eve))
        q_p = received_sinr(s.alpha_m, g_main[rows, pick] * s.main_link_gain, i_p, s.eta)
        q_e = received_sinr(s.alpha_m, g_eve[rows, pick] * s.eve_link_gain, i_e, s.eta)
        cache["eve"] = q_e
        return q_p

    def eve(rng, n):
        return cache.pop("eve")

    return main, eve


def iot_sop(s: IotScenario, stream: RandomStream, trials: int) -> McEstimate:
    main, eve = _samplers(s)
    return secrecy_outage_probability(SopInputs(s.target_rate, main, eve, s.bound_threshold), stream, trials)
