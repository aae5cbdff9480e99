"""Relay-assisted D2D link with a passive eavesdropper M.

Symbol binding (superscript = receiver, subscript = transmitter):

    h_c_bs  cellular user -> BS        h_c_2  cellular user -> D2
    h_1_bs  D1 -> BS                   h_c_m  cellular user -> M
    h_2_bs  relay (second hop) -> BS   h_1_dr D1 -> relay Dr
    h_1_2   relay -> D2                h_1_m  relay -> M

The phase-two SINRs are evaluated with the grouping

    N_BS = o_c|h_c_bs|^2 / ( o_Dr|h_2_bs|^2
                             + ( l (o_1|h_1_bs|^2 + o_c|h_c_bs|^2 + s2) + (1 - l) )
                             + s2 )
    N_2  = o_Dr|h_c_2|^2 (l o_1|h_1_dr|^2 + (1 - l))
           / ( o_c|h_c_2|^2 + l o_Dr|h_1_2|^2 (s2 + o_c|h_c_2|^2) + s2 )
    N_M  = same as N_2 with h_c_2 -> h_c_m and h_1_2 -> h_1_m
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from ..secrecy import SecrecyMetrics, secrecy_metrics


@dataclass(frozen=True)
class D2dScenario:
    o_c: float = 1.0
    o_1: float = 1.0
    o_dr: float = 1.0
    cooperation: float = 0.5
    noise_var: float = 1.0
    h_c_bs: complex = 1.0
    h_1_bs: complex = 1.0
    h_2_bs: complex = 1.0
    h_c_2: complex = 1.0
    h_1_dr: complex = 1.0
    h_1_2: complex = 1.0
    h_c_m: complex = 1.0
    h_1_m: complex = 1.0
    # per-channel rate inputs: D2D link power and normalised gains
    d2d_power: float = 1.0
    g_main: float = 1.0
    g_main_cross: float = 0.0
    g_eve: float = 0.0
    g_eve_cross: float = 0.0
    reused_channels: int = 1
    total_channels: int = 2
    threshold: float = 0.0
    main_link_gain: float = 1.0
    eve_link_gain: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.cooperation <= 1.0:
            raise DomainError(f"cooperation level must be in [0, 1], got {self.cooperation}")
        for k in ("o_c", "o_1", "o_dr", "d2d_power", "g_main", "g_main_cross", "g_eve", "g_eve_cross",
                  "main_link_gain", "eve_link_gain"):
            if getattr(self, k) < 0:
                raise DomainError(f"{k} must be >= 0")
        if self.noise_var <= 0:
            raise DomainError("noise_var must be > 0")
        if not 1 <= self.reused_channels < self.total_channels:
            raise DomainError("reused channel count c must satisfy 1 <= c < n")


def normalized_gain(h: complex, noise_var: float) -> float:
    if noise_var <= 0:
        raise DomainError("noise_var must be > 0")
    return abs(h) ** 2 / noise_var


def _div(num, den):
    if den <= 0:
        raise DomainError("SINR denominator must be > 0")
    return num / den


def phase_one_sinr(o_c, h_c, o_1, h_1, noise_var) -> float:
    """Cellular-user SINR at a phase-one receiver (BS, relay or M)."""
    return _div(o_c * abs(h_c) ** 2, o_1 * abs(h_1) ** 2 + noise_var)


def phase_two_sinrs(s: D2dScenario) -> tuple[float, float, float]:
    """(N_BS, N_2, N_M); see the module docstring for the grouping."""
    l, s2 = s.cooperation, s.noise_var
    g = lambda h: abs(h) ** 2  # noqa: E731
    n_bs = _div(
        s.o_c * g(s.h_c_bs),
        s.o_dr * g(s.h_2_bs) + (l * (s.o_1 * g(s.h_1_bs) + s.o_c * g(s.h_c_bs) + s2) + (1 - l)) + s2,
    )
    relay_term = l * s.o_1 * g(s.h_1_dr) + (1 - l)
    n_2 = _div(
        s.o_dr * g(s.h_c_2) * relay_term,
        s.o_c * g(s.h_c_2) + l * s.o_dr * g(s.h_1_2) * (s2 + s.o_c * g(s.h_c_2)) + s2,
    )
    n_m = _div(
        s.o_dr * g(s.h_c_m) * relay_term,
        s.o_c * g(s.h_c_m) + l * s.o_dr * g(s.h_1_m) * (s2 + s.o_c * g(s.h_c_m)) + s2,
    )
    return n_bs, n_2, n_m


def _effective(power, gain, cellular_power, cross_gain):
    return power * gain / (1.0 + cellular_power * cross_gain)


def channel_rate(s: D2dScenario) -> float:
    """D_c: rate of the D2D link on one reused channel."""
    return math.log2(1.0 + _effective(s.d2d_power, s.g_main * s.main_link_gain, s.o_c, s.g_main_cross))


def d2d_secrecy(s: D2dScenario) -> SecrecyMetrics:
    """Per-channel secrecy rate D_{c,M} from the normalised gains."""
    main = _effective(s.d2d_power, s.g_main * s.main_link_gain, s.o_c, s.g_main_cross)
    eve = _effective(s.d2d_power, s.g_eve * s.eve_link_gain, s.o_c, s.g_eve_cross)
    return secrecy_metrics(main, eve, s.threshold)
