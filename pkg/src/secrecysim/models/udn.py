"""Ultra-dense network secrecy by stochastic geometry.

Base stations, users and eavesdroppers are independent homogeneous PPPs.
Each trial places the typical user at the origin and serves it from the
nearest BS at distance ``a``; the nearest eavesdropper to that BS sits at
distance ``b``. Rates are in nats (natural log):

    S_m  = ln(1 + P h_s a^-gamma / (s2 + F_s))
    S_ev = ln(1 + P h_ev b^-gamma / (s2 + F_ev))

F_s and F_ev sum P h |x - c|^-gamma over the other *active* BSs c, each BS
being active independently with ``activity_probability``. Averages over
trials estimate S_m-bar and S_ev-bar; the average secrecy rate is their
difference clamped at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, EstimationError
from ..simkit import FadingDescriptor, McEstimate, Window, draw_power, sample_ppp
from ..units import RandomStream


@dataclass(frozen=True)
class UdnField:
    bs_density: float
    user_density: float
    eve_density: float
    tx_power: float = 1.0
    path_loss_exponent: float = 4.0
    noise_var: float = 1e-9
    main_fading: FadingDescriptor = field(default_factory=lambda: FadingDescriptor.rician(10.0))
    eve_fading: FadingDescriptor = field(default_factory=lambda: FadingDescriptor.rician(10.0))
    window_side: float = 2000.0
    activity_probability: float = 1.0
    main_link_gain: float = 1.0
    eve_link_gain: float = 1.0

    def __post_init__(self):
        for k in ("bs_density", "user_density", "eve_density"):
            if getattr(self, k) < 0:
                raise DomainError(f"{k} must be >= 0")
        if self.eve_density >= self.user_density and self.eve_density > 0:
            raise DomainError("eavesdropper density must be below user density")
        if self.path_loss_exponent <= 0 or self.noise_var <= 0 or self.window_side <= 0:
            raise DomainError("path_loss_exponent, noise_var and window_side must be > 0")
        if not 0.0 <= self.activity_probability <= 1.0:
            raise DomainError("activity_probability must be in [0, 1]")

    @property
    def window(self) -> Window:
        return Window.centered(self.window_side)


@dataclass
class UdnEstimate:
    main: McEstimate
    eve: McEstimate
    secrecy: float
    secrecy_stderr: float
    eve_distances: np.ndarray
    empty_trials: int


def _rate(p, h, dist, gamma, noise, interference):
    return float(np.log1p(p * h * dist ** (-gamma) / (noise + interference)))


def _interference(f, fading, rng, points, at):
    if len(points) == 0:
        return 0.0
    d = np.hypot(points[:, 0] - at[0], points[:, 1] - at[1])
    h = draw_power(fading, rng, len(points))
    return float(np.sum(f.tx_power * h * d ** (-f.path_loss_exponent)))


def _trial(f: UdnField, rng: np.random.Generator):
    bs = sample_ppp(f.bs_density, f.window, rng).points
    if len(bs) == 0:
        return None
    d = np.hypot(bs[:, 0], bs[:, 1])
    k = int(np.argmin(d))
    serving = bs[k]
    others = np.delete(bs, k, axis=0)
    others = others[rng.random(len(others)) < f.activity_probability]

    h_s = draw_power(f.main_fading, rng)
    f_s = _interference(f, f.main_fading, rng, others, (0.0, 0.0))
    s_m = _rate(f.tx_power * f.main_link_gain, h_s, d[k], f.path_loss_exponent, f.noise_var, f_s)

    if f.eve_density == 0:
        return s_m, 0.0, np.nan
    eves = sample_ppp(f.eve_density, Window.centered(f.window_side, serving), rng).points
    if len(eves) == 0:
        return s_m, 0.0, np.nan
    de = np.hypot(eves[:, 0] - serving[0], eves[:, 1] - serving[1])
    j = int(np.argmin(de))
    b = float(de[j])
    h_ev = draw_power(f.eve_fading, rng)
    f_ev = _interference(f, f.eve_fading, rng, others, eves[j])
    s_ev = _rate(f.tx_power * f.eve_link_gain, h_ev, b, f.path_loss_exponent, f.noise_var, f_ev)
    return s_m, s_ev, b


def udn_average_secrecy(f: UdnField, stream: RandomStream, trials: int) -> UdnEstimate:
    """Monte Carlo averages of the main and leakage rates over ``trials``
    independent network snapshots (trials with no BS in the window are
    dropped and counted in ``empty_trials``)."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    s_m, s_ev, dist = [], [], []
    empty = 0
    for i in range(trials):
        out = _trial(f, stream.substream(i).generator())
        if out is None:
            empty += 1
            continue
        s_m.append(out[0])
        s_ev.append(out[1])
        dist.append(out[2])
    if not s_m:
        raise EstimationError(f"no base station fell in the window in any of {trials} trials")
    main = McEstimate.from_values(s_m)
    eve = McEstimate.from_values(s_ev)
    diff = McEstimate.from_values(np.asarray(s_m) - np.asarray(s_ev))
    dist = np.asarray(dist)
    return UdnEstimate(main, eve, max(diff.mean, 0.0), diff.stderr, dist[~np.isnan(dist)], empty)
