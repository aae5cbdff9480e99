"""Technology-independent secrecy arithmetic.

SINR, Shannon capacity (bits/s/Hz), clamped secrecy rate, the strict
threshold test, and the secrecy outage probability (SOP) with a Monte Carlo
estimator and a one-dimensional quadrature cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np
from scipy import integrate

from .errors import ConfigError, DomainError
from .simkit import FadingDescriptor, McEstimate, draw_power, fading_power_cdf, mc_run_batched
from .units import RandomStream

__all__ = [
    "SinrInputs",
    "SecrecyMetrics",
    "SopInputs",
    "sinr",
    "capacity",
    "secrecy_rate",
    "secrecy_check",
    "secrecy_metrics",
    "secrecy_outage_probability",
    "sop_quadrature",
    "sop_decomposition",
]

SinrSampler = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True)
class SinrInputs:
    signal_power: float
    noise_power: float
    interference_power: float = 0.0
    coupling_power: float = 0.0

    def __post_init__(self):
        for k in ("signal_power", "noise_power", "interference_power", "coupling_power"):
            if getattr(self, k) < 0:
                raise DomainError(f"{k} must be >= 0, got {getattr(self, k)}")


def sinr(inputs: SinrInputs) -> float:
    den = inputs.noise_power + inputs.interference_power + inputs.coupling_power
    if den <= 0:
        raise DomainError("SINR denominator (noise + interference + coupling) must be > 0")
    return inputs.signal_power / den


def capacity(sinr_value):
    """log2(1 + SINR) in bits/s/Hz."""
    s = np.asarray(sinr_value, dtype=float)
    if np.any(s < 0):
        raise DomainError("SINR must be >= 0")
    out = np.log2(1.0 + s)
    return float(out) if out.ndim == 0 else out


def secrecy_rate(c_main, c_eve):
    out = np.maximum(np.asarray(c_main, dtype=float) - np.asarray(c_eve, dtype=float), 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SecrecyMetrics:
    sinr_main: float
    sinr_eve: float
    capacity_main: float
    capacity_eve: float
    secrecy_rate: float
    threshold: float = 0.0
    secure: bool = field(init=False, default=False)

    def __post_init__(self):
        if self.secrecy_rate < 0 or self.threshold < 0:
            raise DomainError("secrecy rate and threshold must be >= 0")
        object.__setattr__(self, "secure", secrecy_check(self))

    def with_threshold(self, threshold: float) -> "SecrecyMetrics":
        return replace(self, threshold=threshold)


def secrecy_check(metrics: SecrecyMetrics) -> bool:
    # Ties are insecure.
    return metrics.secrecy_rate > metrics.threshold


def secrecy_metrics(sinr_main: float, sinr_eve: float, threshold: float = 0.0, scale: float = 1.0) -> SecrecyMetrics:
    """Assemble metrics from two SINRs. ``scale`` multiplies both capacities
    (e.g. 1/2 for two-slot relaying)."""
    c_m = scale * capacity(sinr_main)
    c_e = scale * capacity(sinr_eve)
    return SecrecyMetrics(sinr_main, sinr_eve, c_m, c_e, secrecy_rate(c_m, c_e), threshold)


@dataclass(frozen=True)
class SopInputs:
    """What the SOP estimators need.

    ``main_sinr`` and ``eve_sinr`` are either a :class:`FadingDescriptor`
    (the SINR is then |h|^2 with the descriptor's mean) or a sampler
    ``f(rng, n) -> array`` for composite SINRs.
    """

    target_rate: float
    main_sinr: Union[FadingDescriptor, SinrSampler]
    eve_sinr: Union[FadingDescriptor, SinrSampler]
    bound_threshold: float | None = None

    def __post_init__(self):
        if self.target_rate < 0:
            raise DomainError(f"target rate must be >= 0, got {self.target_rate}")


def _sampler(law) -> SinrSampler:
    if isinstance(law, FadingDescriptor):
        return lambda rng, n: np.broadcast_to(draw_power(law, rng, n), (n,))
    if callable(law):
        return law
    raise ConfigError(f"unsupported SINR distribution descriptor {law!r}")


def _outage_indicators(inputs: SopInputs) -> Callable[[np.random.Generator, int], np.ndarray]:
    main = _sampler(inputs.main_sinr)
    eve = _sampler(inputs.eve_sinr)

    def batch(rng, n):
        rp = main(rng, n)
        re = eve(rng, n)
        cs = np.maximum(np.log2(1.0 + rp) - np.log2(1.0 + re), 0.0)
        return (cs < inputs.target_rate).astype(float)

    return batch


def secrecy_outage_probability(inputs: SopInputs, stream: RandomStream, trials: int, block_size: int = 8192) -> McEstimate:
    """Monte Carlo estimate of Pr[C_s < C_r] with its standard error."""
    return mc_run_batched(_outage_indicators(inputs), trials, stream, block_size)


def sop_decomposition(inputs: SopInputs, stream: RandomStream, trials: int) -> dict:
    """Empirical pieces of Pr(out | rp > re) Pr(rp > re) + Pr(rp < re),
    drawn from the same samples the plain estimator would use for one block."""
    rng = stream.substream(0).generator()
    rp = _sampler(inputs.main_sinr)(rng, trials)
    re = _sampler(inputs.eve_sinr)(rng, trials)
    cs = np.maximum(np.log2(1.0 + rp) - np.log2(1.0 + re), 0.0)
    out = cs < inputs.target_rate
    better = rp > re
    p_better = better.mean()
    p_out_given = out[better].mean() if better.any() else 0.0
    return {
        "direct": float(out.mean()),
        "p_main_better": float(p_better),
        "p_out_given_better": float(p_out_given),
        "p_main_worse": float((rp < re).mean()),
        "p_tie": float((rp == re).mean()),
    }


def _omega(target_rate, r):
    return 2.0**target_rate * (1.0 + r) - 1.0


def sop_quadrature(inputs: SopInputs) -> float:
    """Pr[C_s < C_r] = int_0^inf F_main(2^Cr (1+R) - 1) f_eve(R) dR.

    ``F_main`` is the CDF of the main-link SINR. A deterministic eavesdropper
    collapses the integral to one CDF evaluation. When ``bound_threshold`` is
    set the integral is split at the R where omega_R equals it; the two
    pieces add to the same total.
    """
    main, eve = inputs.main_sinr, inputs.eve_sinr
    if not isinstance(main, FadingDescriptor) or not isinstance(eve, FadingDescriptor):
        raise ConfigError("quadrature needs FadingDescriptor SINR laws on both links")
    cr = inputs.target_rate
    if cr == 0:
        # the clamped secrecy capacity is never below zero
        return 0.0

    if eve.kind == "deterministic":
        w = _omega(cr, eve.mean_power)
        # C_s < C_r  <=>  rp < omega; CDF gives rp <= omega, equal for continuous laws
        if main.kind == "deterministic":
            # compare capacities directly; omega loses the tiny-C_r case to rounding
            cs = secrecy_rate(capacity(main.mean_power), capacity(eve.mean_power))
            return 1.0 if cs < cr else 0.0
        return float(fading_power_cdf(main, w))
    if eve.kind != "rayleigh" and not (eve.kind == "rician" and eve.k_factor == 0):
        raise ConfigError("quadrature supports deterministic or Rayleigh eavesdropper SINR")

    mean_e = eve.mean_power

    def integrand(r):
        return float(fading_power_cdf(main, _omega(cr, r))) * math.exp(-r / mean_e) / mean_e

    split = None
    if inputs.bound_threshold is not None:
        t = (inputs.bound_threshold + 1.0) * 2.0 ** (-cr) - 1.0
        if t >= 0:
            split = t
    if split is None:
        val, _ = integrate.quad(integrand, 0.0, np.inf, limit=200, epsabs=1e-12, epsrel=1e-10)
        return float(val)
    lo, _ = integrate.quad(integrand, 0.0, split, limit=200, epsabs=1e-12, epsrel=1e-10)
    hi, _ = integrate.quad(integrand, split, np.inf, limit=200, epsabs=1e-12, epsrel=1e-10)
    return float(lo + hi)
