"""Free-space and log-distance path loss with log-normal shadowing.

All functions work in dB / dBm. The log-distance model is

    Pr(dBm) = Pt(dBm) + q(dB) - 10 * psi * log10(r / r0) - phi(dB)

so received power falls with distance. ``q`` defaults to
``20 log10(lambda / r0)``; :func:`free_space_reference_gain_db` gives the
value that makes the model coincide with Friis at ``psi = 2``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .units import RandomStream

SPEED_OF_LIGHT = 299_792_458.0
# 10 / ln(10): converts natural-log moments of a log-normal to dB
DB_PER_NEPER = 10.0 / math.log(10.0)

# Path loss exponent ranges per deployment class.
PRESET_TABLE_VERSION = "1"
PATH_LOSS_EXPONENT_RANGES: dict[str, tuple[float, float]] = {
    "urban_macrocell": (3.7, 6.5),
    "building_same_floor": (1.6, 3.5),
    "urban_microcell": (2.7, 3.5),
    "building_multiple_floors": (2.0, 6.0),
    "home": (3.0, 3.0),
    "store": (1.8, 2.2),
    "factory": (1.6, 3.3),
}


def exponent_range(scenario_class: str) -> tuple[float, float]:
    try:
        return PATH_LOSS_EXPONENT_RANGES[scenario_class]
    except KeyError:
        raise ConfigError(
            f"unknown scenario class {scenario_class!r}; "
            f"known: {', '.join(PATH_LOSS_EXPONENT_RANGES)}"
        ) from None


def validate_exponent(scenario_class: str, psi: float) -> None:
    lo, hi = exponent_range(scenario_class)
    if not lo <= psi <= hi:
        raise ConfigError(
            f"path_loss_exponent {psi} outside preset range [{lo}, {hi}] "
            f"for scenario class {scenario_class!r} (preset table v{PRESET_TABLE_VERSION})"
        )


def export_presets_csv(path) -> None:
    """Write the exponent presets as ``scenario,psi_min,psi_max`` to a path
    or an open text file."""
    if hasattr(path, "write"):
        _write_presets(path)
        return
    with open(path, "w", newline="") as fh:
        _write_presets(fh)


def _write_presets(fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["scenario", "psi_min", "psi_max"])
    for name, (lo, hi) in PATH_LOSS_EXPONENT_RANGES.items():
        w.writerow([name, repr(lo), repr(hi)])


def reference_gain_db(wavelength: float, reference_distance: float) -> float:
    """Average-attenuation constant q(dB) = 20 log10(lambda / r0)."""
    return 20.0 * math.log10(wavelength / reference_distance)


def free_space_reference_gain_db(wavelength, reference_distance, antenna_gain_product=1.0):
    """Friis path gain at ``r0``: 10 log10(A_t lambda^2 / (4 pi r0)^2)."""
    return 10.0 * math.log10(
        antenna_gain_product * wavelength**2 / (4.0 * math.pi * reference_distance) ** 2
    )


@dataclass(frozen=True)
class PropagationParams:
    frequency_hz: float
    antenna_gain_product: float = 1.0
    reference_distance: float = 1.0
    path_loss_exponent: float = 2.0
    q_db: float | None = None
    shadow_mean_db: float = 0.0
    shadow_std_db: float = 0.0
    scenario_class: str | None = None

    def __post_init__(self):
        if self.frequency_hz <= 0:
            raise DomainError(f"frequency must be > 0, got {self.frequency_hz}")
        if self.antenna_gain_product <= 0:
            raise DomainError("antenna_gain_product must be > 0")
        if self.reference_distance <= 0:
            raise DomainError("reference_distance must be > 0")
        if self.path_loss_exponent <= 0:
            raise DomainError("path_loss_exponent must be > 0")
        if self.shadow_std_db < 0:
            raise DomainError("shadow_std_db must be >= 0")
        if self.scenario_class is not None:
            validate_exponent(self.scenario_class, self.path_loss_exponent)
        if self.q_db is None:
            object.__setattr__(
                self, "q_db", reference_gain_db(self.wavelength, self.reference_distance)
            )

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency_hz


@dataclass(frozen=True)
class ShadowSample:
    phi_db: float | np.ndarray
    stream: RandomStream | None = field(default=None, compare=False)


def free_space_path_loss(params: PropagationParams, distance: float) -> float:
    """Friis loss in dB; the path gain is its negation."""
    if distance <= 0:
        raise DomainError(f"distance must be > 0, got {distance}")
    lam = params.wavelength
    return -10.0 * math.log10(
        params.antenna_gain_product * lam**2 / (4.0 * math.pi * distance) ** 2
    )


def free_space_path_gain(params: PropagationParams, distance: float) -> float:
    return -free_space_path_loss(params, distance)


def log_distance_received_power(pt_dbm: float, params: PropagationParams, distance: float) -> float:
    if distance < params.reference_distance:
        raise DomainError(
            f"distance {distance} m is inside the reference distance "
            f"{params.reference_distance} m; log-distance model undefined there"
        )
    return (
        pt_dbm
        + params.q_db
        - 10.0 * params.path_loss_exponent * math.log10(distance / params.reference_distance)
    )


def draw_shadowing(params: PropagationParams, stream: RandomStream, size=None) -> ShadowSample:
    """Shadowing loss in dB, Normal(mu, sigma^2). With ``size`` an array of
    independent draws is returned in ``phi_db``."""
    if params.shadow_std_db == 0:
        phi = params.shadow_mean_db if size is None else np.full(size, params.shadow_mean_db)
        return ShadowSample(phi, stream)
    rng = stream.generator()
    phi = rng.normal(params.shadow_mean_db, params.shadow_std_db, size)
    return ShadowSample(float(phi) if size is None else phi, stream)


def shadowing_linear_mean(params: PropagationParams) -> float:
    """E[phi] = exp(mu / Delta + sigma^2 / (2 Delta^2)) with Delta = 10 / ln 10."""
    d = DB_PER_NEPER
    return math.exp(params.shadow_mean_db / d + params.shadow_std_db**2 / (2.0 * d * d))


def shadowing_linear_mean_db(params: PropagationParams) -> float:
    """10 log10 E[phi] = mu + sigma^2 / (2 Delta).

    Note the single Delta: sigma^2 / (2 Delta^2) is the same quantity in
    nepers (ln E[phi] with mu = 0), about 1.697 at sigma = 8 dB, whereas
    the dB value is about 7.37.
    """
    return params.shadow_mean_db + params.shadow_std_db**2 / (2.0 * DB_PER_NEPER)


def _phi(shadow) -> float:
    return shadow.phi_db if isinstance(shadow, ShadowSample) else float(shadow)


def received_power_shadowed(pt_dbm, params: PropagationParams, distance, shadow) -> float:
    return log_distance_received_power(pt_dbm, params, distance) - _phi(shadow)
