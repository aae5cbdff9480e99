"""Attenuation from artificial rain and artificial dust.

Rain specific attenuation follows the power law ``N_R = theta * R**eps``
(dB/km, R in mm/h). ``theta`` and ``eps`` come from a coefficient table
indexed by frequency, mixed between horizontal and vertical polarisation
for the path elevation ``alpha`` and polarisation tilt ``beta``. Total
attenuation is additive in dB over the scattering, absorption, refraction
and polarisation depths (rain) or scattering, absorption and
cross-polarisation depths (dust).

The shipped table ``data/rain_coefficients.csv`` was generated from the
Gaussian-sum curve fits in :data:`DEFAULT_CURVE_FITS` (the widely used
ITU-R P.838-3 constants) at integer GHz from 1 to 100. The power law is
usually quoted as valid for 1-6 GHz, 28-32 GHz and up to 64 GHz; any
frequency the loaded table covers is accepted here.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError
from .propagation import PropagationParams, received_power_shadowed

__all__ = [
    "CurveFit",
    "DEFAULT_CURVE_FITS",
    "RainCoefficientTable",
    "RainCondition",
    "DustCondition",
    "mix_polarization_theta",
    "mix_polarization_eps",
    "rain_specific_attenuation",
    "rain_total_attenuation",
    "dust_total_attenuation",
    "received_power_with_weather",
]

COEFFICIENT_HEADER = ["freq_ghz", "theta_h", "theta_v", "eps_h", "eps_v"]


@dataclass(frozen=True)
class CurveFit:
    """Gaussian-sum fit in log10(f):

        y = sum_i delta_i * exp(-((log10 f - zeta_i) / vartheta_i)**2) + a_k log10 f + b_k

    For theta the fit gives log10(theta); for eps it gives eps directly.
    """

    delta: tuple[float, ...]
    zeta: tuple[float, ...]
    vartheta: tuple[float, ...]
    a_k: float
    b_k: float
    log_output: bool = False

    def __call__(self, freq_ghz):
        lf = np.log10(np.asarray(freq_ghz, dtype=float))
        y = self.a_k * lf + self.b_k
        for d, z, v in zip(self.delta, self.zeta, self.vartheta):
            y = y + d * np.exp(-(((lf - z) / v) ** 2))
        return 10.0**y if self.log_output else y


DEFAULT_CURVE_FITS = {
    "theta_h": CurveFit(
        (-5.33980, -0.35351, -0.23789, -0.94158),
        (-0.10008, 1.26970, 0.86036, 0.64552),
        (1.13098, 0.45400, 0.15354, 0.16817),
        -0.18961, 0.71147, log_output=True,
    ),
    "theta_v": CurveFit(
        (-3.80595, -3.44965, -0.39902, 0.50167),
        (0.56934, -0.22911, 0.73042, 1.07319),
        (0.81061, 0.51059, 0.11899, 0.27195),
        -0.16398, 0.63297, log_output=True,
    ),
    "eps_h": CurveFit(
        (-0.14318, 0.29591, 0.32177, -5.37610, 16.1721),
        (1.82442, 0.77564, 0.63773, -0.96230, -3.29980),
        (-0.55187, 0.19822, 0.13164, 1.47828, 3.43990),
        0.67849, -1.95537,
    ),
    "eps_v": CurveFit(
        (-0.07771, 0.56727, -0.20238, -48.2991, 48.5833),
        (2.33840, 0.95545, 1.14520, 0.791669, 0.791459),
        (-0.76284, 0.54039, 0.26809, 0.116226, 0.116479),
        -0.053739, 0.83433,
    ),
}


@dataclass(frozen=True)
class RainCoefficientTable:
    freq_ghz: np.ndarray
    theta_h: np.ndarray
    theta_v: np.ndarray
    eps_h: np.ndarray
    eps_v: np.ndarray

    def __post_init__(self):
        cols = [np.asarray(getattr(self, k), dtype=float) for k in COEFFICIENT_HEADER]
        for k, c in zip(COEFFICIENT_HEADER, cols):
            object.__setattr__(self, k, c)
        n = len(cols[0])
        if n < 2 or any(len(c) != n for c in cols):
            raise ConfigError("coefficient table needs >= 2 rows of equal-length columns")
        if np.any(np.diff(self.freq_ghz) <= 0):
            raise ConfigError("coefficient table frequencies must be strictly increasing")
        if np.any(self.theta_h <= 0) or np.any(self.theta_v <= 0):
            raise ConfigError("theta coefficients must be > 0")

    @classmethod
    def from_csv(cls, path) -> "RainCoefficientTable":
        path = Path(path)
        with open(path, newline="") as fh:
            return cls._parse(csv.reader(fh), str(path))

    @classmethod
    def default(cls) -> "RainCoefficientTable":
        ref = resources.files("secrecysim") / "data" / "rain_coefficients.csv"
        with ref.open("r", newline="") as fh:
            return cls._parse(csv.reader(fh), "rain_coefficients.csv")

    @classmethod
    def _parse(cls, reader, name):
        rows = []
        header_seen = False
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if not header_seen:
                if [c.strip() for c in row] != COEFFICIENT_HEADER:
                    raise ConfigError(
                        f"expected header {','.join(COEFFICIENT_HEADER)}", f"{name}:{lineno}"
                    )
                header_seen = True
                continue
            if len(row) != len(COEFFICIENT_HEADER):
                raise ConfigError(
                    f"expected {len(COEFFICIENT_HEADER)} fields, got {len(row)}", f"{name}:{lineno}"
                )
            try:
                vals = [float(c) for c in row]
            except ValueError as exc:
                raise ConfigError(f"non-numeric field ({exc})", f"{name}:{lineno}") from None
            if rows and vals[0] <= rows[-1][1][0]:
                raise ConfigError("frequencies must be strictly increasing", f"{name}:{lineno}")
            if vals[1] <= 0 or vals[2] <= 0:
                raise ConfigError("theta coefficients must be > 0", f"{name}:{lineno}")
            rows.append((lineno, vals))
        if not header_seen:
            raise ConfigError("empty coefficient file", name)
        data = np.array([v for _, v in rows], dtype=float).reshape(-1, 5)
        return cls(*data.T)

    @classmethod
    def from_curve_fits(cls, freqs_ghz, fits=None) -> "RainCoefficientTable":
        fits = fits or DEFAULT_CURVE_FITS
        f = np.asarray(freqs_ghz, dtype=float)
        return cls(f, *(fits[k](f) for k in COEFFICIENT_HEADER[1:]))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(COEFFICIENT_HEADER)
            for row in zip(*(getattr(self, k) for k in COEFFICIENT_HEADER)):
                w.writerow([repr(float(v)) for v in row])

    def coefficients(self, frequency_ghz: float) -> tuple[float, float, float, float]:
        """(theta_h, theta_v, eps_h, eps_v) at ``frequency_ghz``.

        Interpolation is linear in log10(f); theta is interpolated in
        log10(theta) since the fit is built that way.
        """
        f = float(frequency_ghz)
        lo, hi = self.freq_ghz[0], self.freq_ghz[-1]
        if not lo <= f <= hi:
            raise DomainError(f"frequency {f} GHz outside coefficient table range [{lo}, {hi}] GHz")
        lf = math.log10(f)
        lx = np.log10(self.freq_ghz)
        th = 10.0 ** np.interp(lf, lx, np.log10(self.theta_h))
        tv = 10.0 ** np.interp(lf, lx, np.log10(self.theta_v))
        eh = np.interp(lf, lx, self.eps_h)
        ev = np.interp(lf, lx, self.eps_v)
        return float(th), float(tv), float(eh), float(ev)


def _nonneg(name, v):
    if v < 0:
        raise DomainError(f"{name} must be >= 0, got {v}")


@dataclass(frozen=True)
class RainCondition:
    """Rain rate (mm/h), path geometry (degrees) and depths (km)."""

    rate_mm_h: float = 0.0
    elevation_deg: float = 0.0
    tilt_deg: float = 0.0
    d_sc: float = 0.0
    d_ab: float = 0.0
    d_ref: float = 0.0
    d_pol: float = 0.0

    def __post_init__(self):
        _nonneg("rain rate", self.rate_mm_h)
        for k in ("d_sc", "d_ab", "d_ref", "d_pol"):
            _nonneg(k, getattr(self, k))

    @property
    def total_depth(self) -> float:
        return self.d_sc + self.d_ab + self.d_ref + self.d_pol


@dataclass(frozen=True)
class DustCondition:
    attenuation_db_per_km: float = 0.0
    d_sc: float = 0.0
    d_ab: float = 0.0
    d_cp: float = 0.0

    def __post_init__(self):
        _nonneg("dust attenuation constant", self.attenuation_db_per_km)
        for k in ("d_sc", "d_ab", "d_cp"):
            _nonneg(k, getattr(self, k))

    @property
    def total_depth(self) -> float:
        return self.d_sc + self.d_ab + self.d_cp


def _geometry(elevation_deg, tilt_deg):
    a = math.radians(elevation_deg)
    b = math.radians(tilt_deg)
    return math.cos(a) ** 2 * math.cos(2.0 * b)


def mix_polarization_theta(theta_h, theta_v, elevation_deg, tilt_deg) -> float:
    g = _geometry(elevation_deg, tilt_deg)
    return (theta_h + theta_v + (theta_h - theta_v) * g) / 2.0


def mix_polarization_eps(theta_h, theta_v, eps_h, eps_v, elevation_deg, tilt_deg) -> float:
    """Theta-weighted exponent mix matching :func:`mix_polarization_theta`."""
    g = _geometry(elevation_deg, tilt_deg)
    theta = mix_polarization_theta(theta_h, theta_v, elevation_deg, tilt_deg)
    th_eh, tv_ev = theta_h * eps_h, theta_v * eps_v
    return (th_eh + tv_ev + (th_eh - tv_ev) * g) / (2.0 * theta)


def rain_specific_attenuation(table: RainCoefficientTable, frequency_ghz, cond: RainCondition) -> float:
    """N_R in dB/km."""
    th, tv, eh, ev = table.coefficients(frequency_ghz)
    if cond.rate_mm_h == 0:
        return 0.0
    theta = mix_polarization_theta(th, tv, cond.elevation_deg, cond.tilt_deg)
    eps = mix_polarization_eps(th, tv, eh, ev, cond.elevation_deg, cond.tilt_deg)
    return theta * cond.rate_mm_h**eps


def rain_total_attenuation(cond: RainCondition, n_r: float) -> float:
    _nonneg("specific attenuation", n_r)
    return n_r * cond.d_sc + n_r * cond.d_ab + n_r * cond.d_ref + n_r * cond.d_pol


def dust_total_attenuation(cond: DustCondition) -> float:
    v = cond.attenuation_db_per_km
    return v * cond.d_sc + v * cond.d_ab + v * cond.d_cp


def received_power_with_weather(pt_dbm, prop: PropagationParams, distance, shadow, weather_db) -> float:
    _nonneg("weather attenuation", weather_db)
    return received_power_shadowed(pt_dbm, prop, distance, shadow) - weather_db
