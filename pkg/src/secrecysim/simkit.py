"""Stochastic building blocks: fading draws, planar Poisson point processes
and a seeded Monte Carlo runner with mergeable estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .units import RandomStream

__all__ = [
    "FadingDescriptor",
    "draw_fading",
    "draw_power",
    "fading_power_cdf",
    "Window",
    "PointField",
    "sample_ppp",
    "nearest_distance",
    "McEstimate",
    "mc_run",
    "mc_run_batched",
]

_KINDS = ("rayleigh", "rician", "deterministic")


@dataclass(frozen=True)
class FadingDescriptor:
    """Small-scale fading law of a complex channel gain ``h``.

    ``mean_power`` is E|h|^2. For ``rician`` the line-of-sight to scattered
    power ratio is ``k_factor`` with total mean power held fixed. For
    ``deterministic`` the gain is ``value`` every draw.
    """

    kind: str = "rayleigh"
    mean_power: float = 1.0
    k_factor: float = 0.0
    value: complex = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown fading kind {self.kind!r}; expected one of {_KINDS}")
        if self.k_factor < 0:
            raise DomainError(f"Rician K factor must be >= 0, got {self.k_factor}")
        if self.kind != "deterministic" and self.mean_power < 0:
            raise DomainError(f"mean_power must be >= 0, got {self.mean_power}")
        if self.kind == "deterministic":
            object.__setattr__(self, "mean_power", abs(complex(self.value)) ** 2)

    @classmethod
    def rayleigh(cls, mean_power=1.0):
        return cls("rayleigh", mean_power)

    @classmethod
    def rician(cls, k_factor, mean_power=1.0):
        return cls("rician", mean_power, k_factor)

    @classmethod
    def deterministic(cls, value=1.0):
        return cls("deterministic", value=value)


def _draw(d: FadingDescriptor, rng: np.random.Generator, size):
    if d.kind == "deterministic":
        return np.full(size if size is not None else (), complex(d.value), dtype=complex)
    if d.kind == "rayleigh":
        los, scatter = 0.0, d.mean_power
    else:
        los = d.k_factor / (d.k_factor + 1.0) * d.mean_power
        scatter = d.mean_power / (d.k_factor + 1.0)
    s = math.sqrt(scatter / 2.0)
    re = rng.normal(0.0, s, size)
    im = rng.normal(0.0, s, size)
    return math.sqrt(los) + re + 1j * im


def draw_fading(d: FadingDescriptor, stream: RandomStream | np.random.Generator, size=None):
    """Complex gain(s) for descriptor ``d``.

    ``stream`` may be a :class:`RandomStream` (a fresh generator is made from
    it) or an already-running numpy ``Generator``.
    """
    rng = stream.generator() if isinstance(stream, RandomStream) else stream
    out = _draw(d, rng, size)
    return complex(out) if size is None else out


def draw_power(d: FadingDescriptor, rng: np.random.Generator, size=None):
    """|h|^2 draws, the quantity that enters every SINR."""
    if d.kind == "rayleigh":
        out = rng.exponential(d.mean_power, size)
        return float(out) if size is None else out
    h = _draw(d, rng, size)
    out = np.abs(h) ** 2
    return float(out) if size is None else out


def fading_power_cdf(d: FadingDescriptor, x):
    """CDF of |h|^2 under descriptor ``d``, evaluated at ``x``."""
    x = np.asarray(x, dtype=float)
    if d.kind == "deterministic":
        return np.where(x >= d.mean_power, 1.0, 0.0)
    if d.mean_power == 0:
        return np.where(x >= 0, 1.0, 0.0)
    if d.kind == "rayleigh" or d.k_factor == 0:
        return np.where(x > 0, -np.expm1(-np.clip(x, 0, None) / d.mean_power), 0.0)
    from scipy.stats import ncx2

    scale = d.mean_power / (2.0 * (d.k_factor + 1.0))
    return ncx2.cdf(np.clip(x, 0, None) / scale, df=2, nc=2.0 * d.k_factor)


@dataclass(frozen=True)
class Window:
    """Axis-aligned rectangle in metres."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise DomainError("window must have positive area")

    @classmethod
    def centered(cls, side, center=(0.0, 0.0)):
        h = side / 2.0
        return cls(center[0] - h, center[0] + h, center[1] - h, center[1] + h)

    @property
    def area(self):
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)


@dataclass
class PointField:
    window: Window
    points: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))

    def __len__(self):
        return len(self.points)


def sample_ppp(density: float, window: Window, stream: RandomStream | np.random.Generator) -> PointField:
    """Homogeneous PPP on ``window``: Poisson count, then uniform placement."""
    if density < 0:
        raise DomainError(f"density must be >= 0, got {density}")
    rng = stream.generator() if isinstance(stream, RandomStream) else stream
    n = rng.poisson(density * window.area) if density > 0 else 0
    xs = rng.uniform(window.x_min, window.x_max, n)
    ys = rng.uniform(window.y_min, window.y_max, n)
    return PointField(window, np.column_stack([xs, ys]))


def nearest_distance(field: PointField, origin=(0.0, 0.0)) -> float | None:
    """Euclidean distance from ``origin`` to the closest point, or ``None``
    when the field is empty."""
    if len(field) == 0:
        return None
    d = np.hypot(field.points[:, 0] - origin[0], field.points[:, 1] - origin[1])
    return float(d.min())


@dataclass(frozen=True)
class McEstimate:
    """Sample mean of per-trial values with its standard error.

    ``m2`` is the sum of squared deviations from the mean; it makes
    :meth:`merge` exact (Chan et al. pairwise update).
    """

    mean: float
    stderr: float
    trials: int
    m2: float = 0.0

    @classmethod
    def from_values(cls, values) -> "McEstimate":
        v = np.asarray(values, dtype=float).ravel()
        if v.size < 1:
            raise DomainError("need at least one trial")
        mean = float(v.mean())
        m2 = float(((v - mean) ** 2).sum())
        return cls(mean, _stderr(m2, v.size), int(v.size), m2)

    def merge(self, other: "McEstimate") -> "McEstimate":
        n = self.trials + other.trials
        delta = other.mean - self.mean
        mean = self.mean + delta * other.trials / n
        m2 = self.m2 + other.m2 + delta * delta * self.trials * other.trials / n
        return McEstimate(mean, _stderr(m2, n), n, m2)


def _stderr(m2, n):
    if n < 2:
        return 0.0
    return math.sqrt(m2 / (n - 1) / n)


def mc_run(
    estimator: Callable[[RandomStream], float],
    trials: int,
    base_stream: RandomStream,
    start: int = 0,
) -> McEstimate:
    """Run ``estimator`` once per trial on ``base_stream.substream(i)`` for
    ``i`` in ``[start, start + trials)``."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    values = [estimator(base_stream.substream(i)) for i in range(start, start + trials)]
    return McEstimate.from_values(values)


def mc_run_batched(
    batch_estimator: Callable[[np.random.Generator, int], np.ndarray],
    trials: int,
    base_stream: RandomStream,
    block_size: int = 4096,
    start_block: int = 0,
) -> McEstimate:
    """Vectorised variant of :func:`mc_run`.

    Trials are cut into blocks of ``block_size``; block ``b`` draws from
    ``base_stream.substream(b)`` and returns one value per trial. Results
    depend only on ``(seed, trials, block_size)``.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    est = None
    remaining = trials
    b = start_block
    while remaining > 0:
        n = min(block_size, remaining)
        vals = batch_estimator(base_stream.substream(b).generator(), n)
        part = McEstimate.from_values(vals)
        est = part if est is None else est.merge(part)
        remaining -= n
        b += 1
    return est
