"""Unit conversions, the Gaussian tail function and seeded random streams.

Powers are carried in linear watts internally; dB and dBm appear only at
API boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import DomainError

__all__ = [
    "lin_to_db",
    "db_to_lin",
    "dbm_to_watt",
    "watt_to_dbm",
    "q_function",
    "RandomStream",
]


def lin_to_db(x):
    """Linear power ratio to decibels. Accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError(f"lin_to_db requires x > 0, got {x!r}")
    out = 10.0 * np.log10(arr)
    return float(out) if out.ndim == 0 else out


def db_to_lin(x_db):
    out = np.power(10.0, np.asarray(x_db, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def dbm_to_watt(x_dbm):
    # 30 dBm is exactly 1 W
    out = np.power(10.0, (np.asarray(x_dbm, dtype=float) - 30.0) / 10.0)
    return float(out) if out.ndim == 0 else out


def watt_to_dbm(w):
    arr = np.asarray(w, dtype=float)
    if np.any(arr <= 0):
        raise DomainError(f"watt_to_dbm requires w > 0, got {w!r}")
    out = 10.0 * np.log10(arr) + 30.0
    return float(out) if out.ndim == 0 else out


def q_function(x):
    """Standard normal tail probability Q(x) = P(Z > x) = erfc(x/sqrt(2))/2."""
    out = 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class RandomStream:
    """Names a reproducible random sequence.

    A stream is just an address: ``(seed, stream_index)`` plus an optional
    ``lineage`` of sub-stream indices. Calling :meth:`generator` always
    returns a fresh generator positioned at the start of that sequence, so
    two equal streams draw identical values. Distinct addresses map to
    independent ``SeedSequence`` spawn keys.
    """

    seed: int
    stream_index: int = 0
    lineage: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed}")
        if self.stream_index < 0:
            raise DomainError(f"stream_index must be >= 0, got {self.stream_index}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(
            self.seed, spawn_key=(self.stream_index, *self.lineage)
        )
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, index: int) -> "RandomStream":
        if index < 0:
            raise DomainError(f"substream index must be >= 0, got {index}")
        return RandomStream(self.seed, self.stream_index, (*self.lineage, index))
