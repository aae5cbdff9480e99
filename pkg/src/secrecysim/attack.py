"""Half-duplex RRC interception attack and the AR/AD favourability test.

Over ``n`` transmission intervals the legitimate UE receives the DL RRC
setup in each interval with probability ``p_DL`` and the intruder captures
it otherwise (likewise ``p_UL`` for the UL request). The closed forms are
binomial; the simulation steps an explicit three-party state machine.
"""

from __future__ import annotations

import csv
import enum
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .secrecy import SecrecyMetrics, secrecy_metrics
from .units import RandomStream, db_to_lin

log = logging.getLogger(__name__)

__all__ = [
    "AttackParams",
    "AttackOutcome",
    "RrcMessage",
    "dl_success_prob",
    "hd_attack_prob",
    "ul_probs",
    "total_prob",
    "miss_rates",
    "RrcTraceEvent",
    "RrcHalfDuplexSim",
    "SimulationResult",
    "rrc_hd_simulation",
    "write_trace",
    "weathered_secrecy",
    "ar_ad_favorability",
]


@dataclass(frozen=True)
class AttackParams:
    p_dl: float
    p_ul: float = 0.5
    n: int = 1
    u: int = 0

    def __post_init__(self):
        for k in ("p_dl", "p_ul"):
            v = getattr(self, k)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{k} must be in [0, 1], got {v}")
        if self.n < 0:
            raise DomainError(f"interval count n must be >= 0, got {self.n}")
        if not 0 <= self.u <= self.n:
            raise DomainError(f"success count u must satisfy 0 <= u <= n, got u={self.u}, n={self.n}")

    @property
    def q_dl(self) -> float:
        return 1.0 - self.p_dl

    @property
    def q_ul(self) -> float:
        return 1.0 - self.p_ul


def _binom(n, u, p, q):
    return math.comb(n, u) * p**u * q ** (n - u)


def dl_success_prob(p: AttackParams) -> float:
    """Probability the UE receives the DL setup in exactly ``u`` of ``n`` intervals."""
    return _binom(p.n, p.u, p.p_dl, p.q_dl)


def hd_attack_prob(p: AttackParams) -> float:
    """Probability the intruder captures the DL setup in exactly ``u`` of ``n`` intervals."""
    return _binom(p.n, p.u, p.q_dl, p.p_dl)


def ul_probs(p: AttackParams) -> tuple[float, float]:
    """(gNB receives UL request u times, intruder captures it u times)."""
    return _binom(p.n, p.u, p.p_ul, p.q_ul), _binom(p.n, p.u, p.q_ul, p.p_ul)


def total_prob(p: AttackParams) -> float:
    """P_UL + P_DL, taking the UL and DL events as disjoint. The sum is
    returned as-is even when it exceeds 1."""
    return ul_probs(p)[0] + dl_success_prob(p)


@dataclass(frozen=True)
class AttackOutcome:
    p_total: float
    miss_rate_fd: float
    miss_rate_hd: float
    hd_advantage: bool
    p_total_in_range: bool = True
    miss_rates_in_range: bool = True


def miss_rates(p: AttackParams) -> AttackOutcome:
    """Full-duplex and half-duplex miss-rates normalised by P_total.

    FD misses when either the UL or DL capture fails; HD only attempts the
    DL. The FD numerator adds the non-negative term ``1 - P_ULev``, so
    FD >= HD for every parameter point. Values outside [0, 1] are kept and
    flagged.
    """
    pt = total_prob(p)
    if pt == 0:
        raise DomainError("P_total is zero; miss-rate undefined")
    p_dlev = hd_attack_prob(p)
    p_ulev = ul_probs(p)[1]
    fd = ((1.0 - p_ulev) + (1.0 - p_dlev)) / pt
    hd = (1.0 - p_dlev) / pt
    out = AttackOutcome(
        pt, fd, hd, fd > hd,
        p_total_in_range=0.0 <= pt <= 1.0,
        miss_rates_in_range=0.0 <= hd <= 1.0 and 0.0 <= fd <= 1.0,
    )
    if not out.miss_rates_in_range:
        log.debug("miss-rate outside [0, 1] for %s: fd=%g hd=%g", p, fd, hd)
    return out


# --- RRC state machine -------------------------------------------------------


class UeState(enum.Enum):
    IDLE = "idle"
    SETUP_REQUESTED = "setup_requested"
    CONNECTED = "connected"


class IntruderState(enum.Enum):
    IDLE = "idle"
    CAPTURED = "captured"


@dataclass(frozen=True)
class RrcMessage:
    """Opaque RRC message. Fields are carried, never interpreted."""

    auth_stamp: bytes
    identity: str
    indication_bits: int
    payload: bytes
    artifact_a: bytes | None = None
    artifact_r: bytes | None = None
    channel: complex = 1.0
    power: float = 1.0
    noise: complex = 0.0

    def __post_init__(self):
        if not self.identity:
            raise DomainError("RRC message identity must be non-empty")


@dataclass(frozen=True)
class RrcTraceEvent:
    trial: int
    tti: int
    actor: str
    event: str
    outcome: str


TRACE_HEADER = ["trial", "tti", "actor", "event", "outcome"]


class RrcHalfDuplexSim:
    """Steps UE, gNB and intruder through ``n`` RRC setup attempts.

    Each attempt takes one TTI for the UL setup request and one for the DL
    setup. If the intruder captures the DL setup it sends a forged setup
    carrying the artifacts ``a`` and ``r`` to the UE in the same TTI; the
    UE then declares connection failure (one more TTI), both return to
    idle and the next attempt starts.
    """

    def __init__(self, params: AttackParams, identity: str = "ue-0", record: bool = False):
        self.params = params
        self.identity = identity
        self.record = record
        self.trace: list[RrcTraceEvent] = []

    # bytes drawn per attempt: auth stamp, request payload, setup payload, a, r
    _BLOB = (4, 8, 8, 4, 4)

    def _log(self, trial, tti, actor, event, outcome):
        if self.record:
            self.trace.append(RrcTraceEvent(trial, tti, actor, event, outcome))

    def run_trial(self, trial: int, rng: np.random.Generator) -> int:
        """Return how many of the ``n`` DL setups the intruder captured."""
        n = self.params.n
        # all randomness for the trial is drawn up front in fixed-size blocks
        delivered = rng.random(n) < self.params.p_dl
        bits = rng.integers(0, 256, n)
        width = sum(self._BLOB)
        blob = rng.bytes(width * n)
        ue = UeState.IDLE
        intruder = IntruderState.IDLE
        tti = 0
        captured = 0
        for k in range(n):
            chunk = blob[k * width:(k + 1) * width]
            stamp, req_payload, setup_payload, art_a, art_r = (
                chunk[0:4], chunk[4:12], chunk[12:20], chunk[20:24], chunk[24:28]
            )
            request = RrcMessage(stamp, self.identity, int(bits[k]), req_payload)
            ue = UeState.SETUP_REQUESTED
            self._log(trial, tti, "ue", "rrc_setup_request", "received_by_gnb")
            tti += 1

            setup = replace(request, payload=setup_payload)
            if delivered[k]:
                ue = UeState.CONNECTED
                self._log(trial, tti, "gnb", "rrc_setup", "delivered_to_ue")
                tti += 1
                ue = UeState.IDLE
                continue

            intruder = IntruderState.CAPTURED
            captured += 1
            self._log(trial, tti, "gnb", "rrc_setup", "intercepted")
            forged = replace(setup, artifact_a=art_a, artifact_r=art_r)
            self._log(trial, tti, "intruder", "forged_rrc_setup", "sent_to_ue")
            tti += 1
            # the UE is not modelled as validating the forged setup; the
            # exchange always ends in connection failure
            assert forged.identity == request.identity
            self._log(trial, tti, "ue", "connection_failure", "return_to_idle")
            ue = UeState.IDLE
            intruder = IntruderState.IDLE
            tti += 1
        assert ue is UeState.IDLE and intruder is IntruderState.IDLE
        return captured


@dataclass
class SimulationResult:
    intercept_rate: float
    stderr: float
    trials: int
    capture_counts: np.ndarray
    trace: list[RrcTraceEvent]


def rrc_hd_simulation(p: AttackParams, stream: RandomStream, trials: int, record_trace: bool = False) -> SimulationResult:
    """Monte Carlo over independent trials, one sub-stream each.

    ``capture_counts[u]`` is the number of trials in which the intruder
    captured exactly ``u`` of the ``n`` DL setups. The standard error is
    computed over per-trial capture fractions.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if p.n < 1:
        raise DomainError("simulation needs at least one interval (n >= 1)")
    sim = RrcHalfDuplexSim(p, record=record_trace)
    counts = np.zeros(p.n + 1, dtype=np.int64)
    per_trial = np.empty(trials)
    for i in range(trials):
        c = sim.run_trial(i, stream.substream(i).generator())
        counts[c] += 1
        per_trial[i] = c / p.n
    mean = float(per_trial.mean())
    se = float(per_trial.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SimulationResult(mean, se, trials, counts, sim.trace)


def write_trace(trace, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_HEADER)
        for e in trace:
            w.writerow([e.trial, e.tti, e.actor, e.event, e.outcome])


# --- artificial rain / dust ----------------------------------------------------


def weathered_secrecy(baseline: SecrecyMetrics, weather_db: float, applies_to_eve: bool = False) -> SecrecyMetrics:
    """Fold a weather loss into the received signal power of the user link
    (and the eavesdropper link when ``applies_to_eve``) and recompute.

    Capacities are rebuilt as log2(1 + SINR) from the baseline SINRs.
    """
    if weather_db < 0:
        raise DomainError("weather attenuation must be >= 0")
    g = db_to_lin(-weather_db)
    eve = baseline.sinr_eve * g if applies_to_eve else baseline.sinr_eve
    return secrecy_metrics(baseline.sinr_main * g, eve, baseline.threshold)


def ar_ad_favorability(baseline: SecrecyMetrics, weather_db: float, c_threshold: float, applies_to_eve: bool = False) -> bool:
    """True when the post-weather secrecy capacity drops below ``c_threshold``."""
    return weathered_secrecy(baseline, weather_db, applies_to_eve).secrecy_rate < c_threshold
