"""Execute a :class:`ScenarioConfig` and collect a :class:`ResultTable`.

Large-scale effects enter the models as linear link gains. The main link
gain is the log-distance loss relative to the reference distance, the mean
(linear-domain) shadowing loss and the weather loss; model powers are thus
read as values at ``r0`` in clear weather. The eavesdropper link gets the
same treatment at its own distance, with weather only when
``weather.applies_to_eve`` is set.

Stochastic model outputs carry a ``<name>_stderr`` sibling column. All
random draws use sub-streams of ``monte_carlo.seed`` that do not depend on
the sweep point, so sweeps share random numbers across points.
"""

from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .attack import AttackParams, miss_rates, dl_success_prob, hd_attack_prob, rrc_hd_simulation, ul_probs
from .config import MODEL_CLASSES, ScenarioConfig
from .errors import ConfigError, EstimationError
from .models import (
    beam_secrecy,
    channel_rate,
    d2d_secrecy,
    iot_sop,
    mimo_secrecy,
    optimal_beamformer,
    phase_two_sinrs,
    power_budget,
    sensing_probabilities,
    sharing_secrecy,
    udn_average_secrecy,
)
from .propagation import PropagationParams, log_distance_received_power, shadowing_linear_mean_db
from .units import RandomStream, db_to_lin
from .weather import (
    DustCondition,
    RainCoefficientTable,
    RainCondition,
    dust_total_attenuation,
    rain_specific_attenuation,
    rain_total_attenuation,
)

MODEL_STREAM = 1
ATTACK_STREAM = 2


@dataclass
class ResultTable:
    header: list[str]
    rows: list[list] = field(default_factory=list)

    def append(self, row: dict) -> None:
        if list(row) != self.header:
            raise ValueError(f"row columns {list(row)} do not match header {self.header}")
        self.rows.append(list(row.values()))

    def column(self, name):
        i = self.header.index(name)
        return [r[i] for r in self.rows]

    def write(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(self.header)
        w.writerows([_fmt(v) for v in r] for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write(buf)
        return buf.getvalue()

    @classmethod
    def read_csv(cls, source) -> "ResultTable":
        text = Path(source).read_text() if not isinstance(source, io.StringIO) else source.getvalue()
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        return cls(header, [[float(x) for x in r] for r in reader])


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def emit_results(table: ResultTable, destination=None) -> None:
    """Write ``table`` as CSV to a path, an open text file, or stdout."""
    if destination is None or destination == "-":
        table.write(sys.stdout)
    elif hasattr(destination, "write"):
        table.write(destination)
    else:
        with open(destination, "w", newline="") as fh:
            table.write(fh)


# --- large-scale link gains --------------------------------------------------


def build_propagation(p) -> PropagationParams:
    return PropagationParams(
        frequency_hz=p.frequency_ghz * 1e9,
        antenna_gain_product=p.antenna_gain,
        reference_distance=p.reference_distance_m,
        path_loss_exponent=p.path_loss_exponent,
        q_db=p.q_db,
        shadow_mean_db=p.shadow_mean_db,
        shadow_std_db=p.shadow_std_db,
        scenario_class=p.scenario_class,
    )


def load_coefficients(cfg: ScenarioConfig) -> RainCoefficientTable:
    path = cfg.weather.coefficient_file
    if path is None:
        return RainCoefficientTable.default()
    path = Path(path)
    if not path.is_absolute():
        path = cfg.base_dir / path
    if not path.exists():
        raise ConfigError(f"coefficient file {str(path)!r} not found", cfg.where("weather", "coefficient_file"))
    return RainCoefficientTable.from_csv(path)


def weather_loss_db(cfg: ScenarioConfig, table=None) -> float:
    w = cfg.weather
    if w.kind == "rain":
        f = w.frequency_ghz or cfg.propagation.frequency_ghz
        cond = RainCondition(w.rate_mm_h, w.elevation_deg, w.tilt_deg, w.d_sc, w.d_ab, w.d_ref, w.d_pol)
        table = table or load_coefficients(cfg)
        return rain_total_attenuation(cond, rain_specific_attenuation(table, f, cond))
    if w.kind == "dust":
        return dust_total_attenuation(DustCondition(w.attenuation_db_per_km, w.d_sc, w.d_ab, w.d_cp))
    return 0.0


def link_budget(cfg: ScenarioConfig, table=None) -> dict:
    """Weather loss and both link gains (dB), plus received powers when a
    propagation block is present."""
    wx = weather_loss_db(cfg, table)
    wx_eve = wx if cfg.weather.applies_to_eve else 0.0
    out = {"weather_db": wx}
    p = cfg.propagation
    if p is None:
        out["link_gain_main_db"] = 0.0 - wx
        out["link_gain_eve_db"] = 0.0 - wx_eve
        return out
    params = build_propagation(p)
    shadow = shadowing_linear_mean_db(params)

    def rel(d):
        return -10.0 * params.path_loss_exponent * math.log10(d / params.reference_distance) - shadow

    out["link_gain_main_db"] = rel(p.distance_m) - wx
    out["link_gain_eve_db"] = rel(p.eve_distance_m) - wx_eve
    out["rx_power_main_dbm"] = log_distance_received_power(p.tx_power_dbm, params, p.distance_m) - shadow - wx
    out["rx_power_eve_dbm"] = log_distance_received_power(p.tx_power_dbm, params, p.eve_distance_m) - shadow - wx_eve
    return out


# --- per-model evaluation ----------------------------------------------------


def _metric_cols(m) -> dict:
    return {
        "sinr_main": m.sinr_main,
        "sinr_eve": m.sinr_eve,
        "capacity_main": m.capacity_main,
        "capacity_eve": m.capacity_eve,
        "secrecy_rate": m.secrecy_rate,
        "secure": m.secure,
    }


def evaluate_model(cfg: ScenarioConfig, gains: dict) -> dict:
    kind = cfg.model
    s = MODEL_CLASSES[kind](**{**cfg.model_params,
                   "main_link_gain": db_to_lin(gains["link_gain_main_db"]),
                   "eve_link_gain": db_to_lin(gains["link_gain_eve_db"])})
    stream = RandomStream(cfg.monte_carlo.seed, MODEL_STREAM)
    trials = cfg.monte_carlo.trials
    if kind == "mimo":
        return {**_metric_cols(mimo_secrecy(s)), "total_power": power_budget(s).total}
    if kind == "sharing":
        p_d, p_fa = sensing_probabilities(s)
        return {**_metric_cols(sharing_secrecy(s)), "p_detect": p_d, "p_false_alarm": p_fa}
    if kind == "beam":
        return {**_metric_cols(beam_secrecy(s)), "beam_snr": optimal_beamformer(s).snr}
    if kind == "d2d":
        n_bs, n_2, n_m = phase_two_sinrs(s)
        return {**_metric_cols(d2d_secrecy(s)), "n_bs": n_bs, "n_2": n_2, "n_m": n_m,
                "channel_rate": channel_rate(s)}
    if kind == "udn":
        est = udn_average_secrecy(s, stream, trials)
        return {
            "rate_main": est.main.mean, "rate_main_stderr": est.main.stderr,
            "rate_eve": est.eve.mean, "rate_eve_stderr": est.eve.stderr,
            "secrecy_rate": est.secrecy, "secrecy_rate_stderr": est.secrecy_stderr,
            "empty_trials": est.empty_trials,
        }
    if kind == "iot":
        est = iot_sop(s, stream, trials)
        return {"sop": est.mean, "sop_stderr": est.stderr}
    raise ConfigError(f"unknown model {kind!r}")


def evaluate_attack(cfg: ScenarioConfig, model_cols: dict) -> dict:
    a = cfg.attack
    if a.kind == "hd_fd":
        p = AttackParams(a.p_dl, a.p_ul, a.n, a.u)
        o = miss_rates(p)
        p_ul, p_ulev = ul_probs(p)
        out = {
            "p_dl_success": dl_success_prob(p),
            "p_hd_attack": hd_attack_prob(p),
            "p_ul_success": p_ul,
            "p_ul_intercept": p_ulev,
            "p_total": o.p_total,
            "miss_rate_fd": o.miss_rate_fd,
            "miss_rate_hd": o.miss_rate_hd,
            "hd_advantage": o.hd_advantage,
            "in_range": o.p_total_in_range and o.miss_rates_in_range,
        }
        if a.simulate:
            sim = rrc_hd_simulation(p, RandomStream(cfg.monte_carlo.seed, ATTACK_STREAM), cfg.monte_carlo.trials)
            out["intercept_rate"] = sim.intercept_rate
            out["intercept_rate_stderr"] = sim.stderr
        return out
    if a.kind == "ar_ad":
        # weather is already folded into the model's link gains
        return {
            "capacity_threshold": a.capacity_threshold,
            "favorable": model_cols["secrecy_rate"] < a.capacity_threshold,
        }
    return {}


def _run_point(cfg: ScenarioConfig, table) -> dict:
    gains = link_budget(cfg, table)
    model_cols = evaluate_model(cfg, gains)
    return {**gains, **model_cols, **evaluate_attack(cfg, model_cols)}


def run_scenario(cfg: ScenarioConfig) -> ResultTable:
    table = load_coefficients(cfg) if cfg.weather.kind == "rain" else None
    if cfg.sweep is None:
        points = [(None, cfg)]
    else:
        points = [(v, cfg.with_override(cfg.sweep.parameter, v)) for v in cfg.sweep.values]
    result = None
    for value, point in points:
        try:
            row = _run_point(point, table)
        except ConfigError:
            raise
        except (ValueError, ArithmeticError, EstimationError) as exc:
            at = f" at {cfg.sweep.parameter}={value!r}" if value is not None else ""
            raise EstimationError(f"{cfg.model} scenario failed{at}: {exc}") from exc
        if value is not None:
            row = {cfg.sweep.parameter: float(value), **row}
        if result is None:
            result = ResultTable(list(row))
        result.append(row)
    return result
