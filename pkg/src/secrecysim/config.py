"""Scenario files.

A scenario is a YAML document with these top-level blocks::

    model: d2d                 # or a mapping {kind: d2d, <model fields>...}
    propagation: {...}         # optional
    weather: {kind: rain, ...} # rain | dust | none
    attack: {kind: hd_fd, ...} # hd_fd | ar_ad | none
    monte_carlo: {seed: 1, trials: 10000}
    sweep: {parameter: weather.rate_mm_h, values: [0, 10, 20]}

Model fields are the field names of the matching scenario dataclass in
:mod:`secrecysim.models`. Complex numbers are written as ``[re, im]`` or a
plain number. Every validation failure raises :class:`ConfigError` naming
the file, line and key path.
"""

from __future__ import annotations

import copy
import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .errors import ConfigError
from .models import BeamScenario, D2dScenario, IotScenario, MimoScenario, SharingScenario, UdnField
from .simkit import FadingDescriptor

MODEL_CLASSES = {
    "mimo": MimoScenario,
    "sharing": SharingScenario,
    "beam": BeamScenario,
    "d2d": D2dScenario,
    "udn": UdnField,
    "iot": IotScenario,
}
# filled in by the runner from the propagation / weather blocks
_RUNNER_FIELDS = {"main_link_gain", "eve_link_gain"}


@dataclass
class PropagationBlock:
    frequency_ghz: float = 28.0
    path_loss_exponent: float = 2.0
    reference_distance_m: float = 1.0
    antenna_gain: float = 1.0
    q_db: float | None = None
    shadow_mean_db: float = 0.0
    shadow_std_db: float = 0.0
    scenario_class: str | None = None
    tx_power_dbm: float = 30.0
    distance_m: float = 1.0
    eve_distance_m: float = 1.0


@dataclass
class WeatherBlock:
    kind: str = "none"
    frequency_ghz: float | None = None
    rate_mm_h: float = 0.0
    elevation_deg: float = 0.0
    tilt_deg: float = 0.0
    d_sc: float = 0.0
    d_ab: float = 0.0
    d_ref: float = 0.0
    d_pol: float = 0.0
    d_cp: float = 0.0
    attenuation_db_per_km: float = 0.0
    coefficient_file: str | None = None
    applies_to_eve: bool = False


@dataclass
class AttackBlock:
    kind: str = "none"
    p_dl: float = 0.7
    p_ul: float = 0.5
    n: int = 4
    u: int = 1
    simulate: bool = False
    capacity_threshold: float = 1.0


@dataclass
class MonteCarloBlock:
    seed: int = 1
    trials: int = 10000


@dataclass
class SweepBlock:
    parameter: str
    values: list[float]


@dataclass
class ScenarioConfig:
    model: str
    model_params: dict[str, Any] = field(default_factory=dict)
    propagation: PropagationBlock | None = None
    weather: WeatherBlock = field(default_factory=WeatherBlock)
    attack: AttackBlock = field(default_factory=AttackBlock)
    monte_carlo: MonteCarloBlock = field(default_factory=MonteCarloBlock)
    sweep: SweepBlock | None = None
    source: str = "<memory>"
    base_dir: Path = field(default_factory=Path.cwd)
    # raw (key-path -> line) map for diagnostics
    lines: dict[tuple, int] = field(default_factory=dict, repr=False)

    def where(self, *path) -> str:
        line = self.lines.get(tuple(path))
        loc = f"{self.source}:{line}" if line else self.source
        return f"{loc} [{'.'.join(str(p) for p in path)}]" if path else loc

    def build_model(self):
        """Instantiate the model dataclass (without link gains)."""
        return MODEL_CLASSES[self.model](**self.model_params)

    def with_override(self, path: str, value) -> "ScenarioConfig":
        """Copy with ``block.key`` set to ``value`` and re-validated."""
        block, key = path.split(".", 1)
        cfg = copy.deepcopy(self)
        if block == "model":
            cls = MODEL_CLASSES[cfg.model]
            ann = _field_types(cls)[key]
            cfg.model_params[key] = _coerce(value, ann, self.where("model", key))
        else:
            obj = getattr(cfg, block)
            ann = _field_types(type(obj))[key]
            setattr(obj, key, _coerce(value, ann, self.where(block, key)))
        validate(cfg)
        return cfg


# --- YAML with line numbers ---------------------------------------------------


def _to_python(loader, node, path, lines):
    lines[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k_node, v_node in node.value:
            key = loader.construct_object(k_node, deep=True)
            sub = (*path, key)
            if key in out:
                raise ConfigError(f"duplicate key {key!r}", f"line {k_node.start_mark.line + 1}")
            lines[sub] = k_node.start_mark.line + 1
            out[key] = _to_python(loader, v_node, sub, lines)
            lines[sub] = k_node.start_mark.line + 1
        return out
    if isinstance(node, yaml.SequenceNode):
        return [_to_python(loader, v, (*path, i), lines) for i, v in enumerate(node.value)]
    return loader.construct_object(node, deep=True)


def _parse_yaml(text, source):
    loader = yaml.SafeLoader(text)
    try:
        node = loader.get_single_node()
        if node is None:
            raise ConfigError("empty scenario file", source)
        lines: dict[tuple, int] = {}
        data = _to_python(loader, node, (), lines)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f"{source}:{mark.line + 1}" if mark else source
        raise ConfigError(f"YAML syntax error: {getattr(exc, 'problem', exc)}", loc) from None
    finally:
        loader.dispose()
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping", source)
    return data, lines


# --- coercion ---------------------------------------------------------------


def _field_types(cls) -> dict[str, str]:
    return {f.name: str(f.type) for f in dataclasses.fields(cls) if f.init}


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _complex(v, where):
    if _is_number(v):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(_is_number(x) for x in v):
        return complex(v[0], v[1])
    raise ConfigError(f"expected a number or [re, im], got {v!r}", where)


def _fading(v, where):
    if isinstance(v, str):
        v = {"kind": v}
    if not isinstance(v, dict):
        raise ConfigError(f"expected a fading mapping, got {v!r}", where)
    allowed = {"kind", "mean_power", "k_factor", "value"}
    extra = set(v) - allowed
    if extra:
        raise ConfigError(f"unknown fading key(s) {sorted(extra)}; allowed {sorted(allowed)}", where)
    kw = dict(v)
    if "value" in kw:
        kw["value"] = _complex(kw["value"], where)
    try:
        return FadingDescriptor(**kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), where) from None


def _coerce(value, ann: str, where: str):
    optional = "None" in ann
    if value is None:
        if optional:
            return None
        raise ConfigError("value may not be null", where)
    base = ann.replace("| None", "").strip()
    if base == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"expected true/false, got {value!r}", where)
        return value
    if base == "int":
        if isinstance(value, bool) or not (isinstance(value, int) or (isinstance(value, float) and value.is_integer())):
            raise ConfigError(f"expected an integer, got {value!r}", where)
        return int(value)
    if base == "float":
        if not _is_number(value):
            raise ConfigError(f"expected a number, got {value!r}", where)
        return float(value)
    if base == "str":
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", where)
        return value
    if base == "complex":
        return _complex(value, where)
    if base.startswith("tuple[complex"):
        if not isinstance(value, list):
            raise ConfigError(f"expected a list, got {value!r}", where)
        return tuple(_complex(x, where) for x in value)
    if base == "np.ndarray":
        if not isinstance(value, list) or not value:
            raise ConfigError(f"expected a non-empty list of complex values, got {value!r}", where)
        return np.array([_complex(x, where) for x in value])
    if base == "FadingDescriptor":
        return _fading(value, where)
    if base == "list[float]":
        if not isinstance(value, list) or not all(_is_number(x) for x in value):
            raise ConfigError(f"expected a list of numbers, got {value!r}", where)
        return [float(x) for x in value]
    raise ConfigError(f"unsupported field type {ann}", where)


def _build_block(cls, raw, cfg_where, block_name):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"block must be a mapping, got {raw!r}", cfg_where(block_name))
    types = _field_types(cls)
    kwargs = {}
    for key, val in raw.items():
        if key not in types:
            raise ConfigError(
                f"unknown key {key!r} in {block_name}; allowed: {', '.join(types)}",
                cfg_where(block_name, key),
            )
        kwargs[key] = _coerce(val, types[key], cfg_where(block_name, key))
    missing = [f.name for f in dataclasses.fields(cls)
               if f.init and f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING
               and f.name not in kwargs]
    if missing:
        raise ConfigError(f"missing required key(s) {missing} in {block_name}", cfg_where(block_name))
    return kwargs


TOP_LEVEL = ("model", "propagation", "weather", "attack", "monte_carlo", "sweep")


def parse_scenario(data: dict, lines=None, source="<memory>", base_dir=None) -> ScenarioConfig:
    cfg = ScenarioConfig(model="", source=source, base_dir=Path(base_dir or Path.cwd()), lines=lines or {})
    where = cfg.where
    for key in data:
        if key not in TOP_LEVEL:
            raise ConfigError(f"unknown top-level key {key!r}; allowed: {', '.join(TOP_LEVEL)}", where(key))
    if "model" not in data:
        raise ConfigError("missing required block 'model'", source)

    model = data["model"]
    if isinstance(model, str):
        kind, params = model, {}
    elif isinstance(model, dict):
        params = dict(model)
        kind = params.pop("kind", None)
    else:
        raise ConfigError("model must be a name or a mapping with 'kind'", where("model"))
    if kind not in MODEL_CLASSES:
        raise ConfigError(f"unknown model {kind!r}; expected one of {', '.join(MODEL_CLASSES)}", where("model"))
    cfg.model = kind
    cls = MODEL_CLASSES[kind]
    for k in list(params):
        if k in _RUNNER_FIELDS:
            raise ConfigError(f"{k!r} is derived from the propagation/weather blocks", where("model", k))
    cfg.model_params = _build_block(cls, params, where, "model")

    if "propagation" in data:
        cfg.propagation = PropagationBlock(**_build_block(PropagationBlock, data["propagation"], where, "propagation"))
    cfg.weather = WeatherBlock(**_build_block(WeatherBlock, data.get("weather"), where, "weather"))
    cfg.attack = AttackBlock(**_build_block(AttackBlock, data.get("attack"), where, "attack"))
    cfg.monte_carlo = MonteCarloBlock(**_build_block(MonteCarloBlock, data.get("monte_carlo"), where, "monte_carlo"))
    if data.get("sweep") is not None:
        cfg.sweep = SweepBlock(**_build_block(SweepBlock, data["sweep"], where, "sweep"))
    validate(cfg)
    if cfg.sweep is not None:
        _validate_sweep(cfg)
    return cfg


def _validate_sweep(cfg: ScenarioConfig):
    where = cfg.where
    path = cfg.sweep.parameter
    if "." not in path:
        raise ConfigError(f"sweep parameter {path!r} must look like block.key", where("sweep", "parameter"))
    block, key = path.split(".", 1)
    if block == "model":
        known = set(_field_types(MODEL_CLASSES[cfg.model])) - _RUNNER_FIELDS
    elif block in ("propagation", "weather", "attack", "monte_carlo"):
        if block == "propagation" and cfg.propagation is None:
            raise ConfigError("sweep over propagation needs a propagation block", where("sweep", "parameter"))
        known = set(_field_types(type(getattr(cfg, block))))
    else:
        raise ConfigError(f"sweep parameter block {block!r} is not sweepable", where("sweep", "parameter"))
    if key not in known:
        raise ConfigError(f"sweep parameter {path!r} does not exist", where("sweep", "parameter"))
    if not cfg.sweep.values:
        raise ConfigError("sweep needs at least one value", where("sweep", "values"))
    for i, v in enumerate(cfg.sweep.values):
        try:
            cfg.with_override(path, v)
        except ConfigError as exc:
            raise ConfigError(f"sweep value #{i} ({v}) invalid: {exc}", where("sweep", "values")) from None


def validate(cfg: ScenarioConfig) -> None:
    """Run every module-level invariant on the current values."""
    from .runner import build_propagation, load_coefficients  # circular at import time
    where = cfg.where
    try:
        cfg.build_model()
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), where("model")) from None

    if cfg.propagation is not None:
        p = cfg.propagation
        if p.scenario_class is not None:
            from .propagation import validate_exponent
            try:
                validate_exponent(p.scenario_class, p.path_loss_exponent)
            except ConfigError as exc:
                raise ConfigError(str(exc), where("propagation", "path_loss_exponent")) from None
        try:
            build_propagation(p)
        except ValueError as exc:
            raise ConfigError(str(exc), where("propagation")) from None
        for k in ("distance_m", "eve_distance_m"):
            if getattr(p, k) < p.reference_distance_m:
                raise ConfigError(f"{k} must be >= reference_distance_m", where("propagation", k))

    w = cfg.weather
    if w.kind not in ("none", "rain", "dust"):
        raise ConfigError(f"weather kind must be rain, dust or none, got {w.kind!r}", where("weather", "kind"))
    for k in ("rate_mm_h", "d_sc", "d_ab", "d_ref", "d_pol", "d_cp", "attenuation_db_per_km"):
        if getattr(w, k) < 0:
            raise ConfigError(f"{k} must be >= 0", where("weather", k))
    if w.kind == "rain":
        f = w.frequency_ghz or (cfg.propagation.frequency_ghz if cfg.propagation else None)
        if f is None:
            raise ConfigError("rain needs weather.frequency_ghz or a propagation block", where("weather"))
        table = load_coefficients(cfg)
        if not table.freq_ghz[0] <= f <= table.freq_ghz[-1]:
            raise ConfigError(f"frequency {f} GHz outside coefficient table", where("weather"))

    a = cfg.attack
    if a.kind not in ("none", "hd_fd", "ar_ad"):
        raise ConfigError(f"attack kind must be hd_fd, ar_ad or none, got {a.kind!r}", where("attack", "kind"))
    if a.kind == "hd_fd":
        from .attack import AttackParams
        try:
            AttackParams(a.p_dl, a.p_ul, a.n, a.u)
        except ValueError as exc:
            raise ConfigError(str(exc), where("attack")) from None
    if a.kind == "ar_ad":
        if cfg.model == "iot":
            raise ConfigError("ar_ad needs a model with a secrecy rate (not iot)", where("attack", "kind"))
        if a.capacity_threshold < 0:
            raise ConfigError("capacity_threshold must be >= 0", where("attack", "capacity_threshold"))

    mc = cfg.monte_carlo
    if not 0 <= mc.seed < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer", where("monte_carlo", "seed"))
    if mc.trials < 1:
        raise ConfigError("trials must be >= 1", where("monte_carlo", "trials"))


def load_scenario(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario: {exc.strerror}", str(path)) from None
    data, lines = _parse_yaml(text, str(path))
    return parse_scenario(data, lines, str(path), path.parent)
