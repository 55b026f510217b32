"""Experiment configuration parsing for the CLI.

An experiment config is a JSON object with up to four keys:

    {
      "id":     "optional-name",
      "signal": {"T": 1.0, "N1": 7, "N2": 14, "p": 1.0, "sigma2": 1.0},
      "filter": {"allpass": true} | {"lowpass": {"start": 7, "width": 4}}
                | {"gains": [[re, im], ...]},
      "scheme": [0.0, 0.25, 0.5]
                | {"generator": "uniform", "M": 8}
                | {"generator": "half-landau", "M": 3, "tau": 0.0}
    }

Unknown keys are rejected so that typos fail loudly; parse/serialize round
trips are lossless.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ConfigError
from .estimator import FilterSpec
from .schemes import (
    SamplingScheme,
    binary_expansion_points,
    half_landau_points,
    theorem6_points,
    theorem6_upper_points,
    uniform_points,
)
from .signal import DiscreteSignalSpec, SignalSpec

GENERATORS = ("uniform", "half-landau", "thm6", "thm6-upper", "binary")


@dataclass(frozen=True)
class ExperimentConfig:
    config_id: str
    signal: SignalSpec
    filt: FilterSpec
    scheme: SamplingScheme | None


def build_scheme(
    spec: SignalSpec,
    generator: str,
    m: int | None = None,
    tau: float = 0.0,
) -> SamplingScheme:
    """Instantiate a named generator for the given signal spec."""
    if generator == "binary":
        return binary_expansion_points(spec)
    if m is None:
        raise ConfigError(f"generator {generator!r} requires a sample count M")
    if generator == "uniform":
        return uniform_points(m, spec.period)
    if generator == "half-landau":
        return half_landau_points(m, spec, tau)
    if generator == "thm6":
        return theorem6_points(m, spec)
    if generator == "thm6-upper":
        return theorem6_upper_points(m, spec)
    raise ConfigError(f"unknown generator {generator!r}; choose from {GENERATORS}")


def _parse_scheme(obj, spec: SignalSpec) -> SamplingScheme:
    if isinstance(obj, list):
        return SamplingScheme.from_json(obj, spec.period)
    if isinstance(obj, dict):
        unknown = set(obj) - {"generator", "M", "tau", "points"}
        if unknown:
            raise ConfigError(f"unknown scheme keys: {sorted(unknown)}")
        if "points" in obj:
            return SamplingScheme.from_json(obj["points"], spec.period)
        gen = obj.get("generator")
        if gen is None:
            raise ConfigError("scheme object needs 'generator' or 'points'")
        m = obj.get("M")
        return build_scheme(
            spec, gen, None if m is None else int(m), float(obj.get("tau", 0.0))
        )
    raise ConfigError("scheme must be a JSON array of instants or an object")


def parse_experiment(
    obj: dict,
    default_id: str = "config",
    discrete: bool = False,
    require_scheme: bool = False,
) -> ExperimentConfig:
    """Validate one experiment object into typed specs."""
    if not isinstance(obj, dict):
        raise ConfigError("experiment config must be a JSON object")
    unknown = set(obj) - {"id", "signal", "filter", "scheme"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "signal" not in obj:
        raise ConfigError("config is missing the 'signal' object")
    spec_cls = DiscreteSignalSpec if discrete else SignalSpec
    spec = spec_cls.from_json(obj["signal"])
    filt = (
        FilterSpec.from_json(obj["filter"], spec)
        if "filter" in obj
        else FilterSpec.allpass(spec)
    )
    scheme = _parse_scheme(obj["scheme"], spec) if "scheme" in obj else None
    if require_scheme and scheme is None:
        raise ConfigError("config is missing the 'scheme' entry")
    return ExperimentConfig(
        config_id=str(obj.get("id", default_id)),
        signal=spec,
        filt=filt,
        scheme=scheme,
    )


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc


def load_experiments(
    path: str, discrete: bool = False, require_scheme: bool = False
) -> list[ExperimentConfig]:
    """Load one config or a {"configs": [...]} batch from a JSON file."""
    obj = load_json(path)
    if isinstance(obj, dict) and "configs" in obj:
        extras = set(obj) - {"configs"}
        if extras:
            raise ConfigError(f"unknown batch keys: {sorted(extras)}")
        entries = obj["configs"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError("'configs' must be a nonempty list")
        return [
            parse_experiment(
                entry,
                default_id=f"config{i}",
                discrete=discrete,
                require_scheme=require_scheme,
            )
            for i, entry in enumerate(entries)
        ]
    return [
        parse_experiment(
            obj, discrete=discrete, require_scheme=require_scheme
        )
    ]
