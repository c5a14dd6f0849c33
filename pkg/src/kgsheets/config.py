"""Pattern configuration: JSON loading, validation and serialization."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Any, Mapping

from .draws import draw_unit
from .patterns import PATTERN_IDS, PATTERNS, SURFACE_FORMS
from .terminology import FAMILY_NAME_PROPERTIES, GIVEN_NAME_PROPERTIES, auxiliary_properties

DEFAULT_DELIMITERS = (", ", "; ", "\n")
DEFAULT_PALETTE_SIZE = 8
MAX_PALETTE_SIZE = 16  # size of the fixed color palette

_TOP_KEYS = {"seed", "patterns", "outdatedProperties", "maxPaletteSize", "delimiters"}
_SETTINGS_KEYS = {"enabled", "probability", "parameters"}


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def _default_parameters(pattern_id: str) -> dict[str, Any]:
    if pattern_id == SURFACE_FORMS:
        return {"givenNameProperties": list(GIVEN_NAME_PROPERTIES), "familyNameProperties": list(FAMILY_NAME_PROPERTIES)}
    return dict(PATTERNS[pattern_id].parameters)


@dataclass(frozen=True)
class PatternSettings:
    enabled: bool = True
    probability: float = 0.5
    parameters: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameters", MappingProxyType(dict(self.parameters)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternSettings):
            return NotImplemented
        return (self.enabled, self.probability, dict(self.parameters)) == (
            other.enabled, other.probability, dict(other.parameters))


def default_settings(pattern_id: str) -> PatternSettings:
    info = PATTERNS[pattern_id]
    return PatternSettings(True, info.default_probability, _default_parameters(pattern_id))


@dataclass(frozen=True)
class PatternConfig:
    seed: int = 0
    patterns: Mapping[str, PatternSettings] = field(default_factory=dict)
    outdated_properties: tuple[str, ...] = ()
    max_palette_size: int = DEFAULT_PALETTE_SIZE
    delimiters: tuple[str, ...] = DEFAULT_DELIMITERS

    def __post_init__(self) -> None:
        for pid in self.patterns:
            if pid not in PATTERNS:
                raise ConfigError(f"patterns.{pid}", "unknown pattern id")
        filled = {pid: self.patterns.get(pid) or default_settings(pid) for pid in PATTERN_IDS}
        object.__setattr__(self, "patterns", MappingProxyType(filled))
        object.__setattr__(self, "outdated_properties", tuple(self.outdated_properties))
        object.__setattr__(self, "delimiters", tuple(self.delimiters))
        _validate(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternConfig):
            return NotImplemented
        return to_dict(self) == to_dict(other)

    def __hash__(self) -> int:
        return hash(dump_config(self))

    def enabled(self, pattern_id: str) -> bool:
        return self.patterns[pattern_id].enabled

    def probability(self, pattern_id: str) -> float:
        return self.patterns[pattern_id].probability

    def param(self, pattern_id: str, name: str) -> Any:
        return self.patterns[pattern_id].parameters[name]

    def applies(self, pattern_id: str, key: tuple[str, ...]) -> bool:
        """Keyed Bernoulli trial under the pattern's probability; False when disabled."""
        settings = self.patterns[pattern_id]
        if not settings.enabled:
            return False
        return draw_unit(self.seed, key) < settings.probability

    def with_seed(self, seed: int) -> "PatternConfig":
        return replace(self, seed=seed)

    def with_patterns(self, **changes: dict[str, Any]) -> "PatternConfig":
        """Copy with per-pattern overrides; keyword names use underscores for dashes."""
        patterns = dict(self.patterns)
        for name, values in changes.items():
            pid = name.replace("_", "-")
            if pid not in patterns:
                raise ConfigError(f"patterns.{pid}", "unknown pattern id")
            patterns[pid] = replace(patterns[pid], **values)
        return replace(self, patterns=patterns)

    @property
    def given_name_properties(self) -> tuple[str, ...]:
        return tuple(self.param(SURFACE_FORMS, "givenNameProperties"))

    @property
    def family_name_properties(self) -> tuple[str, ...]:
        return tuple(self.param(SURFACE_FORMS, "familyNameProperties"))

    def auxiliary_properties(self) -> frozenset[str]:
        return auxiliary_properties(self.given_name_properties, self.family_name_properties)

    def digest(self) -> str:
        return hashlib.sha256(dump_config(self).encode("utf-8")).hexdigest()


def all_disabled(seed: int = 0, **kwargs: Any) -> PatternConfig:
    base = PatternConfig(seed=seed, **kwargs)
    return replace(base, patterns={pid: replace(s, enabled=False) for pid, s in base.patterns.items()})


def only(*pattern_ids: str, seed: int = 0, probability: float | None = None, **kwargs: Any) -> PatternConfig:
    """Config with just the given patterns enabled."""
    base = all_disabled(seed, **kwargs)
    patterns = dict(base.patterns)
    for pid in pattern_ids:
        if pid not in patterns:
            raise ConfigError(f"patterns.{pid}", "unknown pattern id")
        prob = patterns[pid].probability if probability is None else probability
        patterns[pid] = replace(patterns[pid], enabled=True, probability=prob)
    return replace(base, patterns=patterns)


def _is_prob(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and 0.0 <= value <= 1.0


def _validate(cfg: PatternConfig) -> None:
    if isinstance(cfg.seed, bool) or not isinstance(cfg.seed, int) or not 0 <= cfg.seed < 2**64:
        raise ConfigError("seed", f"must be an integer in [0, 2^64), got {cfg.seed!r}")
    for pid, settings in cfg.patterns.items():
        if pid not in PATTERNS:
            raise ConfigError(f"patterns.{pid}", "unknown pattern id")
        if not isinstance(settings.enabled, bool):
            raise ConfigError(f"patterns.{pid}.enabled", "must be a boolean")
        if not _is_prob(settings.probability):
            raise ConfigError(f"patterns.{pid}.probability", f"must be in [0, 1], got {settings.probability!r}")
        allowed = _default_parameters(pid)
        for name, value in settings.parameters.items():
            if name not in allowed:
                raise ConfigError(f"patterns.{pid}.parameters.{name}", "unknown parameter")
            if isinstance(allowed[name], list):
                if not isinstance(value, (list, tuple)) or not all(isinstance(v, str) and ":" in v for v in value):
                    raise ConfigError(f"patterns.{pid}.parameters.{name}", "must be a list of IRIs")
            elif not isinstance(value, str) or not value:
                raise ConfigError(f"patterns.{pid}.parameters.{name}", "must be a non-empty string")
    if not all(isinstance(p, str) and ":" in p for p in cfg.outdated_properties):
        raise ConfigError("outdatedProperties", "must be a list of absolute IRIs")
    size = cfg.max_palette_size
    if isinstance(size, bool) or not isinstance(size, int) or not 2 <= size <= MAX_PALETTE_SIZE:
        raise ConfigError("maxPaletteSize", f"must be an integer in [2, {MAX_PALETTE_SIZE}], got {size!r}")
    if not cfg.delimiters or not all(isinstance(d, str) and d for d in cfg.delimiters):
        raise ConfigError("delimiters", "must be a non-empty list of non-empty strings")


def _settings_from(pid: str, raw: Any) -> PatternSettings:
    where = f"patterns.{pid}"
    if pid not in PATTERNS:
        raise ConfigError(where, "unknown pattern id")
    if not isinstance(raw, dict):
        raise ConfigError(where, "must be an object")
    unknown = set(raw) - _SETTINGS_KEYS
    if unknown:
        raise ConfigError(f"{where}.{sorted(unknown)[0]}", "unknown key")
    base = default_settings(pid)
    params = raw.get("parameters", {})
    if not isinstance(params, dict):
        raise ConfigError(f"{where}.parameters", "must be an object")
    return PatternSettings(
        enabled=raw.get("enabled", base.enabled),
        probability=raw.get("probability", base.probability),
        parameters={**base.parameters, **params},
    )


def from_dict(doc: Mapping[str, Any]) -> PatternConfig:
    if not isinstance(doc, Mapping):
        raise ConfigError("<root>", "config must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    patterns = doc.get("patterns", {})
    if not isinstance(patterns, dict):
        raise ConfigError("patterns", "must be an object")
    outdated = doc.get("outdatedProperties", [])
    delimiters = doc.get("delimiters", list(DEFAULT_DELIMITERS))
    if not isinstance(outdated, list):
        raise ConfigError("outdatedProperties", "must be a list")
    if not isinstance(delimiters, list):
        raise ConfigError("delimiters", "must be a list")
    return PatternConfig(
        seed=doc.get("seed", 0),
        patterns={pid: _settings_from(pid, raw) for pid, raw in patterns.items()},
        outdated_properties=tuple(outdated),
        max_palette_size=doc.get("maxPaletteSize", DEFAULT_PALETTE_SIZE),
        delimiters=tuple(delimiters),
    )


def load_config(source: str | bytes = "") -> PatternConfig:
    """Parse a JSON config document; an empty document yields the defaults."""
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if not source.strip():
        return PatternConfig()
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError("<document>", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_dict(doc)


def to_dict(cfg: PatternConfig) -> dict[str, Any]:
    return {
        "seed": cfg.seed,
        "patterns": {
            pid: {"enabled": s.enabled, "probability": s.probability, "parameters": {k: v if isinstance(v, str) else list(v) for k, v in s.parameters.items()}}
            for pid, s in cfg.patterns.items()
        },
        "outdatedProperties": list(cfg.outdated_properties),
        "maxPaletteSize": cfg.max_palette_size,
        "delimiters": list(cfg.delimiters),
    }


def dump_config(cfg: PatternConfig) -> str:
    return json.dumps(to_dict(cfg), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
