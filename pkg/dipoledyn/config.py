"""
Run configuration: environment settings (the entry points load .env) and the JSON
RunConfig document the CLI reads with --config.
"""
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field, fields, replace

from .errors import ConfigError
from .utils.helpers import normalize_key

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


# -----------------------------------------------------------------------
# ENVIRONMENT
# -----------------------------------------------------------------------

def thread_cap():
    """DIPOLEDYN_THREADS, else the machine's CPU count."""
    raw = os.getenv("DIPOLEDYN_THREADS")
    if raw is None or not raw.strip():
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"DIPOLEDYN_THREADS must be a positive integer, got {raw!r}.") from None
    if value < 1:
        raise ConfigError(f"DIPOLEDYN_THREADS must be a positive integer, got {raw!r}.")
    return value


def log_level():
    return os.getenv("DIPOLEDYN_LOG_LEVEL", "WARNING").upper()


def configure_logging(level=None):
    """One stderr handler on the package logger; each call replaces it, so it follows sys.stderr."""
    level = (level or log_level()).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"Unknown log level {level!r}.")
    pkg_logger = logging.getLogger("dipoledyn")
    # the previous stream may already be closed; never flush it
    for old in list(pkg_logger.handlers):
        pkg_logger.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    pkg_logger.addHandler(handler)
    pkg_logger.propagate = False
    pkg_logger.setLevel(level)
    return pkg_logger


# -----------------------------------------------------------------------
# RUN CONFIG SECTIONS
# -----------------------------------------------------------------------

@dataclass(frozen=True)
class LaserConfig:
    rabi: float = 0.25
    detuning_ratio: float = 1.0
    rabi_ratio: float = 1.0
    klr: float = 0.2


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = "rk45"
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_dt: float = 2.0 * math.pi / 50.0
    sample_every: float = 0.02


@dataclass(frozen=True)
class DecayConfig:
    # A / Im C; 0 switches decay off
    a_over_imc: float = 0.0


@dataclass(frozen=True)
class SweepConfig:
    kind: str = "state-prep"
    min: float = None
    max: float = None
    points: int = 200
    tmax: float = 20.0
    pulse_length: str = "fixed"


@dataclass(frozen=True)
class ScenarioConfig:
    # unset fields come from the named preset
    name: str = "rydberg"
    lambda0: float = None
    k0r: float = None
    mass: float = None
    theta: float = None
    einstein_a: float = None


@dataclass(frozen=True)
class GateConfig:
    ion: int = 1
    angle: float = math.pi
    model: str = "prescribed"
    initial: str = None


@dataclass(frozen=True)
class OutputConfig:
    out: str = None


@dataclass(frozen=True)
class RunConfig:
    laser: LaserConfig = field(default_factory=LaserConfig)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    decay: DecayConfig = field(default_factory=DecayConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    gate: GateConfig = field(default_factory=GateConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


SECTIONS = {f.name: f.default_factory for f in fields(RunConfig)}

# CLI flag dest -> (section, field)
FLAG_TARGETS = {
    "rabi": ("laser", "rabi"),
    "detuning_ratio": ("laser", "detuning_ratio"),
    "rabi_ratio": ("laser", "rabi_ratio"),
    "klr": ("laser", "klr"),
    "method": ("integrator", "method"),
    "decay_a_over_imc": ("decay", "a_over_imc"),
    "kind": ("sweep", "kind"),
    "min": ("sweep", "min"),
    "max": ("sweep", "max"),
    "points": ("sweep", "points"),
    "tmax": ("sweep", "tmax"),
    "pulse_length": ("sweep", "pulse_length"),
    "scenario": ("scenario", "name"),
    "lambda0": ("scenario", "lambda0"),
    "k0r": ("scenario", "k0r"),
    "mass": ("scenario", "mass"),
    "theta": ("scenario", "theta"),
    "einstein_a": ("scenario", "einstein_a"),
    "ion": ("gate", "ion"),
    "angle": ("gate", "angle"),
    "model": ("gate", "model"),
    "initial": ("gate", "initial"),
    "out": ("output", "out"),
}


def _coerce(section, name, kind, value):
    if value is None:
        return None
    try:
        if kind is float:
            if isinstance(value, bool):
                raise TypeError
            return float(value)
        if kind is int:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise TypeError
            return int(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{section}.{name} expects {kind.__name__}, got {value!r}.") from None


def _build_section(section, values):
    if not isinstance(values, dict):
        raise ConfigError(f"Section {section!r} must be an object, got {type(values).__name__}.")
    base = SECTIONS[section]()
    types = {f.name: f.type for f in fields(base)}
    updates = {}
    for raw_key, value in values.items():
        key = normalize_key(raw_key)
        if key not in types:
            raise ConfigError(f"Unknown key {raw_key!r} in section {section!r}; expected one of {sorted(types)}.")
        updates[key] = _coerce(section, key, types[key], value)
    return replace(base, **updates)


# -----------------------------------------------------------------------
# LOAD AND MERGE
# -----------------------------------------------------------------------

def config_from_dict(doc):
    if not isinstance(doc, dict):
        raise ConfigError("Configuration document must be a JSON object.")
    sections = {}
    for raw_key, values in doc.items():
        key = normalize_key(raw_key)
        if key not in SECTIONS:
            raise ConfigError(f"Unknown section {raw_key!r}; expected one of {sorted(SECTIONS)}.")
        sections[key] = _build_section(key, values)
    return RunConfig(**sections)


def load_config(path=None):
    """Read a RunConfig from a JSON file; None gives the defaults."""
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Config file {path} is not valid JSON: {exc}") from None
    logger.info("Loaded config from %s", path)
    return config_from_dict(doc)


def merge_flags(cfg, overrides):
    """
    Apply flag values on top of `cfg`. Only non-None values count, so a
    flag the user did not pass never masks the file.
    """
    per_section = {}
    for dest, value in overrides.items():
        if value is None or dest not in FLAG_TARGETS:
            continue
        section, name = FLAG_TARGETS[dest]
        per_section.setdefault(section, {})[name] = value

    updates = {}
    for section, values in per_section.items():
        current = getattr(cfg, section)
        types = {f.name: f.type for f in fields(current)}
        coerced = {k: _coerce(section, k, types[k], v) for k, v in values.items()}
        updates[section] = replace(current, **coerced)
    return replace(cfg, **updates)
