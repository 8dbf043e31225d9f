"""Flat key = value experiment configuration.

One key per line, ``#`` starts a comment, keys are case-insensitive.
Unknown keys, duplicate keys, and malformed values are rejected with the
offending line number; semantic range checks name the key they reject.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields, replace

from .initial_data import KNOWN_DATA
from .littlewood_paley import named_profile

EXPERIMENTS = (
    "selftest",
    "acoustic-decay",
    "incompressible-limit",
    "transport-log",
    "strichartz-sweep",
    "lifespan-table",
)


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = ""
    n: int = 256
    box_length: float = 16.0 * math.pi
    eps: tuple[float, ...] = (0.2, 0.1, 0.05, 0.025)
    t_final: float = 1.0
    gamma: float = 1.4
    data: str = "vortex-pair-ill"
    amplitude: float = 0.5
    seed: int = 0
    profile: str = "from-data"
    cfl: float = 0.4
    max_dt: float = 0.02
    snapshots: int = 11
    out: str = "machlab-out"
    threads: int = 1
    p_space: float = math.inf
    c0: float = 1.0
    t_cap: float = 4.0
    blowup_factor: float = 8.0

    @property
    def gamma_bar(self) -> float:
        return 0.5 * (self.gamma - 1.0)


_KEY_TO_FIELD = {
    "experiment": "experiment", "n": "n", "box_length": "box_length", "eps": "eps",
    "t_final": "t_final", "gamma": "gamma", "data": "data", "amplitude": "amplitude",
    "seed": "seed", "profile": "profile", "cfl": "cfl", "max_dt": "max_dt",
    "snapshots": "snapshots", "out": "out", "threads": "threads", "p": "p_space",
    "c0": "c0", "t_cap": "t_cap", "blowup_factor": "blowup_factor",
}


def _parse_length(text: str) -> float:
    """A float, optionally with a trailing ``pi`` multiplier (``16pi``)."""
    t = text.strip().lower()
    if t.endswith("pi"):
        head = t[:-2].strip()
        return (float(head) if head else 1.0) * math.pi
    return float(t)


def _parse_float(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "infinity"):
        return math.inf
    return float(t)


def parse_config(text: str) -> ExperimentConfig:
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected key = value, got {stripped!r}", lineno)
        key, _, value = stripped.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key not in _KEY_TO_FIELD:
            raise ConfigError(
                f"unknown key {key!r}; known keys: {', '.join(sorted(_KEY_TO_FIELD))}", lineno
            )
        if key in raw:
            raise ConfigError(f"duplicate key {key!r} (first set on line {raw[key][1]})", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        raw[key] = (value, lineno)

    kwargs = {}
    for key, (value, lineno) in raw.items():
        name = _KEY_TO_FIELD[key]
        try:
            if name in ("n", "seed", "snapshots", "threads"):
                kwargs[name] = int(value)
            elif name == "box_length":
                kwargs[name] = _parse_length(value)
            elif name == "eps":
                kwargs[name] = tuple(float(tok) for tok in value.split(",") if tok.strip())
            elif name in ("t_final", "gamma", "amplitude", "cfl", "max_dt", "c0",
                          "t_cap", "blowup_factor", "p_space"):
                kwargs[name] = _parse_float(value)
            else:
                kwargs[name] = value
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", lineno) from None
    config = ExperimentConfig(**kwargs)
    # the experiment usually arrives from the command line, not the file
    validate_config(config, require_experiment="experiment" in kwargs)
    return config


def validate_config(config: ExperimentConfig, require_experiment: bool = True) -> None:
    if require_experiment and config.experiment not in EXPERIMENTS:
        raise ConfigError(
            f"experiment must be one of {', '.join(EXPERIMENTS)}; got {config.experiment!r}"
        )
    n = config.n
    if n < 8 or (n & (n - 1)) != 0:
        raise ConfigError(f"n must be a power of two >= 8, got {n}")
    if not (config.box_length > 0.0):
        raise ConfigError(f"box_length must be positive, got {config.box_length}")
    if not config.eps:
        raise ConfigError("eps needs at least one value")
    for e in config.eps:
        if not (0.0 < e <= 1.0):
            raise ConfigError(f"eps values must lie in (0, 1], got {e}")
    if len(set(config.eps)) != len(config.eps):
        raise ConfigError("eps values must be distinct")
    if not (config.t_final > 0.0):
        raise ConfigError(f"t_final must be positive, got {config.t_final}")
    if not (config.gamma > 1.0):
        raise ConfigError(f"gamma must exceed 1, got {config.gamma}")
    base = config.data.partition(":")[0]
    if base not in KNOWN_DATA:
        raise ConfigError(f"unknown data {config.data!r}; known: {', '.join(KNOWN_DATA)}")
    if not (config.amplitude > 0.0):
        raise ConfigError(f"amplitude must be positive, got {config.amplitude}")
    if config.profile != "from-data":
        try:
            named_profile(config.profile)
        except ValueError as exc:
            raise ConfigError(f"bad profile: {exc}") from None
    if not (0.0 < config.cfl <= 1.0):
        raise ConfigError(f"cfl must lie in (0, 1], got {config.cfl}")
    if not (config.max_dt > 0.0):
        raise ConfigError(f"max_dt must be positive, got {config.max_dt}")
    if config.snapshots < 2:
        raise ConfigError(f"snapshots must be at least 2, got {config.snapshots}")
    if config.threads < 1:
        raise ConfigError(f"threads must be at least 1, got {config.threads}")
    if not (config.p_space >= 2.0):
        raise ConfigError(f"p must lie in [2, inf], got {config.p_space}")
    if not (config.c0 > 0.0):
        raise ConfigError(f"c0 must be positive, got {config.c0}")
    if not (config.t_cap > 0.0):
        raise ConfigError(f"t_cap must be positive, got {config.t_cap}")
    if not (config.blowup_factor > 1.0):
        raise ConfigError(f"blowup_factor must exceed 1, got {config.blowup_factor}")


# execution details that do not change what is computed; two runs of the
# same experiment must hash identically regardless of where the artifacts
# land or how many workers produced them
_VOLATILE_FIELDS = ("out", "threads")


def canonical_dump(config: ExperimentConfig) -> str:
    lines = []
    for f in fields(config):
        if f.name in _VOLATILE_FIELDS:
            continue
        v = getattr(config, f.name)
        if isinstance(v, tuple):
            v = ",".join(f"{x:.17g}" for x in v)
        elif isinstance(v, float):
            v = f"{v:.17g}"
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"


def config_hash(config: ExperimentConfig) -> str:
    return hashlib.sha256(canonical_dump(config).encode()).hexdigest()[:12]


def with_overrides(config: ExperimentConfig, **kwargs) -> ExperimentConfig:
    out = replace(config, **kwargs)
    validate_config(out, require_experiment=bool(out.experiment))
    return out
