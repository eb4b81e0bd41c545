"""
Settings, caps and per-invocation run configuration.
"""

import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional

import psutil
import yaml

from forddisc.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MAX_ORDER_ENV = "FORD_DISC_MAX_ORDER"
HARD_MAX_ORDER = 30
DEFAULT_CONFIG_PATH = Path.home() / ".forddisc" / "config.yaml"


class Method(Enum):
    FKM = "fkm"
    GREEDY = "greedy"


class OutputFormat(Enum):
    BITS = "bits"
    PACKED = "packed"
    CSV = "csv"
    JSON = "json"


def detect_thread_count() -> int:
    """Physical core count, falling back to logical cores, never below one"""
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True)
    return max(1, cores or 1)


@dataclass
class OracleConfig:
    """Caps for the brute-force reference implementations"""
    max_word_length: int = 22
    max_debruijn_order: int = 4
    max_ell_order: int = 20

    def __post_init__(self):
        if min(self.max_word_length, self.max_debruijn_order, self.max_ell_order) <= 0:
            raise InvalidArgumentError("oracle caps must be positive")


@dataclass
class VerifyGrid:
    """Parameter grid swept by `forddisc verify`"""
    lemma_k_min: int = 3
    lemma_k_max: int = 10
    lemma_n_max: int = 200
    lemma5_n_max: int = 500
    bound_k_min: int = 2
    bound_k_max: int = 10
    bound_m_max: int = 40
    root_k_max: int = 32
    construction_n_max: int = 16
    block_primes: List[int] = field(default_factory=lambda: [5, 7, 11, 13, 17, 19, 23])
    weighted_n_max: int = 17
    oracle_k_max: int = 6
    oracle_m_max: int = 20


@dataclass
class Settings:
    """Caps and tolerances for generation, analysis and verification"""
    stream_max_order: int = 26
    greedy_max_order: int = 26
    lyndon_max_order: int = 24
    weighted_max_order: int = 22
    root_tolerance: float = 1e-12
    lemma4_slack: float = 1e-9
    threads: int = field(default_factory=detect_thread_count)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    grid: VerifyGrid = field(default_factory=VerifyGrid)

    def __post_init__(self):
        if not 1 <= self.stream_max_order <= HARD_MAX_ORDER:
            raise InvalidArgumentError(
                f"stream_max_order must lie in 1..{HARD_MAX_ORDER}, got {self.stream_max_order}"
            )
        if self.threads < 1:
            raise InvalidArgumentError("threads must be at least 1")
        if self.root_tolerance <= 0 or self.lemma4_slack <= 0:
            raise InvalidArgumentError("tolerances must be positive")

    @classmethod
    def get_defaults(cls) -> "Settings":
        """Default settings with the environment override applied"""
        return cls.from_environment(cls())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Settings":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            logger.warning("Ignoring unknown settings keys: %s", ", ".join(sorted(unknown)))
        values = {key: value for key, value in data.items() if key in known}
        if isinstance(values.get("oracle"), dict):
            values["oracle"] = OracleConfig(**values["oracle"])
        if isinstance(values.get("grid"), dict):
            values["grid"] = VerifyGrid(**values["grid"])
        return cls(**values)

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "Settings":
        """Load settings from a YAML file, falling back to defaults"""
        config_path = Path(config_path or DEFAULT_CONFIG_PATH)
        if not config_path.exists():
            return cls.get_defaults()

        try:
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            settings = cls.from_dict(data)
        except (OSError, yaml.YAMLError, TypeError) as e:
            logger.warning("Error loading settings from %s: %s. Using defaults.", config_path, e)
            return cls.get_defaults()
        return cls.from_environment(settings)

    @classmethod
    def from_environment(cls, base: "Settings") -> "Settings":
        """Apply FORD_DISC_MAX_ORDER on top of `base`"""
        raw = os.environ.get(MAX_ORDER_ENV)
        if raw is None or not raw.strip():
            return base
        try:
            order = int(raw)
        except ValueError:
            raise InvalidArgumentError(f"{MAX_ORDER_ENV} must be an integer, got {raw!r}") from None
        if not 1 <= order <= HARD_MAX_ORDER:
            raise InvalidArgumentError(f"{MAX_ORDER_ENV} must lie in 1..{HARD_MAX_ORDER}, got {order}")
        logger.debug("Streaming cap overridden to %d by %s", order, MAX_ORDER_ENV)
        return replace(base, stream_max_order=order)

    def save(self, config_path: Path):
        """Save settings to a YAML file"""
        config_path = Path(config_path)
        config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(config_path, "w", encoding="utf-8") as f:
            yaml.safe_dump(asdict(self), f, sort_keys=True)


@dataclass
class RunConfig:
    """One CLI invocation: the subcommand, its parameters and the caps in force.

    `flags` holds the boolean switches of the subcommand (for example
    "blocks", "check", "rho" or a verify section name).
    """
    subcommand: str
    order: Optional[int] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    k: Optional[int] = None
    method: Method = Method.FKM
    output_format: OutputFormat = OutputFormat.BITS
    output_path: Optional[Path] = None
    threads: Optional[int] = None
    flags: FrozenSet[str] = frozenset()
    settings: Settings = field(default_factory=Settings.get_defaults)

    def __post_init__(self):
        if self.threads is not None and self.threads < 1:
            raise InvalidArgumentError("thread count must be at least 1")

    def has(self, flag: str) -> bool:
        return flag in self.flags

    @property
    def workers(self) -> int:
        """Worker processes: the explicit thread count, else the configured one"""
        return self.settings.threads if self.threads is None else self.threads
