"""Configurazione: default, config.yaml, file di opzioni JSON e variabili d'ambiente."""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError

_LOGGER = logging.getLogger(__name__)

ENV_PREFIX = "MOMENTS_"
CONFIG_PATH = Path(__file__).parent.parent.parent / "config.yaml"
LOG_LEVELS = ("trace", "debug", "info", "warning", "error")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclass(frozen=True)
class DepthProfile:
    """Dimensioni delle suite di verifica."""
    name: str
    route_agreement_k: int
    singleton_k: int
    orbit_k: int
    noncrossing_k: int
    ccr_length: int
    entry_length: int
    entry_samples: int
    hankel_size: int
    convolution_k: int
    bound_k: int

    def within_order_cap(self, order_cap: int) -> "DepthProfile":
        """Profilo con gli ordini dei momenti limitati a order_cap."""
        return replace(
            self,
            route_agreement_k=min(self.route_agreement_k, order_cap),
            bound_k=min(self.bound_k, order_cap),
            hankel_size=min(self.hankel_size, order_cap // 2 + 1),
        )


DEPTH_PROFILES: Dict[str, DepthProfile] = {
    "quick": DepthProfile("quick", 4, 4, 4, 6, 6, 6, 10, 3, 4, 4),
    "default": DepthProfile("default", 8, 6, 8, 10, 8, 8, 40, 4, 8, 8),
    "full": DepthProfile("full", 10, 6, 8, 10, 8, 8, 100, 4, 8, 10),
}


@dataclass(frozen=True)
class AppConfig:
    """Opzioni dell'applicazione."""
    log_level: str = "info"
    max_order_cap: int = 12
    enumeration_cap: int = 14
    bruteforce_limit: int = 10 ** 7
    depth_profile: str = "default"
    threads: int = 1
    converge_max_k: int = 8
    converge_max_n: int = 10 ** 6
    host: str = "0.0.0.0"
    port: int = 8099

    def __post_init__(self):
        if self.log_level.lower() not in LOG_LEVELS:
            raise ConfigError(f"Unknown log level {self.log_level!r}")
        if self.depth_profile not in DEPTH_PROFILES:
            raise ConfigError(f"Unknown depth profile {self.depth_profile!r}")
        if self.max_order_cap > self.enumeration_cap:
            raise ConfigError(
                f"max_order_cap {self.max_order_cap} exceeds enumeration_cap {self.enumeration_cap}"
            )
        for name in ("max_order_cap", "enumeration_cap", "threads", "converge_max_k",
                     "converge_max_n", "bruteforce_limit", "port"):
            if getattr(self, name) < 1:
                raise ConfigError(f"Option {name} must be positive")

    @property
    def profile(self) -> DepthProfile:
        return DEPTH_PROFILES[self.depth_profile]

    @property
    def logging_level(self) -> int:
        # "trace" non esiste in logging: equivale a DEBUG
        level = self.log_level.upper()
        return logging.DEBUG if level == "TRACE" else getattr(logging, level)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _coerce(name: str, raw: Any, default: Any) -> Any:
    if isinstance(default, bool):
        if isinstance(raw, str):
            return raw.strip().lower() in ("1", "true", "yes", "on")
        return bool(raw)
    if isinstance(default, int):
        try:
            return int(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"Option {name} expects an integer, got {raw!r}")
    return str(raw)


def _read_yaml_options(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Cannot parse {path}: {e}")
    return dict(data.get("options") or {})


def load_config(path: Optional[Path] = None, env: Optional[Dict[str, str]] = None,
                overrides: Optional[Dict[str, Any]] = None) -> AppConfig:
    """Unisce default, config.yaml, file MOMENTS_OPTIONS_FILE, ambiente e override espliciti."""
    env = os.environ if env is None else env
    defaults = AppConfig()
    known = {f.name: getattr(defaults, f.name) for f in fields(AppConfig)}
    merged: Dict[str, Any] = dict(known)

    config_path = Path(path) if path else CONFIG_PATH
    for key, value in _read_yaml_options(config_path).items():
        if key in known:
            merged[key] = value
        else:
            _LOGGER.warning(f"Ignoring unknown option '{key}' in {config_path}")

    options_file = env.get(f"{ENV_PREFIX}OPTIONS_FILE")
    if options_file:
        try:
            with open(options_file, "r", encoding="utf-8") as f:
                user_config = json.load(f)
            _LOGGER.info(f"Loaded options file: {options_file}")
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read options file {options_file}: {e}")
        merged.update({k: v for k, v in user_config.items() if k in known})

    for key in known:
        raw = env.get(f"{ENV_PREFIX}{key.upper()}")
        if raw is not None:
            merged[key] = raw

    for key, value in (overrides or {}).items():
        if value is not None:
            if key not in known:
                raise ConfigError(f"Unknown option {key!r}")
            merged[key] = value

    config = AppConfig(**{k: _coerce(k, v, known[k]) for k, v in merged.items()})
    _LOGGER.debug(f"Effective configuration: {config.to_dict()}")
    return config


def get_version(path: Optional[Path] = None) -> str:
    """Legge la versione da config.yaml."""
    from . import __version__

    config_path = Path(path) if path else CONFIG_PATH
    try:
        if config_path.exists():
            with open(config_path, "r", encoding="utf-8") as f:
                config = yaml.safe_load(f) or {}
                return str(config.get("version", __version__))
    except Exception as e:
        _LOGGER.warning(f"Could not read version from config.yaml: {e}")
    return __version__


def setup_logging(level: str = "info", handler: Optional[logging.Handler] = None) -> None:
    numeric = logging.DEBUG if level.upper() == "TRACE" else getattr(logging, level.upper(), logging.INFO)
    kwargs: Dict[str, Any] = {"level": numeric, "force": True}
    if handler is not None:
        kwargs["handlers"] = [handler]
        kwargs["format"] = "%(name)s - %(message)s"
    else:
        kwargs["format"] = LOG_FORMAT
    logging.basicConfig(**kwargs)
