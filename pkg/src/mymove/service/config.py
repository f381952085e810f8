"""Service configuration: YAML file, overridden by MYMOVE_* environment."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Optional

import yaml


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: Path = Path("mymove-data")
    host: str = "127.0.0.1"
    port: int = 8600
    token: str = "dev-token"
    lexicon_path: Optional[Path] = None
    schedule_seed: int = 1


_ENV_KEYS = {
    "MYMOVE_DATA_DIR": ("data_dir", Path),
    "MYMOVE_HOST": ("host", str),
    "MYMOVE_PORT": ("port", int),
    "MYMOVE_TOKEN": ("token", str),
    "MYMOVE_LEXICON": ("lexicon_path", Path),
    "MYMOVE_SCHEDULE_SEED": ("schedule_seed", int),
}

_FILE_KEYS = {
    "data_dir": Path,
    "host": str,
    "port": int,
    "token": str,
    "lexicon_path": Path,
    "schedule_seed": int,
}


def load_config(
    path: Optional[Path] = None, env: Optional[Mapping[str, str]] = None
) -> ServiceConfig:
    cfg = ServiceConfig()
    if path is not None:
        try:
            raw = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config {path} must be a mapping")
        unknown = set(raw) - set(_FILE_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        fields = {}
        for key, value in raw.items():
            try:
                fields[key] = _FILE_KEYS[key](value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"config key {key}: {exc}") from exc
        cfg = replace(cfg, **fields)

    env = os.environ if env is None else env
    overrides = {}
    for env_key, (field_name, cast) in _ENV_KEYS.items():
        if env_key in env:
            try:
                overrides[field_name] = cast(env[env_key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{env_key}: {exc}") from exc
    return replace(cfg, **overrides)
