"""Service configuration: flags > environment (EMOTRACK_*) > config file.

External platform credentials are accepted from the environment or the
config file only, never from command-line arguments.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Mapping

import yaml

from .errors import ConfigError

ENV_PREFIX = "EMOTRACK_"

PROVIDER_MODES = ("demo", "local", "trello")
STORAGE_MODES = ("memory", "file")


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    token_secret: str = ""
    provider_mode: str = "demo"
    roster_path: str | None = None
    trello_key: str | None = None
    trello_token: str | None = None
    trello_boards: tuple[str, ...] = ()
    trello_base_url: str | None = None
    storage_mode: str = "memory"
    db_path: str | None = None
    role_cache_ttl: float = 60.0
    stage_cache_ttl: float = 300.0
    cors_origins: tuple[str, ...] = field(default_factory=tuple)

    def validate(self) -> "ServiceConfig":
        problems: list[str] = []
        if not self.token_secret:
            problems.append("token_secret must be non-empty (EMOTRACK_TOKEN_SECRET)")
        if self.provider_mode not in PROVIDER_MODES:
            problems.append(f"provider mode must be one of {PROVIDER_MODES}, got {self.provider_mode!r}")
        if self.provider_mode == "local" and not self.roster_path:
            problems.append("local provider mode requires a roster path")
        if self.provider_mode == "trello":
            if not (self.trello_key and self.trello_token):
                problems.append("trello provider mode requires trello key and token")
            if not self.trello_boards:
                problems.append("trello provider mode requires at least one board id")
        if self.provider_mode != "local" and self.roster_path:
            problems.append("roster path given but provider mode is not 'local'")
        if self.provider_mode != "trello" and (self.trello_key or self.trello_token):
            problems.append("trello credentials given but provider mode is not 'trello'")
        if self.storage_mode not in STORAGE_MODES:
            problems.append(f"storage mode must be one of {STORAGE_MODES}, got {self.storage_mode!r}")
        if self.storage_mode == "file" and not self.db_path:
            problems.append("file storage mode requires a database path")
        if self.storage_mode != "file" and self.db_path:
            problems.append("database path given but storage mode is not 'file'")
        if not 0 < self.port < 65536:
            problems.append(f"port out of range: {self.port}")
        if self.role_cache_ttl < 0 or self.stage_cache_ttl < 0:
            problems.append("cache TTLs must be >= 0")
        if problems:
            raise ConfigError(problems)
        return self


def _from_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise ConfigError([f"cannot read config file {path!r}: {exc}"]) from exc
    except yaml.YAMLError as exc:
        raise ConfigError([f"cannot parse config file {path!r}: {exc}"]) from exc
    if not isinstance(document, Mapping):
        raise ConfigError([f"config file {path!r} must contain a mapping"])

    values: dict = {}
    listen = document.get("listen") or {}
    if "host" in listen:
        values["host"] = str(listen["host"])
    if "port" in listen:
        values["port"] = _int(listen["port"], "listen.port")
    if "token_secret" in document:
        values["token_secret"] = str(document["token_secret"])

    provider = document.get("provider") or {}
    if "mode" in provider:
        values["provider_mode"] = str(provider["mode"])
    if "roster" in provider:
        values["roster_path"] = str(provider["roster"])
    if "key" in provider:
        values["trello_key"] = str(provider["key"])
    if "token" in provider:
        values["trello_token"] = str(provider["token"])
    if "boards" in provider:
        values["trello_boards"] = tuple(str(b) for b in provider["boards"] or ())
    if "base_url" in provider:
        values["trello_base_url"] = str(provider["base_url"])

    storage = document.get("storage") or {}
    if "mode" in storage:
        values["storage_mode"] = str(storage["mode"])
    if "path" in storage:
        values["db_path"] = str(storage["path"])

    for key in ("role_cache_ttl", "stage_cache_ttl"):
        if key in document:
            values[key] = _float(document[key], key)
    if "cors_origins" in document:
        values["cors_origins"] = tuple(str(o) for o in document["cors_origins"] or ())
    return values


_ENV_KEYS = {
    "HOST": ("host", str),
    "PORT": ("port", "int"),
    "TOKEN_SECRET": ("token_secret", str),
    "PROVIDER": ("provider_mode", str),
    "ROSTER": ("roster_path", str),
    "TRELLO_KEY": ("trello_key", str),
    "TRELLO_TOKEN": ("trello_token", str),
    "TRELLO_BOARDS": ("trello_boards", "csv"),
    "TRELLO_BASE_URL": ("trello_base_url", str),
    "STORAGE": ("storage_mode", str),
    "DB_PATH": ("db_path", str),
    "ROLE_CACHE_TTL": ("role_cache_ttl", "float"),
    "STAGE_CACHE_TTL": ("stage_cache_ttl", "float"),
    "CORS_ORIGINS": ("cors_origins", "csv"),
}


def _from_env(env: Mapping[str, str]) -> dict:
    values: dict = {}
    for suffix, (name, kind) in _ENV_KEYS.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw is None or raw == "":
            continue
        if kind == "int":
            values[name] = _int(raw, ENV_PREFIX + suffix)
        elif kind == "float":
            values[name] = _float(raw, ENV_PREFIX + suffix)
        elif kind == "csv":
            values[name] = tuple(part.strip() for part in raw.split(",") if part.strip())
        else:
            values[name] = raw
    return values


def _int(value, label: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError([f"{label} must be an integer, got {value!r}"]) from None


def _float(value, label: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError([f"{label} must be a number, got {value!r}"]) from None


def load_config(
    config_path: str | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> ServiceConfig:
    """Merge defaults, config file, environment and flag overrides.

    Later sources win. The result is validated; callers get a ConfigError
    listing every problem at once.
    """
    env = os.environ if env is None else env
    values: dict = {}
    if config_path:
        values.update(_from_file(config_path))
    values.update(_from_env(env))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return replace(ServiceConfig(), **values).validate()
