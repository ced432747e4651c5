"""Application configuration for the session service and CLI.

Config files are TOML (or JSON, chosen by extension)::

    [server]
    host = "127.0.0.1"
    port = 8000

    [limits]
    row_cap = 1000
    timeout_ms = 5000

    [linking]
    min_similarity = 0.8

    [provider]
    kind = "canned"            # canned | canned_with_mistakes | http
    # url = "http://..."       # required for kind = "http"

    [clause_backend]
    kind = "echo"              # refuse | echo | http
    # url = "http://..."       # required for kind = "http"

    [databases]
    travel_mobility = "/data/travel_mobility.sqlite"

The ``SQLUCID_CONFIG`` environment variable supplies the default path.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib as _toml
except ImportError:  # Python < 3.11
    import tomli as _toml


CONFIG_ENV_VAR = "SQLUCID_CONFIG"

PROVIDER_KINDS = ("canned", "canned_with_mistakes", "http")
CLAUSE_BACKEND_KINDS = ("refuse", "echo", "http")


class ConfigError(ValueError):
    """The configuration file is missing, malformed, or inconsistent."""


@dataclass(frozen=True)
class AppConfig:
    databases: dict[str, str] = field(default_factory=dict)
    row_cap: int = 1000
    timeout_ms: int = 5000
    min_similarity: float = 0.8
    provider_kind: str = "canned_with_mistakes"
    provider_url: str | None = None
    provider_timeout_s: float = 30.0
    clause_backend_kind: str = "echo"
    clause_backend_url: str | None = None
    host: str = "127.0.0.1"
    port: int = 8000

    def __post_init__(self):
        if self.provider_kind not in PROVIDER_KINDS:
            raise ConfigError(
                f"provider.kind must be one of {PROVIDER_KINDS}, got {self.provider_kind!r}"
            )
        if self.provider_kind == "http" and not self.provider_url:
            raise ConfigError("provider.kind = 'http' needs provider.url")
        if self.clause_backend_kind not in CLAUSE_BACKEND_KINDS:
            raise ConfigError(
                f"clause_backend.kind must be one of {CLAUSE_BACKEND_KINDS}, "
                f"got {self.clause_backend_kind!r}"
            )
        if self.clause_backend_kind == "http" and not self.clause_backend_url:
            raise ConfigError("clause_backend.kind = 'http' needs clause_backend.url")
        if self.row_cap < 1:
            raise ConfigError("limits.row_cap must be at least 1")
        if self.timeout_ms < 1:
            raise ConfigError("limits.timeout_ms must be at least 1")
        if not 0.0 < self.min_similarity <= 1.0:
            raise ConfigError("linking.min_similarity must be in (0, 1]")


def _read_raw(path: Path) -> dict:
    try:
        data = path.read_bytes()
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err
    try:
        if path.suffix.lower() == ".json":
            raw = json.loads(data.decode("utf-8"))
        else:
            raw = _toml.loads(data.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as err:
        raise ConfigError(f"cannot parse config file {path}: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a table/object at top level")
    return raw


def _section(raw: dict, name: str) -> dict:
    value = raw.get(name, {})
    if not isinstance(value, dict):
        raise ConfigError(f"config section [{name}] must be a table/object")
    return value


def load_config(path: str | os.PathLike | None = None) -> AppConfig:
    """Load configuration from ``path`` (or ``$SQLUCID_CONFIG``, or defaults)."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return AppConfig()
    raw = _read_raw(Path(path))

    server = _section(raw, "server")
    limits = _section(raw, "limits")
    linking = _section(raw, "linking")
    provider = _section(raw, "provider")
    clause_backend = _section(raw, "clause_backend")
    databases = _section(raw, "databases")

    for database_id, db_path in databases.items():
        if not isinstance(db_path, str):
            raise ConfigError(f"databases.{database_id} must be a path string")

    try:
        return AppConfig(
            databases=dict(databases),
            row_cap=int(limits.get("row_cap", 1000)),
            timeout_ms=int(limits.get("timeout_ms", 5000)),
            min_similarity=float(linking.get("min_similarity", 0.8)),
            provider_kind=str(provider.get("kind", "canned_with_mistakes")),
            provider_url=provider.get("url"),
            provider_timeout_s=float(provider.get("timeout_s", 30.0)),
            clause_backend_kind=str(clause_backend.get("kind", "echo")),
            clause_backend_url=clause_backend.get("url"),
            host=str(server.get("host", "127.0.0.1")),
            port=int(server.get("port", 8000)),
        )
    except (TypeError, ValueError) as err:
        if isinstance(err, ConfigError):
            raise
        raise ConfigError(f"bad config value: {err}") from err


def demo_config(workdir: str | os.PathLike) -> AppConfig:
    """Materialize the bundled demo databases and return a config using them."""
    from .fixtures import DATABASES, build_database

    workdir = Path(workdir)
    databases = {}
    for name in DATABASES:
        db_path = workdir / f"{name}.sqlite"
        if not db_path.exists():
            build_database(name, db_path)
        databases[name] = str(db_path)
    return AppConfig(databases=databases)


def make_provider(config: AppConfig):
    """Instantiate the question-to-SQL provider the config names."""
    from .nlq import CannedNlqProvider, HttpNlqProvider

    if config.provider_kind == "canned":
        return CannedNlqProvider(with_mistakes=False)
    if config.provider_kind == "canned_with_mistakes":
        return CannedNlqProvider(with_mistakes=True)
    return HttpNlqProvider(config.provider_url, config.provider_timeout_s)


def make_clause_backend(config: AppConfig):
    """Instantiate the step-to-clause backend the config names."""
    from .refine import EchoTemplateBackend, HttpClauseBackend, RefusingBackend

    if config.clause_backend_kind == "refuse":
        return RefusingBackend()
    if config.clause_backend_kind == "echo":
        return EchoTemplateBackend()
    return HttpClauseBackend(config.clause_backend_url)


def exec_limits(config: AppConfig):
    from .gateway import ExecLimits

    return ExecLimits(row_cap=config.row_cap, timeout_ms=config.timeout_ms)
