"""Engine configuration: provider registry, parser rules, service knobs.

A single JSON file configures the engine.  Provider backends default to
the fixture corpus; HTTP backends are declared with an endpoint template
plus a declarative response mapping.  When no config file is given, a
registry can be discovered from the corpus layout itself (one provider
per ``social/<name>`` and ``web/<name>`` directory).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping

from .core import SourceId, SourceKind, Threshold
from .parsers import DEFAULT_BLOG_HOSTS, DEFAULT_FIELD_MAPPING, FieldMappingRules
from .providers import (
    DEFAULT_RATE_RPS,
    DEFAULT_TIMEOUT_MS,
    FixtureBackend,
    HttpBackend,
    ProviderDescriptor,
    validate_registry,
)

DEFAULT_EPS = 10
DEFAULT_CACHE_TTL_S = 3600


class ConfigError(Exception):
    """The config file or corpus layout cannot be used."""


@dataclass(frozen=True)
class EngineConfig:
    corpus_path: Path
    providers: tuple[ProviderDescriptor, ...]
    eps: Threshold = Threshold(DEFAULT_EPS)
    field_mapping: FieldMappingRules = DEFAULT_FIELD_MAPPING
    blog_hosts: tuple[str, ...] = DEFAULT_BLOG_HOSTS
    cache_ttl_s: int = DEFAULT_CACHE_TTL_S
    log_path: Path | None = None
    rate_limit_rps: float = DEFAULT_RATE_RPS

    def with_overrides(
        self,
        *,
        corpus_path: Path | None = None,
        log_path: Path | None = None,
        cache_ttl_s: int | None = None,
    ) -> "EngineConfig":
        config = self
        if corpus_path is not None:
            # Fixture backends bound to the old corpus follow the override.
            providers = tuple(
                replace(d, backend=FixtureBackend(corpus_path))
                if isinstance(d.backend, FixtureBackend)
                and Path(d.backend.corpus_path) == Path(config.corpus_path)
                else d
                for d in config.providers
            )
            config = replace(config, corpus_path=corpus_path, providers=providers)
        if log_path is not None:
            config = replace(config, log_path=log_path)
        if cache_ttl_s is not None:
            config = replace(config, cache_ttl_s=cache_ttl_s)
        return config


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _parse_backend(raw: Any, corpus_path: Path, provider: str):
    _require(isinstance(raw, Mapping), f"provider {provider}: backend must be an object")
    backend_type = raw.get("type", "fixture")
    if backend_type == "fixture":
        return FixtureBackend(Path(raw.get("corpus_path") or corpus_path))
    if backend_type == "http":
        template = raw.get("endpoint_template")
        _require(
            isinstance(template, str) and bool(template),
            f"provider {provider}: http backend needs endpoint_template",
        )
        mapping = raw.get("response_mapping", {})
        _require(
            isinstance(mapping, Mapping),
            f"provider {provider}: response_mapping must be an object",
        )
        return HttpBackend(endpoint_template=template, response_mapping=dict(mapping))
    raise ConfigError(f"provider {provider}: unknown backend type {backend_type!r}")


def _parse_provider(raw: Any, corpus_path: Path, default_rate: float) -> ProviderDescriptor:
    _require(isinstance(raw, Mapping), "each provider entry must be an object")
    name = raw.get("name")
    _require(isinstance(name, str) and bool(name), "provider name must be a non-empty string")
    kind = raw.get("kind")
    _require(kind in ("social", "web"), f"provider {name}: kind must be 'social' or 'web'")
    priority = raw.get("priority")
    _require(isinstance(priority, int) and priority >= 1, f"provider {name}: bad priority")
    eps_override = raw.get("eps_override")
    try:
        return ProviderDescriptor(
            id=SourceId(kind=SourceKind(kind), provider_name=name),
            priority=priority,
            backend=_parse_backend(raw.get("backend", {}), corpus_path, name),
            timeout_ms=raw.get("timeout_ms", DEFAULT_TIMEOUT_MS),
            eps_override=Threshold(eps_override) if eps_override is not None else None,
            rate_rps=raw.get("rate_rps", default_rate),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"provider {name}: {exc}") from exc


def _parse_field_mapping(raw: Any) -> FieldMappingRules:
    _require(isinstance(raw, Mapping), "field_mapping must be an object")
    kwargs = {}
    for slot in ("name_keys", "gender_keys", "place_keys", "image_keys"):
        if slot in raw:
            keys = raw[slot]
            _require(
                isinstance(keys, list) and keys and all(isinstance(k, str) for k in keys),
                f"field_mapping.{slot} must be a non-empty list of strings",
            )
            kwargs[slot] = tuple(keys)
    return FieldMappingRules(**kwargs)


def load_config(
    path: Path | str,
    *,
    corpus_override: Path | None = None,
    log_override: Path | None = None,
) -> EngineConfig:
    """Load and validate the engine config file (paths resolved from CWD)."""
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    _require(isinstance(document, Mapping), "config root must be an object")

    corpus_path = Path(corpus_override or document.get("corpus", "corpus"))
    default_rate = document.get("rate_limit_rps", DEFAULT_RATE_RPS)
    _require(
        isinstance(default_rate, (int, float)) and default_rate > 0,
        "rate_limit_rps must be a positive number",
    )

    raw_providers = document.get("providers")
    _require(
        isinstance(raw_providers, list) and bool(raw_providers),
        "config must declare a non-empty providers array",
    )
    providers = tuple(_parse_provider(p, corpus_path, default_rate) for p in raw_providers)
    try:
        validate_registry(providers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    eps = document.get("eps", DEFAULT_EPS)
    try:
        threshold = Threshold(eps)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad eps: {exc}") from exc

    blog_hosts = document.get("blog_hosts", list(DEFAULT_BLOG_HOSTS))
    _require(
        isinstance(blog_hosts, list) and all(isinstance(h, str) for h in blog_hosts),
        "blog_hosts must be a list of strings",
    )

    ttl = document.get("cache_ttl_s", DEFAULT_CACHE_TTL_S)
    _require(isinstance(ttl, int) and ttl >= 0, "cache_ttl_s must be a non-negative integer")

    log_path = log_override or document.get("log_path")

    return EngineConfig(
        corpus_path=corpus_path,
        providers=providers,
        eps=threshold,
        field_mapping=_parse_field_mapping(document.get("field_mapping", {})),
        blog_hosts=tuple(blog_hosts),
        cache_ttl_s=ttl,
        log_path=Path(log_path) if log_path else None,
        rate_limit_rps=float(default_rate),
    )


def config_from_corpus(
    corpus_path: Path | str,
    *,
    eps: int = DEFAULT_EPS,
    rate_limit_rps: float = DEFAULT_RATE_RPS,
    log_path: Path | None = None,
) -> EngineConfig:
    """Build a registry by discovering providers from the corpus layout.

    Social providers come first (alphabetical), then web providers;
    priorities follow that order starting at 1.
    """
    corpus_path = Path(corpus_path)
    _require(corpus_path.is_dir(), f"corpus path {corpus_path} is not a directory")

    def subdirs(kind: str) -> list[str]:
        root = corpus_path / kind
        if not root.is_dir():
            return []
        return sorted(p.name for p in root.iterdir() if p.is_dir())

    providers: list[ProviderDescriptor] = []
    backend = FixtureBackend(corpus_path)
    for name in subdirs("social"):
        providers.append(
            ProviderDescriptor(
                id=SourceId(kind=SourceKind.SOCIAL, provider_name=name),
                priority=len(providers) + 1,
                backend=backend,
                rate_rps=rate_limit_rps,
            )
        )
    for name in subdirs("web"):
        providers.append(
            ProviderDescriptor(
                id=SourceId(kind=SourceKind.WEB, provider_name=name),
                priority=len(providers) + 1,
                backend=backend,
                rate_rps=rate_limit_rps,
            )
        )
    _require(bool(providers), f"no providers discoverable under {corpus_path}")

    return EngineConfig(
        corpus_path=corpus_path,
        providers=tuple(providers),
        eps=Threshold(eps),
        log_path=log_path,
        rate_limit_rps=rate_limit_rps,
    )
