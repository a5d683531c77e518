from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from mailsleuth.config import EngineConfig
from mailsleuth.core import SourceId, SourceKind, Threshold
from mailsleuth.providers import FixtureBackend, ProviderDescriptor

REPO_ROOT = Path(__file__).resolve().parent.parent

FIXED_INSTANT = datetime(2026, 1, 1, 12, 0, 0, tzinfo=timezone.utc)


class FixedClock:
    """Always returns the same instant; makes outputs byte-deterministic."""

    def __init__(self, instant: datetime = FIXED_INSTANT):
        self.instant = instant

    def __call__(self) -> datetime:
        return self.instant


class SteppingClock:
    """Manually advanced clock for TTL tests."""

    def __init__(self, start: datetime = FIXED_INSTANT):
        self.now = start

    def advance(self, seconds: float) -> None:
        self.now += timedelta(seconds=seconds)

    def __call__(self) -> datetime:
        return self.now


def write_social(corpus: Path, provider: str, email: str, payloads: list) -> None:
    path = corpus / "social" / provider / f"{email}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payloads), encoding="utf-8")


def write_web_index(corpus: Path, provider: str, index: dict) -> None:
    path = corpus / "web" / provider / "index.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(index), encoding="utf-8")


def write_page(corpus: Path, url: str, html: str) -> None:
    from mailsleuth.providers import page_fixture_name

    path = corpus / "pages" / page_fixture_name(url)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(html, encoding="utf-8")


def social_descriptor(
    corpus: Path, name: str, priority: int, *, timeout_ms: int = 5000, eps_override: int | None = None
) -> ProviderDescriptor:
    return ProviderDescriptor(
        id=SourceId(kind=SourceKind.SOCIAL, provider_name=name),
        priority=priority,
        backend=FixtureBackend(corpus),
        timeout_ms=timeout_ms,
        eps_override=Threshold(eps_override) if eps_override else None,
        rate_rps=1000.0,
    )


def web_descriptor(
    corpus: Path, name: str, priority: int, *, timeout_ms: int = 5000
) -> ProviderDescriptor:
    return ProviderDescriptor(
        id=SourceId(kind=SourceKind.WEB, provider_name=name),
        priority=priority,
        backend=FixtureBackend(corpus),
        timeout_ms=timeout_ms,
        rate_rps=1000.0,
    )


def make_config(corpus: Path, providers, **overrides) -> EngineConfig:
    defaults = dict(corpus_path=corpus, providers=tuple(providers), rate_limit_rps=1000.0)
    defaults.update(overrides)
    return EngineConfig(**defaults)


@pytest.fixture
def fixed_clock() -> FixedClock:
    return FixedClock()


@pytest.fixture
def demo_config_path() -> Path:
    return REPO_ROOT / "config" / "engine.json"


@pytest.fixture
def demo_corpus() -> Path:
    return REPO_ROOT / "corpus" / "demo"


@pytest.fixture
def demo_manifest_path() -> Path:
    return REPO_ROOT / "bench" / "manifest.json"
