"""Provider connector framework: registry, backends, fan-out dispatch.

Two dispatch paths share one contract: a provider is asked for the top
``eps`` results for an e-mail address and always answers with a
:class:`ProviderResponse` — failures are encoded in the response status,
never raised past the dispatcher.  Backends are pluggable: a fixture
backend reading a local corpus (default, and the test substrate) and an
HTTP adapter driven by a declarative response mapping.
"""
from __future__ import annotations

import hashlib
import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence
from urllib.parse import quote

import httpx

from .core import (
    EmailId,
    SocialResultItem,
    SourceId,
    SourceKind,
    Threshold,
    WebResultItem,
    is_absolute_http_url,
)

MIN_TIMEOUT_MS = 100
MAX_TIMEOUT_MS = 60000
DEFAULT_TIMEOUT_MS = 5000
DEFAULT_RATE_RPS = 5.0

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


class EmptyRegistry(ValueError):
    """dispatch_all requires at least one registered provider."""


class BackendError(Exception):
    """A backend failed structurally (unreadable fixture, bad response)."""


class ResponseStatus(str, Enum):
    OK = "ok"
    TIMEOUT = "timeout"
    ERROR = "error"
    EMPTY = "empty"


def page_fixture_name(url: str) -> str:
    """Corpus filename for a stored page: sha1 of the URL, hex, plus .html."""
    return hashlib.sha1(url.encode("utf-8")).hexdigest() + ".html"


class TokenBucket:
    """Thread-safe token bucket; refills continuously at ``rate_per_s``."""

    def __init__(self, rate_per_s: float, capacity: float | None = None):
        if rate_per_s <= 0:
            raise ValueError("rate_per_s must be positive")
        self._rate = rate_per_s
        self._capacity = capacity if capacity is not None else max(1.0, rate_per_s)
        self._tokens = self._capacity
        self._updated = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self, timeout_s: float) -> bool:
        """Take one token, waiting up to ``timeout_s``. False on deadline."""
        deadline = time.monotonic() + timeout_s
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self._capacity, self._tokens + (now - self._updated) * self._rate)
                self._updated = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return True
                wait = (1.0 - self._tokens) / self._rate
            if now + wait > deadline:
                return False
            time.sleep(min(wait, max(0.0, deadline - now)))


@dataclass(frozen=True)
class FixtureBackend:
    """Reads results from a local corpus tree.

    Layout: ``social/<provider>/<normalized-email>.json`` holds an ordered
    array of payload trees; ``web/<provider>/index.json`` maps normalized
    e-mail to an ordered array of ``{url, title, snippet}`` hits.
    """

    corpus_path: Path

    def fetch_social(self, provider_name: str, email: EmailId, timeout_s: float) -> list[Any]:
        path = Path(self.corpus_path) / "social" / provider_name / f"{email.normalized}.json"
        if not path.is_file():
            return []
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise BackendError(f"unreadable social fixture {path.name}: {exc}") from exc
        if not isinstance(document, list):
            raise BackendError(f"social fixture {path.name} root must be an array")
        return document

    def fetch_web(self, provider_name: str, email: EmailId, timeout_s: float) -> list[Any]:
        path = Path(self.corpus_path) / "web" / provider_name / "index.json"
        if not path.is_file():
            return []
        try:
            index = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise BackendError(f"unreadable web index for {provider_name}: {exc}") from exc
        if not isinstance(index, dict):
            raise BackendError(f"web index for {provider_name} root must be an object")
        entry = index.get(email.normalized, [])
        if not isinstance(entry, list):
            raise BackendError(f"web index entry for {email.normalized} must be an array")
        return entry


def _resolve_path(document: Any, path: str) -> Any:
    """Follow a dot-separated path into a JSON document; None if absent."""
    if path in ("", "."):
        return document
    node = document
    for segment in path.split("."):
        if isinstance(node, Mapping):
            node = node.get(segment)
        elif isinstance(node, list) and segment.isdigit():
            index = int(segment)
            node = node[index] if index < len(node) else None
        else:
            return None
        if node is None:
            return None
    return node


@dataclass(frozen=True)
class HttpBackend:
    """Queries a live JSON API and maps the response declaratively.

    ``endpoint_template`` may use ``{email}`` (URL-encoded normalized
    address) and ``{query}`` (URL-encoded normalized address wrapped in
    double quotes — the form submitted to web search backends).
    ``response_mapping`` names the path to the result array under
    ``items`` plus, for web providers, per-item paths for ``url``,
    ``title`` and ``snippet``.
    """

    endpoint_template: str
    response_mapping: Mapping[str, str] = field(default_factory=dict)
    transport: httpx.BaseTransport | None = None  # test hook, not configurable

    def _request(self, email: EmailId, timeout_s: float) -> Any:
        url = self.endpoint_template.format(
            email=quote(email.normalized, safe=""),
            query=quote(f'"{email.normalized}"', safe=""),
        )
        try:
            with httpx.Client(transport=self.transport, timeout=timeout_s) as client:
                response = client.get(url)
                response.raise_for_status()
                return response.json()
        except httpx.TimeoutException:
            raise
        except (httpx.HTTPError, ValueError) as exc:
            raise BackendError(f"http backend failed: {exc}") from exc

    def _items(self, document: Any) -> list[Any]:
        items = _resolve_path(document, self.response_mapping.get("items", ""))
        if items is None:
            return []
        if not isinstance(items, list):
            raise BackendError("mapped items path is not an array")
        return items

    def fetch_social(self, provider_name: str, email: EmailId, timeout_s: float) -> list[Any]:
        return self._items(self._request(email, timeout_s))

    def fetch_web(self, provider_name: str, email: EmailId, timeout_s: float) -> list[Any]:
        mapped = []
        for item in self._items(self._request(email, timeout_s)):
            if not isinstance(item, Mapping):
                continue
            mapped.append(
                {
                    "url": _resolve_path(item, self.response_mapping.get("url", "url")),
                    "title": _resolve_path(item, self.response_mapping.get("title", "title")),
                    "snippet": _resolve_path(item, self.response_mapping.get("snippet", "snippet")),
                }
            )
        return mapped


@dataclass(frozen=True)
class ProviderDescriptor:
    """Registry entry for one provider."""

    id: SourceId
    priority: int
    backend: Any
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    eps_override: Threshold | None = None
    rate_rps: float = DEFAULT_RATE_RPS

    def __post_init__(self) -> None:
        if self.priority < 1:
            raise ValueError("priority must be >= 1")
        if not MIN_TIMEOUT_MS <= self.timeout_ms <= MAX_TIMEOUT_MS:
            raise ValueError(
                f"timeout_ms must be in [{MIN_TIMEOUT_MS}, {MAX_TIMEOUT_MS}], got {self.timeout_ms}"
            )
        if self.rate_rps <= 0:
            raise ValueError("rate_rps must be positive")

    def effective_eps(self, eps: Threshold) -> int:
        if self.eps_override is None:
            return eps.eps
        return min(eps.eps, self.eps_override.eps)


@dataclass(frozen=True)
class ProviderResponse:
    """Outcome of one provider query; item count never exceeds effective eps."""

    source: SourceId
    status: ResponseStatus
    social_items: tuple[SocialResultItem, ...] = ()
    web_items: tuple[WebResultItem, ...] = ()
    latency_ms: int = 0
    message: str = ""

    def __post_init__(self) -> None:
        if self.social_items and self.source.kind is not SourceKind.SOCIAL:
            raise ValueError("social_items require a social source")
        if self.web_items and self.source.kind is not SourceKind.WEB:
            raise ValueError("web_items require a web source")


def validate_registry(registry: Sequence[ProviderDescriptor]) -> None:
    """Reject duplicate provider names or priorities."""
    names = [d.id.provider_name for d in registry]
    if len(set(names)) != len(names):
        raise ValueError("provider names must be unique within the registry")
    priorities = [d.priority for d in registry]
    if len(set(priorities)) != len(priorities):
        raise ValueError("provider priorities must be unique within the registry")


def _call_with_deadline(fn: Callable[[], Any], timeout_s: float) -> Any:
    """Run ``fn`` in a worker thread, abandoning it past the deadline."""
    pool = ThreadPoolExecutor(max_workers=1)
    try:
        future = pool.submit(fn)
        return future.result(timeout=timeout_s)
    finally:
        pool.shutdown(wait=False, cancel_futures=True)


def _fetch(
    provider: ProviderDescriptor,
    email: EmailId,
    eps: Threshold,
    *,
    clock: Clock,
    limiter: TokenBucket | None,
    build_items: Callable[[list[Any], int], tuple],
    backend_call: Callable[[], list[Any]],
) -> ProviderResponse:
    started = clock()
    timeout_s = provider.timeout_ms / 1000.0

    def latency() -> int:
        return max(0, int((clock() - started).total_seconds() * 1000))

    if limiter is not None and not limiter.acquire(timeout_s):
        return ProviderResponse(
            source=provider.id,
            status=ResponseStatus.TIMEOUT,
            latency_ms=latency(),
            message="rate limiter wait exceeded the provider timeout",
        )
    try:
        raw = _call_with_deadline(backend_call, timeout_s)
    except (FutureTimeout, httpx.TimeoutException):
        return ProviderResponse(
            source=provider.id,
            status=ResponseStatus.TIMEOUT,
            latency_ms=latency(),
            message=f"backend exceeded {provider.timeout_ms} ms",
        )
    except Exception as exc:
        return ProviderResponse(
            source=provider.id,
            status=ResponseStatus.ERROR,
            latency_ms=latency(),
            message=str(exc) or exc.__class__.__name__,
        )

    items = build_items(raw, provider.effective_eps(eps))
    status = ResponseStatus.OK if items else ResponseStatus.EMPTY
    if provider.id.kind is SourceKind.SOCIAL:
        return ProviderResponse(
            source=provider.id, status=status, social_items=items, latency_ms=latency()
        )
    return ProviderResponse(
        source=provider.id, status=status, web_items=items, latency_ms=latency()
    )


def fetch_social(
    provider: ProviderDescriptor,
    email: EmailId,
    eps: Threshold,
    *,
    clock: Clock = utc_now,
    limiter: TokenBucket | None = None,
) -> ProviderResponse:
    """Query one social provider; returns at most the effective eps items.

    Malformed (non-object) payload entries are skipped and the remaining
    items re-ranked contiguously from 1.
    """
    if provider.id.kind is not SourceKind.SOCIAL:
        raise ValueError("fetch_social requires a social provider")

    def build(raw: list[Any], limit: int) -> tuple[SocialResultItem, ...]:
        items: list[SocialResultItem] = []
        for entry in raw:
            if not isinstance(entry, Mapping):
                continue
            items.append(SocialResultItem(source=provider.id, rank=len(items) + 1, payload=entry))
            if len(items) == limit:
                break
        return tuple(items)

    return _fetch(
        provider,
        email,
        eps,
        clock=clock,
        limiter=limiter,
        build_items=build,
        backend_call=lambda: provider.backend.fetch_social(
            provider.id.provider_name, email, provider.timeout_ms / 1000.0
        ),
    )


def fetch_web(
    provider: ProviderDescriptor,
    email: EmailId,
    eps: Threshold,
    *,
    clock: Clock = utc_now,
    limiter: TokenBucket | None = None,
) -> ProviderResponse:
    """Query one web provider; same contract as fetch_social for page hits.

    Hits without a well-formed absolute http(s) URL are skipped and the
    remaining items re-ranked contiguously.
    """
    if provider.id.kind is not SourceKind.WEB:
        raise ValueError("fetch_web requires a web provider")

    def build(raw: list[Any], limit: int) -> tuple[WebResultItem, ...]:
        items: list[WebResultItem] = []
        for entry in raw:
            if not isinstance(entry, Mapping):
                continue
            url = entry.get("url")
            if not isinstance(url, str) or not is_absolute_http_url(url.strip()):
                continue
            title = entry.get("title")
            snippet = entry.get("snippet")
            items.append(
                WebResultItem(
                    source=provider.id,
                    rank=len(items) + 1,
                    url=url.strip(),
                    title=title.strip() if isinstance(title, str) else "",
                    snippet=snippet.strip() if isinstance(snippet, str) else "",
                )
            )
            if len(items) == limit:
                break
        return tuple(items)

    return _fetch(
        provider,
        email,
        eps,
        clock=clock,
        limiter=limiter,
        build_items=build,
        backend_call=lambda: provider.backend.fetch_web(
            provider.id.provider_name, email, provider.timeout_ms / 1000.0
        ),
    )


def dispatch_all(
    registry: Sequence[ProviderDescriptor],
    email: EmailId,
    eps: Threshold,
    *,
    clock: Clock = utc_now,
    limiters: Mapping[str, TokenBucket] | None = None,
) -> list[ProviderResponse]:
    """Fan out to every registered provider concurrently.

    Responses come back in registry order regardless of completion order;
    a failing or slow provider is reported in its own response and never
    blocks or fails the others.
    """
    if not registry:
        raise EmptyRegistry("provider registry is empty")
    validate_registry(registry)
    limiters = limiters or {}

    def query(descriptor: ProviderDescriptor) -> ProviderResponse:
        fetch = fetch_social if descriptor.id.kind is SourceKind.SOCIAL else fetch_web
        return fetch(
            descriptor,
            email,
            eps,
            clock=clock,
            limiter=limiters.get(descriptor.id.provider_name),
        )

    responses: list[ProviderResponse] = []
    with ThreadPoolExecutor(max_workers=len(registry)) as pool:
        futures = [pool.submit(query, descriptor) for descriptor in registry]
        for descriptor, future in zip(registry, futures):
            try:
                responses.append(future.result())
            except Exception as exc:  # fetch_* never raises; belt and braces
                responses.append(
                    ProviderResponse(
                        source=descriptor.id,
                        status=ResponseStatus.ERROR,
                        message=str(exc) or exc.__class__.__name__,
                    )
                )
    return responses


class FixturePageFetcher:
    """Serves stored pages from ``<corpus>/pages/<sha1-of-url>.html``."""

    def __init__(self, corpus_path: Path | str):
        self._pages = Path(corpus_path) / "pages"

    def fetch(self, url: str) -> str | None:
        path = self._pages / page_fixture_name(url)
        if not path.is_file():
            return None
        try:
            return path.read_bytes().decode("utf-8", "replace")
        except OSError:
            return None


class HttpPageFetcher:
    """Fetches live pages for blog-profile extraction; None on any failure."""

    def __init__(self, timeout_s: float = 5.0, transport: httpx.BaseTransport | None = None):
        self._timeout_s = timeout_s
        self._transport = transport

    def fetch(self, url: str) -> str | None:
        try:
            with httpx.Client(transport=self._transport, timeout=self._timeout_s) as client:
                response = client.get(url, follow_redirects=True)
                response.raise_for_status()
                return response.text
        except httpx.HTTPError:
            return None
