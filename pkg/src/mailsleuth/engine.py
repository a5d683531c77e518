"""End-to-end identification pipeline.

Dispatch to every registered provider, parse social payloads into
quadruples, pick blog-candidate web hits and extract profiles from their
pages, then consolidate everything into one identity.  The clock is
injected so outputs can be made fully deterministic in tests.
"""
from __future__ import annotations

from typing import Protocol

from .config import EngineConfig
from .consolidate import consolidate
from .core import ConsolidatedIdentity, EmailId, SourceStatus, Threshold, normalize_email
from .parsers import classify_blog_candidate, extract_blog_profile, parse_social_item
from .providers import Clock, FixturePageFetcher, TokenBucket, dispatch_all, utc_now


class PageFetcher(Protocol):
    def fetch(self, url: str) -> str | None: ...


class Engine:
    """Drives the full pipeline against a configured provider registry."""

    def __init__(
        self,
        config: EngineConfig,
        *,
        clock: Clock = utc_now,
        page_fetcher: PageFetcher | None = None,
    ):
        self._config = config
        self._clock = clock
        self._page_fetcher = page_fetcher or FixturePageFetcher(config.corpus_path)
        self._limiters = {
            d.id.provider_name: TokenBucket(d.rate_rps) for d in config.providers
        }
        self._priorities = {d.id: d.priority for d in config.providers}

    @property
    def config(self) -> EngineConfig:
        return self._config

    def identify(self, raw_email: str, eps: int | None = None) -> ConsolidatedIdentity:
        """Resolve a raw address; raises InvalidEmail on bad input."""
        return self.identify_email(normalize_email(raw_email), eps)

    def identify_email(self, email: EmailId, eps: int | None = None) -> ConsolidatedIdentity:
        threshold = Threshold(eps) if eps is not None else self._config.eps
        responses = dispatch_all(
            self._config.providers,
            email,
            threshold,
            clock=self._clock,
            limiters=self._limiters,
        )

        evidence = []
        for response in responses:
            for item in response.social_items:
                evidence.append(
                    (response.source, parse_social_item(item, self._config.field_mapping))
                )

        blogs = []
        fetched: set[str] = set()
        for response in responses:
            for item in response.web_items:
                if item.url in fetched:
                    continue
                if not classify_blog_candidate(item, self._config.blog_hosts):
                    continue
                fetched.add(item.url)
                page = self._page_fetcher.fetch(item.url)
                if page is None:
                    continue
                profile = extract_blog_profile(page, item.url)
                if profile is not None:
                    blogs.append(profile)

        statuses = tuple(
            SourceStatus(
                source=response.source,
                status=response.status.value,
                latency_ms=response.latency_ms,
            )
            for response in responses
        )
        return consolidate(
            email,
            evidence,
            blogs,
            statuses,
            now=self._clock(),
            priorities=self._priorities,
        )
