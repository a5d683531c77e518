"""Domain types shared by the identification pipeline.

All types here are immutable after construction and safe to share across
concurrent tasks.  The e-mail address is the unique key of every lookup;
:func:`normalize_email` is the single entry point that turns raw user
input into a canonical key.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Mapping
from urllib.parse import urlsplit

# Upper bound for the per-provider result cut-off.
MAX_EPS = 100

# Outcome vocabulary for a queried provider.
SOURCE_STATUSES = frozenset({"ok", "timeout", "error", "empty"})


class InvalidEmail(ValueError):
    """Raised when an input string cannot serve as an e-mail lookup key."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def is_absolute_http_url(url: str) -> bool:
    """True if ``url`` is an absolute URL with an http or https scheme."""
    try:
        parts = urlsplit(url)
    except ValueError:
        return False
    return parts.scheme in ("http", "https") and bool(parts.netloc)


@dataclass(frozen=True, eq=False)
class EmailId:
    """A validated e-mail address.

    ``raw`` is the address as entered, ``normalized`` the canonical lookup
    key (lower-cased, surrounding whitespace stripped).  Two values are
    equal iff their normalized forms are equal.
    """

    raw: str
    normalized: str

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmailId):
            return NotImplemented
        return self.normalized == other.normalized

    def __hash__(self) -> int:
        return hash(self.normalized)

    def __str__(self) -> str:
        return self.normalized


def normalize_email(raw: str) -> EmailId:
    """Validate ``raw`` and return its canonical :class:`EmailId`.

    The address must contain exactly one ``@`` with non-empty local and
    domain parts, and the domain must contain at least one dot.  Whitespace
    anywhere inside the address is rejected; surrounding whitespace is
    stripped.  Normalization is idempotent.

    Raises :class:`InvalidEmail` with a human-readable reason otherwise.
    """
    stripped = raw.strip()
    if not stripped:
        raise InvalidEmail("address is empty")
    if any(ch.isspace() for ch in stripped):
        raise InvalidEmail("address contains whitespace")
    if stripped.count("@") != 1:
        raise InvalidEmail("address must contain exactly one '@'")
    local, _, domain = stripped.partition("@")
    if not local:
        raise InvalidEmail("local part is empty")
    if not domain:
        raise InvalidEmail("domain part is empty")
    if "." not in domain:
        raise InvalidEmail("domain part must contain a '.'")
    return EmailId(raw=raw, normalized=stripped.lower())


class Gender(str, Enum):
    MALE = "male"
    FEMALE = "female"
    UNSPECIFIED = "unspecified"


class SourceKind(str, Enum):
    SOCIAL = "social"
    WEB = "web"


@dataclass(frozen=True)
class SourceId:
    """Registry identity of a provider: dispatch path plus registry key."""

    kind: SourceKind
    provider_name: str

    def __post_init__(self) -> None:
        if not self.provider_name:
            raise ValueError("provider_name must be non-empty")


@dataclass(frozen=True)
class Threshold:
    """Count of top-ranked results retained per provider."""

    eps: int

    def __post_init__(self) -> None:
        if not 1 <= self.eps <= MAX_EPS:
            raise ValueError(f"eps must be in [1, {MAX_EPS}], got {self.eps}")


@dataclass(frozen=True)
class ProfileQuadruple:
    """Per-source profile record: name, gender, place, image."""

    name: str | None = None
    gender: Gender = Gender.UNSPECIFIED
    place: str | None = None
    image: str | None = None

    def __post_init__(self) -> None:
        if self.name is not None and not self.name.strip():
            raise ValueError("name, when present, must be non-empty")
        if self.place is not None and not self.place.strip():
            raise ValueError("place, when present, must be non-empty")
        if self.image is not None and not is_absolute_http_url(self.image):
            raise ValueError(f"image must be an absolute http(s) URL: {self.image!r}")

    def is_empty(self) -> bool:
        return (
            self.name is None
            and self.gender is Gender.UNSPECIFIED
            and self.place is None
            and self.image is None
        )


@dataclass(frozen=True)
class SocialResultItem:
    """One ranked raw result from a social provider."""

    source: SourceId
    rank: int
    payload: Mapping[str, Any]

    def __post_init__(self) -> None:
        if self.source.kind is not SourceKind.SOCIAL:
            raise ValueError("SocialResultItem requires a social source")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")


@dataclass(frozen=True)
class WebResultItem:
    """One ranked page hit from a web provider."""

    source: SourceId
    rank: int
    url: str
    title: str
    snippet: str

    def __post_init__(self) -> None:
        if self.source.kind is not SourceKind.WEB:
            raise ValueError("WebResultItem requires a web source")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if not is_absolute_http_url(self.url):
            raise ValueError(f"url must be an absolute http(s) URL: {self.url!r}")


@dataclass(frozen=True)
class BlogProfile:
    """Person profile extracted from a blog page reached via web results."""

    url: str
    display_name: str | None = None
    location: str | None = None
    avatar_url: str | None = None
    about: str | None = None

    def __post_init__(self) -> None:
        if not is_absolute_http_url(self.url):
            raise ValueError(f"url must be an absolute http(s) URL: {self.url!r}")
        if not any((self.display_name, self.location, self.avatar_url, self.about)):
            raise ValueError("an all-empty BlogProfile is never constructed")
        if self.avatar_url is not None and not is_absolute_http_url(self.avatar_url):
            raise ValueError(f"avatar_url must be absolute http(s): {self.avatar_url!r}")


@dataclass(frozen=True)
class FieldAlternative:
    """A losing value for a consolidated field, with its backers."""

    value: str
    sources: tuple[SourceId, ...]


@dataclass(frozen=True)
class FieldResolution:
    """Winning value of a consolidated field with provenance.

    ``confidence`` is the fraction of voting sources backing the winner:
    ``len(supporting_sources) / (len(supporting_sources) + alternatives' sources)``.
    """

    value: str
    supporting_sources: tuple[SourceId, ...]
    alternatives: tuple[FieldAlternative, ...] = ()
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if not self.supporting_sources:
            raise ValueError("supporting_sources must be non-empty")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")


@dataclass(frozen=True)
class SourceStatus:
    """Outcome of querying one registered provider."""

    source: SourceId
    status: str
    latency_ms: int = 0

    def __post_init__(self) -> None:
        if self.status not in SOURCE_STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.latency_ms < 0:
            raise ValueError("latency_ms must be >= 0")


@dataclass(frozen=True)
class ConsolidatedIdentity:
    """The engine's output: merged profile plus blog profiles and provenance.

    ``summary_success`` is true iff a name was resolved; ``blog_success``
    is true iff at least one blog profile was extracted.  Both are
    validated at construction.
    """

    email: EmailId
    name: FieldResolution | None
    gender: FieldResolution | None
    place: FieldResolution | None
    image: FieldResolution | None
    blog_profiles: tuple[BlogProfile, ...]
    sources_queried: tuple[SourceStatus, ...]
    summary_success: bool
    blog_success: bool
    generated_at: datetime

    def __post_init__(self) -> None:
        if self.summary_success != (self.name is not None):
            raise ValueError("summary_success must mirror name presence")
        if self.blog_success != bool(self.blog_profiles):
            raise ValueError("blog_success must mirror blog_profiles presence")
