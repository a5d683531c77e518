"""Pydantic wire models for the HTTP API.

The identify body is serialized through ``model_dump_json`` everywhere
(service and CLI alike) so equal inputs always produce byte-identical
output.
"""
from __future__ import annotations

from datetime import datetime, timezone

from pydantic import BaseModel

from ..core import ConsolidatedIdentity, FieldResolution


def rfc3339(moment: datetime) -> str:
    """RFC 3339 timestamp in UTC with a Z suffix."""
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


class AlternativeJson(BaseModel):
    value: str
    sources: list[str]


class FieldResolutionJson(BaseModel):
    value: str
    sources: list[str]
    confidence: float
    alternatives: list[AlternativeJson]


class SummaryJson(BaseModel):
    name: FieldResolutionJson | None
    gender: FieldResolutionJson | None
    place: FieldResolutionJson | None
    image: FieldResolutionJson | None


class BlogProfileJson(BaseModel):
    url: str
    display_name: str | None
    location: str | None
    avatar_url: str | None
    about: str | None


class SourceStatusJson(BaseModel):
    provider: str
    kind: str
    status: str
    latency_ms: int


class IdentifyResponse(BaseModel):
    email: str
    cached: bool
    summary: SummaryJson
    blog_profiles: list[BlogProfileJson]
    sources: list[SourceStatusJson]
    summary_success: bool
    blog_success: bool
    generated_at: str


class HealthResponse(BaseModel):
    status: str
    providers: int


class ErrorResponse(BaseModel):
    error: str


def _field_json(resolution: FieldResolution | None) -> FieldResolutionJson | None:
    if resolution is None:
        return None
    return FieldResolutionJson(
        value=resolution.value,
        sources=[s.provider_name for s in resolution.supporting_sources],
        confidence=resolution.confidence,
        alternatives=[
            AlternativeJson(value=alt.value, sources=[s.provider_name for s in alt.sources])
            for alt in resolution.alternatives
        ],
    )


def identify_payload(identity: ConsolidatedIdentity, *, cached: bool) -> IdentifyResponse:
    """Serialize a consolidated identity into the wire shape."""
    return IdentifyResponse(
        email=identity.email.normalized,
        cached=cached,
        summary=SummaryJson(
            name=_field_json(identity.name),
            gender=_field_json(identity.gender),
            place=_field_json(identity.place),
            image=_field_json(identity.image),
        ),
        blog_profiles=[
            BlogProfileJson(
                url=blog.url,
                display_name=blog.display_name,
                location=blog.location,
                avatar_url=blog.avatar_url,
                about=blog.about,
            )
            for blog in identity.blog_profiles
        ],
        sources=[
            SourceStatusJson(
                provider=status.source.provider_name,
                kind=status.source.kind.value,
                status=status.status,
                latency_ms=status.latency_ms,
            )
            for status in identity.sources_queried
        ],
        summary_success=identity.summary_success,
        blog_success=identity.blog_success,
        generated_at=rfc3339(identity.generated_at),
    )
