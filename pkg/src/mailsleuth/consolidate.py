"""Merging per-source profile quadruples into one consolidated identity.

Conflict resolution is deterministic and order-independent: values are
grouped by normalized form (whitespace collapsed, case folded), the
largest group of distinct sources wins, ties go to the group holding the
highest-priority source, and any remaining tie falls back to the
normalized value itself.  Gender is a straight majority over male/female
votes where a tie means no resolution; an unspecified gender is an
abstention, never a vote.  Every losing value is preserved as an
alternative with its backers.
"""
from __future__ import annotations

from datetime import datetime
from typing import Iterable, Mapping, Sequence

from .core import (
    BlogProfile,
    ConsolidatedIdentity,
    EmailId,
    FieldAlternative,
    FieldResolution,
    Gender,
    ProfileQuadruple,
    SourceId,
    SourceStatus,
)


def _collapse_ws(value: str) -> str:
    return " ".join(value.split())


class _PriorityMap:
    """Priority lookup with a deterministic fallback for unknown sources."""

    def __init__(self, priorities: Mapping[SourceId, int], fallback_order: Sequence[SourceId]):
        self._priorities = dict(priorities)
        base = max(self._priorities.values(), default=0)
        for source in fallback_order:
            if source not in self._priorities:
                base += 1
                self._priorities[source] = base

    def __call__(self, source: SourceId) -> int:
        return self._priorities.get(source, len(self._priorities) + 1)


def _resolve_text_field(
    pairs: Iterable[tuple[SourceId, str | None]], priority_of: _PriorityMap
) -> FieldResolution | None:
    # group -> {source: display variant}; one vote per source per group,
    # keeping the lexicographically smallest variant for determinism.
    groups: dict[str, dict[SourceId, str]] = {}
    for source, value in pairs:
        if value is None:
            continue
        display = _collapse_ws(value)
        if not display:
            continue
        bucket = groups.setdefault(display.casefold(), {})
        current = bucket.get(source)
        if current is None or display < current:
            bucket[source] = display

    if not groups:
        return None

    def group_rank(key: str) -> tuple[int, int, str]:
        sources = groups[key]
        return (-len(sources), min(priority_of(s) for s in sources), key)

    ordered_groups = sorted(groups, key=group_rank)

    def sources_of(key: str) -> tuple[SourceId, ...]:
        return tuple(
            sorted(groups[key], key=lambda s: (priority_of(s), s.provider_name))
        )

    def display_of(key: str) -> str:
        return groups[key][sources_of(key)[0]]

    winner = ordered_groups[0]
    winning_sources = sources_of(winner)
    losing_total = sum(len(groups[key]) for key in ordered_groups[1:])
    return FieldResolution(
        value=display_of(winner),
        supporting_sources=winning_sources,
        alternatives=tuple(
            FieldAlternative(value=display_of(key), sources=sources_of(key))
            for key in ordered_groups[1:]
        ),
        confidence=len(winning_sources) / (len(winning_sources) + losing_total),
    )


def _resolve_gender(
    pairs: Iterable[tuple[SourceId, Gender]], priority_of: _PriorityMap
) -> FieldResolution | None:
    votes: dict[Gender, set[SourceId]] = {Gender.MALE: set(), Gender.FEMALE: set()}
    for source, gender in pairs:
        if gender in votes:
            votes[gender].add(source)

    male, female = len(votes[Gender.MALE]), len(votes[Gender.FEMALE])
    if male == female:  # covers the no-votes case
        return None
    winner, loser = (Gender.MALE, Gender.FEMALE) if male > female else (Gender.FEMALE, Gender.MALE)

    def ordered(gender: Gender) -> tuple[SourceId, ...]:
        return tuple(sorted(votes[gender], key=lambda s: (priority_of(s), s.provider_name)))

    alternatives = (
        (FieldAlternative(value=loser.value, sources=ordered(loser)),) if votes[loser] else ()
    )
    return FieldResolution(
        value=winner.value,
        supporting_sources=ordered(winner),
        alternatives=alternatives,
        confidence=len(votes[winner]) / (len(votes[winner]) + len(votes[loser])),
    )


def consolidate(
    email: EmailId,
    evidence: Sequence[tuple[SourceId, ProfileQuadruple]],
    blogs: Sequence[BlogProfile],
    sources_queried: Sequence[SourceStatus],
    now: datetime,
    *,
    priorities: Mapping[SourceId, int] | None = None,
) -> ConsolidatedIdentity:
    """Merge per-source quadruples and blog profiles into one identity.

    Every source appearing in ``evidence`` must be listed in
    ``sources_queried``.  ``priorities`` maps sources to their registry
    priority (1 = highest); sources missing from it fall back to their
    position in ``sources_queried``.  Pure function: permuting ``evidence``
    never changes any winner, confidence or alternative set.
    """
    queried = {status.source for status in sources_queried}
    for source, _ in evidence:
        if source not in queried:
            raise ValueError(f"evidence source {source} missing from sources_queried")

    priority_of = _PriorityMap(priorities or {}, [s.source for s in sources_queried])

    name = _resolve_text_field(((s, q.name) for s, q in evidence), priority_of)
    place = _resolve_text_field(((s, q.place) for s, q in evidence), priority_of)
    image = _resolve_text_field(((s, q.image) for s, q in evidence), priority_of)
    gender = _resolve_gender(((s, q.gender) for s, q in evidence), priority_of)

    unique_blogs: list[BlogProfile] = []
    seen_urls: set[str] = set()
    for blog in blogs:
        if blog.url not in seen_urls:
            seen_urls.add(blog.url)
            unique_blogs.append(blog)

    return ConsolidatedIdentity(
        email=email,
        name=name,
        gender=gender,
        place=place,
        image=image,
        blog_profiles=tuple(unique_blogs),
        sources_queried=tuple(sources_queried),
        summary_success=name is not None,
        blog_success=bool(unique_blogs),
        generated_at=now,
    )
