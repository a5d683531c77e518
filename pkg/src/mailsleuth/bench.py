"""Benchmark harness: replay search sessions and aggregate success rates.

A session is a fixed list of distinct e-mail addresses identified one by
one; per session we count how many searches resolved a name (summary
success) and how many yielded at least one blog profile (blog success).
Aggregation uses exact rational arithmetic.  A reference dataset of ten
recorded 20-search sessions ships with the package so the aggregation
itself is unit-testable without an engine.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Protocol, Sequence

from .core import ConsolidatedIdentity, InvalidEmail, normalize_email


class EngineUnavailable(Exception):
    """The engine handle cannot serve identify calls."""


class IdentifyHandle(Protocol):
    def identify(self, raw_email: str, eps: int | None = None) -> ConsolidatedIdentity: ...


@dataclass(frozen=True)
class SessionReport:
    """Success counts for one benchmark session."""

    session_id: int
    total_searches: int
    summary_successes: int
    blog_successes: int

    def __post_init__(self) -> None:
        if self.session_id < 1:
            raise ValueError("session_id must be >= 1")
        if self.total_searches < 1:
            raise ValueError("total_searches must be >= 1")
        if not 0 <= self.summary_successes <= self.total_searches:
            raise ValueError("summary_successes must be within [0, total_searches]")
        if not 0 <= self.blog_successes <= self.total_searches:
            raise ValueError("blog_successes must be within [0, total_searches]")


@dataclass(frozen=True)
class AggregateResult:
    summary_rate: Fraction
    blog_rate: Fraction
    total_searches: int
    summary_successes: int
    blog_successes: int
    per_session: tuple[SessionReport, ...]


def run_session(
    session_id: int, emails: Sequence[str], engine: IdentifyHandle
) -> SessionReport:
    """Identify every address in the session and count the successes.

    Addresses must be non-empty and pairwise distinct (by normalized
    form).  Calls run sequentially for stable latency accounting.  An
    address the engine rejects counts as an unsuccessful search; an
    engine that cannot serve at all raises EngineUnavailable.
    """
    if not emails:
        raise ValueError("session requires at least one e-mail")
    normalized = []
    for address in emails:
        try:
            normalized.append(normalize_email(address).normalized)
        except InvalidEmail:
            normalized.append(address.strip().lower())
    if len(set(normalized)) != len(normalized):
        raise ValueError("session e-mails must be pairwise distinct")
    if engine is None or not hasattr(engine, "identify"):
        raise EngineUnavailable("engine handle does not support identify")

    summary = blog = 0
    for address in emails:
        try:
            identity = engine.identify(address)
        except InvalidEmail:
            continue
        except Exception as exc:
            raise EngineUnavailable(f"identify failed: {exc}") from exc
        summary += 1 if identity.summary_success else 0
        blog += 1 if identity.blog_success else 0
    return SessionReport(
        session_id=session_id,
        total_searches=len(emails),
        summary_successes=summary,
        blog_successes=blog,
    )


def aggregate(reports: Sequence[SessionReport]) -> AggregateResult:
    """Fold session reports into overall rates (exact fractions)."""
    if not reports:
        raise ValueError("aggregate requires at least one report")
    total = sum(r.total_searches for r in reports)
    summary = sum(r.summary_successes for r in reports)
    blog = sum(r.blog_successes for r in reports)
    return AggregateResult(
        summary_rate=Fraction(summary, total),
        blog_rate=Fraction(blog, total),
        total_searches=total,
        summary_successes=summary,
        blog_successes=blog,
        per_session=tuple(reports),
    )


def reference_sessions() -> tuple[SessionReport, ...]:
    """The packaged dataset of ten recorded 20-search sessions."""
    raw = resources.files("mailsleuth").joinpath("data/reference_sessions.json").read_text("utf-8")
    document = json.loads(raw)
    return tuple(
        SessionReport(
            session_id=row["id"],
            total_searches=row["total"],
            summary_successes=row["summary"],
            blog_successes=row["blog"],
        )
        for row in document["sessions"]
    )


@dataclass(frozen=True)
class SessionManifest:
    sessions: tuple[tuple[int, tuple[str, ...]], ...]


def load_manifest(path: Path | str) -> SessionManifest:
    """Read a session manifest: {"sessions": [{"id": n, "emails": [...]}]}."""
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(document, dict) or not isinstance(document.get("sessions"), list):
        raise ValueError("manifest must be an object with a 'sessions' array")
    sessions = []
    for entry in document["sessions"]:
        if not isinstance(entry, dict):
            raise ValueError("each manifest session must be an object")
        session_id = entry.get("id")
        emails = entry.get("emails")
        if not isinstance(session_id, int) or not isinstance(emails, list):
            raise ValueError("manifest sessions need an integer id and an emails array")
        sessions.append((session_id, tuple(str(e) for e in emails)))
    return SessionManifest(sessions=tuple(sessions))


def write_csv(result: AggregateResult, path: Path | str) -> None:
    """Chart-ready per-session table: session,total,summary,blog."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["session", "total", "summary", "blog"])
        for report in result.per_session:
            writer.writerow(
                [
                    report.session_id,
                    report.total_searches,
                    report.summary_successes,
                    report.blog_successes,
                ]
            )


def write_summary_json(result: AggregateResult, path: Path | str) -> None:
    document = {
        "sessions": len(result.per_session),
        "total_searches": result.total_searches,
        "summary_successes": result.summary_successes,
        "blog_successes": result.blog_successes,
        "summary_rate": float(result.summary_rate),
        "blog_rate": float(result.blog_rate),
        "summary_rate_exact": f"{result.summary_rate.numerator}/{result.summary_rate.denominator}",
        "blog_rate_exact": f"{result.blog_rate.numerator}/{result.blog_rate.denominator}",
    }
    Path(path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
