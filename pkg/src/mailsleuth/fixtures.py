"""Fixture corpus validation.

Checks file naming, JSON well-formedness and page references so a corpus
can be trusted before serving or benchmarking against it.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .core import InvalidEmail, is_absolute_http_url, normalize_email
from .parsers import DEFAULT_BLOG_HOSTS, blog_url_match
from .providers import page_fixture_name

_PAGE_NAME = re.compile(r"^[0-9a-f]{40}\.html$")


def _load_json(path: Path, violations: list[str]) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        violations.append(f"{path}: unreadable JSON ({exc})")
        return None


def _check_email_key(key: str, where: str, violations: list[str]) -> None:
    try:
        normalized = normalize_email(key).normalized
    except InvalidEmail as exc:
        violations.append(f"{where}: {key!r} is not a valid e-mail ({exc.reason})")
        return
    if normalized != key:
        violations.append(f"{where}: {key!r} is not normalized (expected {normalized!r})")


def validate_corpus(
    corpus_path: Path | str, blog_hosts: tuple[str, ...] = DEFAULT_BLOG_HOSTS
) -> list[str]:
    """Return a list of violations; empty means the corpus is valid."""
    corpus = Path(corpus_path)
    violations: list[str] = []

    social_root = corpus / "social"
    if social_root.is_dir():
        for provider_dir in sorted(p for p in social_root.iterdir() if p.is_dir()):
            for path in sorted(provider_dir.iterdir()):
                if path.suffix != ".json":
                    violations.append(f"{path}: unexpected file in social fixtures")
                    continue
                _check_email_key(path.stem, str(path), violations)
                document = _load_json(path, violations)
                if document is None:
                    continue
                if not isinstance(document, list):
                    violations.append(f"{path}: root must be an array of payload objects")
                    continue
                for index, item in enumerate(document):
                    if not isinstance(item, dict):
                        violations.append(f"{path}: item {index} is not an object")

    pages_dir = corpus / "pages"
    web_root = corpus / "web"
    if web_root.is_dir():
        for provider_dir in sorted(p for p in web_root.iterdir() if p.is_dir()):
            index_path = provider_dir / "index.json"
            if not index_path.is_file():
                violations.append(f"{provider_dir}: missing index.json")
                continue
            document = _load_json(index_path, violations)
            if document is None:
                continue
            if not isinstance(document, dict):
                violations.append(f"{index_path}: root must be an object keyed by e-mail")
                continue
            for key, entry in document.items():
                _check_email_key(str(key), f"{index_path} key", violations)
                if not isinstance(entry, list):
                    violations.append(f"{index_path}: entry for {key!r} must be an array")
                    continue
                for index, item in enumerate(entry):
                    where = f"{index_path} [{key!r}][{index}]"
                    if not isinstance(item, dict):
                        violations.append(f"{where}: hit must be an object")
                        continue
                    url = item.get("url")
                    if not isinstance(url, str) or not is_absolute_http_url(url):
                        violations.append(f"{where}: url must be absolute http(s)")
                        continue
                    if blog_url_match(url, blog_hosts):
                        page = pages_dir / page_fixture_name(url)
                        if not page.is_file():
                            violations.append(
                                f"{where}: dangling page reference, missing {page.name} for {url}"
                            )

    if pages_dir.is_dir():
        for path in sorted(pages_dir.iterdir()):
            if path.is_file() and not _PAGE_NAME.match(path.name):
                violations.append(
                    f"{path}: page files must be named <sha1-of-url>.html"
                )

    return violations
