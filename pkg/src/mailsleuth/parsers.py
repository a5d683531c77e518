"""Parsers for the two dispatch paths.

Social payloads are key-value trees mapped onto a :class:`ProfileQuadruple`
via configurable key lists.  Web hits point at pages from which a
:class:`BlogProfile` is extracted: h-card microformat classes first, then
document metadata as a fallback.  Both parsers are total: they never raise,
whatever the input bytes look like.
"""
from __future__ import annotations

from dataclasses import dataclass
from html.parser import HTMLParser
from typing import Any, Iterator, Mapping
from urllib.parse import urljoin, urlsplit

from .core import (
    BlogProfile,
    Gender,
    ProfileQuadruple,
    SocialResultItem,
    WebResultItem,
    is_absolute_http_url,
)

_MALE_TOKENS = frozenset({"m", "male", "man"})
_FEMALE_TOKENS = frozenset({"f", "female", "woman"})


@dataclass(frozen=True)
class FieldMappingRules:
    """Ordered payload key names tried for each quadruple slot.

    Matching is case-insensitive.  Keys are searched per rule entry,
    left to right: the payload's top level first, then one nesting
    level deep.  Appending a key to a list never changes the outcome
    for payloads that already yield that field.
    """

    name_keys: tuple[str, ...] = ("name", "full_name", "display_name")
    gender_keys: tuple[str, ...] = ("gender", "sex")
    place_keys: tuple[str, ...] = ("location", "place", "city", "locality")
    image_keys: tuple[str, ...] = ("image", "avatar", "picture_url", "photo")

    def __post_init__(self) -> None:
        for keys in (self.name_keys, self.gender_keys, self.place_keys, self.image_keys):
            if not keys:
                raise ValueError("key lists must be non-empty")


DEFAULT_FIELD_MAPPING = FieldMappingRules()

# Host substrings marking a web hit as a blog-profile candidate; a path
# containing /profile qualifies regardless of host.
DEFAULT_BLOG_HOSTS: tuple[str, ...] = ("blog", "blogspot.", "wordpress.", "livejournal.")


def _as_text(value: Any) -> str | None:
    """Scalar payload leaf as stripped text, or None if unusable."""
    if isinstance(value, bytes):
        value = value.decode("utf-8", "replace")
    if isinstance(value, (str, int, float)):
        text = str(value).strip()
        return text or None
    return None


def _iter_key_values(payload: Mapping[str, Any], key: str) -> Iterator[Any]:
    """Values for ``key`` (case-insensitive): top level, then one level deep."""
    lowered = key.lower()
    for k, v in payload.items():
        if isinstance(k, str) and k.lower() == lowered:
            yield v
    for v in payload.values():
        if isinstance(v, Mapping):
            for k, nested in v.items():
                if isinstance(k, str) and k.lower() == lowered:
                    yield nested


def _first_text(payload: Mapping[str, Any], keys: tuple[str, ...]) -> str | None:
    for key in keys:
        for value in _iter_key_values(payload, key):
            text = _as_text(value)
            if text is not None:
                return text
    return None


def _first_image(payload: Mapping[str, Any], keys: tuple[str, ...]) -> str | None:
    for key in keys:
        for value in _iter_key_values(payload, key):
            text = _as_text(value)
            if text is not None and is_absolute_http_url(text):
                return text
    return None


def normalize_gender(token: str | None) -> Gender:
    if token is None:
        return Gender.UNSPECIFIED
    lowered = token.strip().lower()
    if lowered in _MALE_TOKENS:
        return Gender.MALE
    if lowered in _FEMALE_TOKENS:
        return Gender.FEMALE
    return Gender.UNSPECIFIED


def parse_social_item(
    item: SocialResultItem, rules: FieldMappingRules = DEFAULT_FIELD_MAPPING
) -> ProfileQuadruple:
    """Map a social payload tree onto a profile quadruple.

    For each slot the first rule key that matches a usable scalar supplies
    the value; unknown keys are ignored and missing keys yield absent
    fields.  Gender strings are normalized to male/female/unspecified.
    """
    payload = item.payload if isinstance(item.payload, Mapping) else {}
    return ProfileQuadruple(
        name=_first_text(payload, rules.name_keys),
        gender=normalize_gender(_first_text(payload, rules.gender_keys)),
        place=_first_text(payload, rules.place_keys),
        image=_first_image(payload, rules.image_keys),
    )


# Tags that never take a closing tag; they must not affect element depth.
_VOID_TAGS = frozenset(
    {
        "area", "base", "br", "col", "embed", "hr", "img", "input",
        "link", "meta", "param", "source", "track", "wbr",
    }
)

# h-card class token -> profile field for text-carrying elements.
_HCARD_TEXT_CLASSES = {
    "fn": "display_name",
    "p-name": "display_name",
    "locality": "location",
    "p-locality": "location",
    "note": "about",
    "p-note": "about",
}
_HCARD_PHOTO_CLASSES = frozenset({"photo", "u-photo"})


class _ProfileExtractor(HTMLParser):
    """Tolerant single-pass extractor for h-card and metadata fields.

    Text captures are depth-tracked so nested and unclosed markup cannot
    derail extraction; the earliest element in document order wins per
    field.
    """

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._stack: list[str] = []
        self._frames: list[dict[str, Any]] = []
        self._ordinal = 0
        # field -> (ordinal, text)
        self.hcard_text: dict[str, tuple[int, str]] = {}
        self.hcard_photo: str | None = None
        self.meta: dict[str, str] = {}

    # -- helpers -------------------------------------------------------

    @staticmethod
    def _classes(attrs: list[tuple[str, str | None]]) -> frozenset[str]:
        for name, value in attrs:
            if name.lower() == "class" and value:
                return frozenset(token.lower() for token in value.split())
        return frozenset()

    @staticmethod
    def _attr(attrs: list[tuple[str, str | None]], wanted: str) -> str | None:
        for name, value in attrs:
            if name.lower() == wanted and value:
                return value
        return None

    def _open_frames(self, classes: frozenset[str]) -> None:
        fields = {_HCARD_TEXT_CLASSES[c] for c in classes if c in _HCARD_TEXT_CLASSES}
        for field_name in fields:
            self._frames.append(
                {"field": field_name, "depth": len(self._stack), "ordinal": self._ordinal, "parts": []}
            )
            self._ordinal += 1

    def _capture_photo(self, classes: frozenset[str], attrs: list[tuple[str, str | None]]) -> None:
        if self.hcard_photo is None and classes & _HCARD_PHOTO_CLASSES:
            ref = self._attr(attrs, "src") or self._attr(attrs, "href")
            if ref and ref.strip():
                self.hcard_photo = ref.strip()

    def _capture_meta(self, attrs: list[tuple[str, str | None]]) -> None:
        name = (self._attr(attrs, "name") or "").lower()
        prop = (self._attr(attrs, "property") or "").lower()
        content = self._attr(attrs, "content")
        if not content or not content.strip():
            return
        content = content.strip()
        if name == "author":
            self.meta.setdefault("author", content)
        if name == "description":
            self.meta.setdefault("description", content)
        if prop == "og:image" or name == "og:image":
            self.meta.setdefault("og:image", content)

    def _finalize_frames(self, depth: int) -> None:
        remaining = []
        for frame in self._frames:
            if frame["depth"] > depth:
                text = " ".join("".join(frame["parts"]).split())
                if text:
                    current = self.hcard_text.get(frame["field"])
                    if current is None or frame["ordinal"] < current[0]:
                        self.hcard_text[frame["field"]] = (frame["ordinal"], text)
            else:
                remaining.append(frame)
        self._frames = remaining

    # -- HTMLParser hooks ------------------------------------------------

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        classes = self._classes(attrs)
        if tag == "meta":
            self._capture_meta(attrs)
        self._capture_photo(classes, attrs)
        if tag in _VOID_TAGS:
            return
        self._stack.append(tag)
        self._open_frames(classes)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        if tag == "meta":
            self._capture_meta(attrs)
        self._capture_photo(self._classes(attrs), attrs)

    def handle_endtag(self, tag: str) -> None:
        if tag not in self._stack:
            return
        while self._stack:
            popped = self._stack.pop()
            self._finalize_frames(len(self._stack))
            if popped == tag:
                break

    def handle_data(self, data: str) -> None:
        for frame in self._frames:
            frame["parts"].append(data)

    def finish(self) -> None:
        self._finalize_frames(0)


def extract_blog_profile(page: str | bytes, page_url: str) -> BlogProfile | None:
    """Extract a blog profile from page markup, or None if nothing was found.

    Precedence per field: h-card classes (fn / p-name, locality /
    p-locality, photo / u-photo, note / p-note) beat the metadata fallback
    (author meta, og:image, description meta).  Relative avatar URLs are
    resolved against ``page_url``; non-http(s) results are dropped.
    """
    if not is_absolute_http_url(page_url):
        return None
    if isinstance(page, bytes):
        page = page.decode("utf-8", "replace")

    extractor = _ProfileExtractor()
    try:
        extractor.feed(page)
        extractor.close()
    except Exception:  # tolerate any tokenizer hiccup, keep what was collected
        pass
    extractor.finish()

    texts = {f: v for f, (_, v) in extractor.hcard_text.items()}
    display_name = texts.get("display_name") or extractor.meta.get("author")
    location = texts.get("location")
    about = texts.get("about") or extractor.meta.get("description")

    avatar_raw = extractor.hcard_photo or extractor.meta.get("og:image")
    avatar_url: str | None = None
    if avatar_raw:
        try:
            resolved = urljoin(page_url, avatar_raw)
        except ValueError:
            resolved = ""
        if is_absolute_http_url(resolved):
            avatar_url = resolved

    if not any((display_name, location, avatar_url, about)):
        return None
    return BlogProfile(
        url=page_url,
        display_name=display_name,
        location=location,
        avatar_url=avatar_url,
        about=about,
    )


def blog_url_match(url: str, blog_hosts: tuple[str, ...] = DEFAULT_BLOG_HOSTS) -> bool:
    """True iff the URL's host matches a blog pattern or its path has /profile."""
    try:
        parts = urlsplit(url)
    except ValueError:
        return False
    host = parts.netloc.lower()
    if any(pattern.lower() in host for pattern in blog_hosts):
        return True
    return "/profile" in parts.path.lower()


def classify_blog_candidate(
    item: WebResultItem, blog_hosts: tuple[str, ...] = DEFAULT_BLOG_HOSTS
) -> bool:
    """True iff the hit should be fetched for blog-profile extraction."""
    return blog_url_match(item.url, blog_hosts)
