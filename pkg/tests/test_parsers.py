import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mailsleuth.core import Gender, SocialResultItem, SourceId, SourceKind, WebResultItem
from mailsleuth.parsers import (
    DEFAULT_FIELD_MAPPING,
    FieldMappingRules,
    classify_blog_candidate,
    extract_blog_profile,
    parse_social_item,
)

S1 = SourceId(kind=SourceKind.SOCIAL, provider_name="s1")
W1 = SourceId(kind=SourceKind.WEB, provider_name="w1")


def social(payload) -> SocialResultItem:
    return SocialResultItem(source=S1, rank=1, payload=payload)


def web(url: str) -> WebResultItem:
    return WebResultItem(source=W1, rank=1, url=url, title="t", snippet="s")


class TestParseSocialItem:
    def test_direct_mapping(self):
        quad = parse_social_item(
            social(
                {
                    "name": "Alice",
                    "gender": "female",
                    "location": "Pondicherry",
                    "avatar": "http://x/a.png",
                }
            )
        )
        assert quad.name == "Alice"
        assert quad.gender is Gender.FEMALE
        assert quad.place == "Pondicherry"
        assert quad.image == "http://x/a.png"

    def test_empty_payload(self):
        quad = parse_social_item(social({}))
        assert quad.name is None
        assert quad.gender is Gender.UNSPECIFIED
        assert quad.place is None
        assert quad.image is None

    def test_nested_lookup_and_gender_normalization(self):
        quad = parse_social_item(social({"sex": "M", "profile": {"city": "Chennai"}}))
        assert quad.name is None
        assert quad.gender is Gender.MALE
        assert quad.place == "Chennai"
        assert quad.image is None

    @pytest.mark.parametrize(
        "token,expected",
        [
            ("m", Gender.MALE),
            ("MALE", Gender.MALE),
            ("Man", Gender.MALE),
            ("f", Gender.FEMALE),
            ("Female", Gender.FEMALE),
            ("WOMAN", Gender.FEMALE),
            ("nonbinary", Gender.UNSPECIFIED),
            ("", Gender.UNSPECIFIED),
            ("x", Gender.UNSPECIFIED),
        ],
    )
    def test_gender_tokens(self, token, expected):
        assert parse_social_item(social({"gender": token})).gender is expected

    def test_key_matching_is_case_insensitive(self):
        assert parse_social_item(social({"NAME": "Bo"})).name == "Bo"

    def test_top_level_beats_nested_for_same_key(self):
        quad = parse_social_item(social({"location": "Top", "inner": {"location": "Deep"}}))
        assert quad.place == "Top"

    def test_earlier_rule_key_wins_even_when_nested(self):
        # "location" precedes "city"; a nested location beats a top-level city.
        quad = parse_social_item(social({"city": "X", "profile": {"location": "Y"}}))
        assert quad.place == "Y"

    def test_two_levels_deep_is_ignored(self):
        quad = parse_social_item(social({"a": {"b": {"city": "Deep"}}}))
        assert quad.place is None

    def test_invalid_image_url_skipped(self):
        quad = parse_social_item(social({"image": "not-a-url", "avatar": "https://x/a.png"}))
        assert quad.image == "https://x/a.png"

    def test_unusable_match_does_not_block_later_keys(self):
        quad = parse_social_item(social({"name": "", "full_name": "Real Name"}))
        assert quad.name == "Real Name"

    def test_numbers_are_stringified(self):
        assert parse_social_item(social({"name": 42})).name == "42"

    def test_custom_rules(self):
        rules = FieldMappingRules(name_keys=("handle",))
        assert parse_social_item(social({"handle": "zed", "name": "ignored"}), rules).name == "zed"

    def test_monotonicity_appending_key_keeps_output(self):
        payload = {"city": "X", "profile": {"location": "Y"}}
        base = FieldMappingRules(place_keys=("location",))
        extended = FieldMappingRules(place_keys=("location", "city"))
        assert parse_social_item(social(payload), base).place == "Y"
        assert parse_social_item(social(payload), extended).place == "Y"


_LEAF = st.one_of(
    st.text(max_size=20),
    st.integers(),
    st.floats(allow_nan=True, allow_infinity=True),
    st.binary(max_size=20),
    st.none(),
    st.booleans(),
)
_PAYLOAD = st.dictionaries(
    st.text(max_size=10),
    st.one_of(_LEAF, st.dictionaries(st.text(max_size=10), _LEAF, max_size=4)),
    max_size=6,
)


@given(payload=_PAYLOAD)
def test_parse_social_item_total(payload):
    parse_social_item(social(payload))  # must never raise


@given(payload=_PAYLOAD, extra=st.text(min_size=1, max_size=8))
def test_monotonicity_property(payload, extra):
    base = DEFAULT_FIELD_MAPPING
    extended = FieldMappingRules(
        name_keys=base.name_keys + (extra,),
        gender_keys=base.gender_keys + (extra,),
        place_keys=base.place_keys + (extra,),
        image_keys=base.image_keys + (extra,),
    )
    before = parse_social_item(social(payload), base)
    after = parse_social_item(social(payload), extended)
    if before.name is not None:
        assert after.name == before.name
    if before.place is not None:
        assert after.place == before.place
    if before.image is not None:
        assert after.image == before.image
    if before.gender is not Gender.UNSPECIFIED:
        assert after.gender is before.gender


PAGE_URL = "https://someone.blogspot.com/post/1"


class TestExtractBlogProfile:
    def test_minimal_fn(self):
        profile = extract_blog_profile('<span class="fn">Bob</span>', PAGE_URL)
        assert profile is not None
        assert profile.display_name == "Bob"
        assert profile.location is None
        assert profile.url == PAGE_URL

    def test_no_markers_yields_absent(self):
        assert extract_blog_profile("<html><body><p>hello</p></body></html>", PAGE_URL) is None

    def test_hcard_beats_meta_author(self):
        page = '<head><meta name="author" content="Robert"></head><body><span class="fn">Bob</span></body>'
        profile = extract_blog_profile(page, PAGE_URL)
        assert profile.display_name == "Bob"

    def test_meta_fallback(self):
        page = (
            '<head><meta name="author" content="Robert">'
            '<meta property="og:image" content="https://img.example/r.png">'
            '<meta name="description" content="writes things"></head>'
        )
        profile = extract_blog_profile(page, PAGE_URL)
        assert profile.display_name == "Robert"
        assert profile.avatar_url == "https://img.example/r.png"
        assert profile.about == "writes things"

    def test_full_hcard(self):
        page = """
        <div class="vcard">
          <img class="photo" src="https://pic.example/bob.png">
          <span class="fn">Bob Roy</span>
          <span class="locality">Madrid</span>
          <p class="note">About me.</p>
        </div>
        """
        profile = extract_blog_profile(page, PAGE_URL)
        assert profile.display_name == "Bob Roy"
        assert profile.location == "Madrid"
        assert profile.avatar_url == "https://pic.example/bob.png"
        assert profile.about == "About me."

    def test_microformats2_classes(self):
        page = (
            '<span class="p-name">Mei</span><span class="p-locality">Osaka</span>'
            '<img class="u-photo" src="https://x.example/m.png">'
        )
        profile = extract_blog_profile(page, PAGE_URL)
        assert (profile.display_name, profile.location) == ("Mei", "Osaka")
        assert profile.avatar_url == "https://x.example/m.png"

    def test_relative_avatar_resolved_against_page_url(self):
        profile = extract_blog_profile(
            '<span class="fn">B</span><img class="photo" src="/img/b.png">', PAGE_URL
        )
        assert profile.avatar_url == "https://someone.blogspot.com/img/b.png"

    def test_non_http_avatar_dropped(self):
        profile = extract_blog_profile(
            '<span class="fn">B</span><img class="photo" src="data:image/png;base64,x">',
            PAGE_URL,
        )
        assert profile.avatar_url is None
        assert profile.display_name == "B"

    def test_first_fn_in_document_order_wins(self):
        page = '<div class="fn">First <span class="fn">Inner</span></div><span class="fn">Second</span>'
        profile = extract_blog_profile(page, PAGE_URL)
        assert profile.display_name == "First Inner"

    def test_nested_text_is_captured(self):
        page = '<span class="fn">Bob <b>Roy</b> Jr</span>'
        assert extract_blog_profile(page, PAGE_URL).display_name == "Bob Roy Jr"

    def test_unclosed_markup_tolerated(self):
        page = '<div><span class="fn">Bob'
        assert extract_blog_profile(page, PAGE_URL).display_name == "Bob"

    def test_bytes_input_with_invalid_utf8(self):
        page = b'<span class="fn">B\xffob</span>'
        profile = extract_blog_profile(page, PAGE_URL)
        assert profile is not None and "ob" in profile.display_name

    def test_invalid_page_url_yields_absent(self):
        assert extract_blog_profile('<span class="fn">Bob</span>', "not-a-url") is None


@given(st.binary(max_size=400))
def test_extract_blog_profile_total(data):
    extract_blog_profile(data, PAGE_URL)  # must never raise


def test_parser_fuzz_seeded_byte_strings():
    rng = random.Random(1234)
    for _ in range(500):
        blob = bytes(rng.randrange(256) for _ in range(rng.randrange(200)))
        extract_blog_profile(blob, PAGE_URL)
        parse_social_item(social({"name": blob, "bio": {"gender": blob}}))


class TestClassifyBlogCandidate:
    @pytest.mark.parametrize(
        "url,expected",
        [
            ("http://someone.blogspot.com/x", True),
            ("https://me.wordpress.com/", True),
            ("https://user.livejournal.com/1.html", True),
            ("https://blog.example.org/post", True),
            ("http://example.com/profile/42", True),
            ("http://example.com/about", False),
            ("https://news.example.org/story", False),
        ],
    )
    def test_default_patterns(self, url, expected):
        assert classify_blog_candidate(web(url)) is expected

    def test_custom_hosts(self):
        assert classify_blog_candidate(web("https://notes.example.io/p"), ("notes.",)) is True
        assert classify_blog_candidate(web("https://example.io/p"), ("notes.",)) is False
