import json
from pathlib import Path

import pytest

from mailsleuth.config import ConfigError, config_from_corpus, load_config
from mailsleuth.core import SourceKind, Threshold
from mailsleuth.providers import FixtureBackend, HttpBackend


def _write(tmp_path: Path, document: dict) -> Path:
    path = tmp_path / "engine.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


BASE = {
    "corpus": "corpus/demo",
    "eps": 7,
    "cache_ttl_s": 120,
    "rate_limit_rps": 9,
    "providers": [
        {"kind": "social", "name": "s1", "priority": 1, "backend": {"type": "fixture"}},
        {
            "kind": "web",
            "name": "w1",
            "priority": 2,
            "eps_override": 5,
            "timeout_ms": 900,
            "backend": {
                "type": "http",
                "endpoint_template": "https://api.example/?q={query}",
                "response_mapping": {"items": "hits"},
            },
        },
    ],
}


class TestLoadConfig:
    def test_full_round_trip(self, tmp_path):
        config = load_config(_write(tmp_path, BASE))
        assert config.corpus_path == Path("corpus/demo")
        assert config.eps == Threshold(7)
        assert config.cache_ttl_s == 120
        assert config.rate_limit_rps == 9
        s1, w1 = config.providers
        assert s1.id.kind is SourceKind.SOCIAL
        assert isinstance(s1.backend, FixtureBackend)
        assert s1.backend.corpus_path == Path("corpus/demo")
        assert s1.rate_rps == 9
        assert isinstance(w1.backend, HttpBackend)
        assert w1.eps_override == Threshold(5)
        assert w1.timeout_ms == 900

    def test_corpus_override_rebinds_fixture_backends(self, tmp_path):
        config = load_config(_write(tmp_path, BASE), corpus_override=Path("/elsewhere"))
        assert config.corpus_path == Path("/elsewhere")
        assert config.providers[0].backend.corpus_path == Path("/elsewhere")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "engine.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.update(providers=[]),
            lambda d: d.update(eps=0),
            lambda d: d.update(eps=101),
            lambda d: d.update(rate_limit_rps=0),
            lambda d: d["providers"][0].update(kind="carrier-pigeon"),
            lambda d: d["providers"][0].update(priority=0),
            lambda d: d["providers"][1].update(priority=1),  # duplicate
            lambda d: d["providers"][1]["backend"].pop("endpoint_template"),
            lambda d: d["providers"][0].update(timeout_ms=50),
        ],
    )
    def test_rejects_bad_documents(self, tmp_path, mutate):
        document = json.loads(json.dumps(BASE))
        mutate(document)
        with pytest.raises(ConfigError):
            load_config(_write(tmp_path, document))

    def test_field_mapping_section(self, tmp_path):
        document = json.loads(json.dumps(BASE))
        document["field_mapping"] = {"name_keys": ["nick", "name"]}
        config = load_config(_write(tmp_path, document))
        assert config.field_mapping.name_keys == ("nick", "name")
        assert config.field_mapping.gender_keys == ("gender", "sex")  # defaults kept

    def test_blog_hosts_section(self, tmp_path):
        document = json.loads(json.dumps(BASE))
        document["blog_hosts"] = ["notes."]
        config = load_config(_write(tmp_path, document))
        assert config.blog_hosts == ("notes.",)


class TestDiscovery:
    def test_discovers_social_then_web_alphabetical(self, tmp_path):
        for name in ("zeta", "alpha"):
            (tmp_path / "social" / name).mkdir(parents=True)
        (tmp_path / "web" / "search").mkdir(parents=True)
        config = config_from_corpus(tmp_path)
        names = [(d.id.kind.value, d.id.provider_name, d.priority) for d in config.providers]
        assert names == [("social", "alpha", 1), ("social", "zeta", 2), ("web", "search", 3)]

    def test_empty_corpus_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            config_from_corpus(tmp_path)

    def test_missing_dir_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            config_from_corpus(tmp_path / "nope")
