#!/usr/bin/env python3
"""Regenerate the demo corpus, engine config and benchmark manifest.

The corpus is engineered so the shipped 20-address benchmark session
yields exactly 15 summary successes and 10 blog successes: addresses
1-15 carry name-bearing social fixtures, 6-15 also have blog pages with
extractable profile markup, 16 has a social fixture without a name, 17
has a blog-candidate page without profile markup, and 18-20 appear
nowhere.  Everything written here is deterministic.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from mailsleuth.providers import page_fixture_name  # noqa: E402

CORPUS = REPO / "corpus" / "demo"

EMAILS = [
    "alice@example.com",
    "bob.fisher@example.com",
    "carol.higgins@example.net",
    "dan.wheeler@example.org",
    "erin.voss@example.com",
    "farid.osman@example.net",
    "grace.lin@example.org",
    "hugo.brandt@example.com",
    "isla.macrae@example.net",
    "jonas.keller@example.org",
    "kavya.rao@example.com",
    "liam.doyle@example.net",
    "mei.tanaka@example.org",
    "noah.petit@example.com",
    "priya.nair@example.net",
    "quinn.abbot@example.org",
    "rafael.sousa@example.com",
    "sofia.marin@example.net",
    "tomas.berg@example.org",
    "uma.desai@example.com",
]

PEOPLEHUB = {
    "alice@example.com": [
        {
            "name": "Alice Johnson",
            "gender": "f",
            "location": "Pondicherry",
            "avatar": "https://cdn.peoplehub.example/avatars/alice.png",
            "headline": "Systems engineer",
        }
    ],
    "bob.fisher@example.com": [
        {"name": "Bob Fisher", "gender": "male", "location": "Chennai"}
    ],
    "dan.wheeler@example.org": [
        {"name": "Dan Wheeler", "gender": "m", "location": "Austin"}
    ],
    "erin.voss@example.com": [
        {
            "name": "Erin Voss",
            "gender": "female",
            "location": "Oslo",
            "image": "https://img.peoplehub.example/erin.jpg",
        }
    ],
    "farid.osman@example.net": [
        {"name": "Farid Osman", "gender": "man", "location": "Cairo"}
    ],
    "hugo.brandt@example.com": [{"name": "Hugo Brandt", "gender": "male"}],
    "isla.macrae@example.net": [
        {"name": "Isla MacRae", "gender": "F", "location": "Glasgow"}
    ],
    "kavya.rao@example.com": [
        {"name": "Kavya Rao", "gender": "female", "location": "Bengaluru"}
    ],
    "liam.doyle@example.net": [{"name": "Liam Doyle", "gender": "m"}],
    "noah.petit@example.com": [
        {"name": "Noah Petit", "gender": "male", "location": "Lille"}
    ],
    "priya.nair@example.net": [
        {"name": "Priya Nair", "gender": "f", "location": "Kochi"}
    ],
    "quinn.abbot@example.org": [{"gender": "m", "headline": "keeps a low profile"}],
}

SOCIALGRAPH = {
    "alice@example.com": [
        {
            "display_name": "alice johnson",
            "sex": "female",
            "profile": {"city": "Pondicherry"},
        }
    ],
    "carol.higgins@example.net": [
        {"full_name": "Carol Higgins", "sex": "woman", "profile": {"locality": "Lyon"}}
    ],
    "dan.wheeler@example.org": [
        {"name": "Daniel Wheeler", "gender": "male", "city": "Austin"}
    ],
    "grace.lin@example.org": [
        {"display_name": "Grace Lin", "sex": "f", "locality": "Taipei"}
    ],
    "hugo.brandt@example.com": [
        {"name": "Hugo Brandt", "gender": "m", "location": "Berlin"}
    ],
    "jonas.keller@example.org": [
        {"name": "Jonas Keller", "gender": "male", "place": "Zurich"}
    ],
    "mei.tanaka@example.org": [
        {"display_name": "Mei Tanaka", "sex": "woman", "city": "Osaka"}
    ],
    "priya.nair@example.net": [{"name": "Priya  Nair", "gender": "female"}],
}

BLOG_URLS = {
    "farid.osman@example.net": "http://faridosman.blogspot.com/",
    "grace.lin@example.org": "https://gracelin.wordpress.com/",
    "hugo.brandt@example.com": "https://hugo-brandt.livejournal.com/",
    "isla.macrae@example.net": "https://blog.islamacrae.net/",
    "jonas.keller@example.org": "https://plainsite.example.org/profile/jonas.keller",
    "kavya.rao@example.com": "http://kavyarao.blogspot.com/",
    "liam.doyle@example.net": "https://liamdoyle.wordpress.com/about/",
    "mei.tanaka@example.org": "https://mei-tanaka.blogspot.com/",
    "noah.petit@example.com": "https://noahpetit.wordpress.com/",
    "priya.nair@example.net": "https://priyanair.livejournal.com/",
    "rafael.sousa@example.com": "http://rafaelsousa.blogspot.com/",
}

WEB_INDEX = {
    "alice@example.com": [
        {
            "url": "https://example.com/team/alice",
            "title": "Team - Alice Johnson",
            "snippet": "Alice leads the platform team.",
        }
    ],
    "bob.fisher@example.com": [
        {
            "url": "https://university.example.edu/staff/bfisher",
            "title": "Staff directory - B. Fisher",
            "snippet": "Lecturer, marine biology.",
        }
    ],
    "farid.osman@example.net": [
        {
            "url": BLOG_URLS["farid.osman@example.net"],
            "title": "Farid's notes",
            "snippet": "Distributed systems, Cairo, coffee.",
        }
    ],
    "grace.lin@example.org": [
        {
            "url": BLOG_URLS["grace.lin@example.org"],
            "title": "Grace Lin - field notes",
            "snippet": "Sketches and city walks.",
        },
        {
            "url": "https://example.com/talks/grace-lin",
            "title": "Conference talk",
            "snippet": "Slides from the lightning talk.",
        },
    ],
    "hugo.brandt@example.com": [
        {
            "url": BLOG_URLS["hugo.brandt@example.com"],
            "title": "hugo's journal",
            "snippet": "Music and Berlin weather.",
        }
    ],
    "isla.macrae@example.net": [
        {
            "url": BLOG_URLS["isla.macrae@example.net"],
            "title": "Isla writes",
            "snippet": "Essays from Glasgow.",
        }
    ],
    "jonas.keller@example.org": [
        {
            "url": BLOG_URLS["jonas.keller@example.org"],
            "title": "Jonas Keller - profile",
            "snippet": "Member since 2009.",
        }
    ],
    "kavya.rao@example.com": [
        {
            "url": BLOG_URLS["kavya.rao@example.com"],
            "title": "Kavya's kitchen",
            "snippet": "Recipes and road trips.",
        }
    ],
    "liam.doyle@example.net": [
        {
            "url": BLOG_URLS["liam.doyle@example.net"],
            "title": "about liam",
            "snippet": "Who writes this blog.",
        }
    ],
    "mei.tanaka@example.org": [
        {
            "url": BLOG_URLS["mei.tanaka@example.org"],
            "title": "mei tanaka",
            "snippet": "Photography notebook.",
        }
    ],
    "noah.petit@example.com": [
        {
            "url": BLOG_URLS["noah.petit@example.com"],
            "title": "noah petit",
            "snippet": "Cycling logs from Lille.",
        }
    ],
    "priya.nair@example.net": [
        {
            "url": BLOG_URLS["priya.nair@example.net"],
            "title": "priya's journal",
            "snippet": "Backwaters and book reviews.",
        }
    ],
    "rafael.sousa@example.com": [
        {
            "url": BLOG_URLS["rafael.sousa@example.com"],
            "title": "rafael",
            "snippet": "Photos from my travels.",
        }
    ],
}

PAGES = {
    "farid.osman@example.net": """<!doctype html>
<html>
<head><title>Farid's notes</title></head>
<body>
<div class="vcard">
  <img class="photo" src="https://cdn.blogspot.example/farid.jpg" alt="Farid">
  <span class="fn">Farid Osman</span>
  <span class="adr"><span class="locality">Cairo</span></span>
  <p class="note">Writing about distributed systems and coffee.</p>
</div>
<p>Latest post: consensus is hard.</p>
</body>
</html>
""",
    "grace.lin@example.org": """<!doctype html>
<html>
<head><title>Grace Lin - field notes</title></head>
<body>
<div class="h-card">
  <a class="fn url" href="/">Grace Lin</a>
  <span class="locality">Taipei</span>
</div>
</body>
</html>
""",
    "hugo.brandt@example.com": """<html>
<head><title>hugo's journal</title></head>
<body>
<span class="fn">Hugo Brandt</span>
<img class="photo" src="https://pics.livejournal.example/hugo/64.png">
</body>
</html>
""",
    "isla.macrae@example.net": """<!doctype html>
<html>
<head><title>Isla writes</title></head>
<body>
<header>
  <h1 class="fn">Isla MacRae</h1>
  <p>Based in <span class="locality">Glasgow</span>.</p>
</header>
</body>
</html>
""",
    "jonas.keller@example.org": """<!doctype html>
<html>
<head><title>Jonas Keller - profile</title></head>
<body>
<h1 class="fn">Jonas Keller</h1>
<p>Member since 2009.</p>
</body>
</html>
""",
    "kavya.rao@example.com": """<!doctype html>
<html>
<head>
<meta name="author" content="Kavya Rao">
<meta property="og:image" content="https://img.blogspot.example/kavya.png">
<meta name="description" content="Recipes and road trips.">
<title>Kavya's kitchen</title>
</head>
<body><h1>Kavya's kitchen</h1></body>
</html>
""",
    "liam.doyle@example.net": """<!doctype html>
<html>
<head>
<meta name="author" content="L. Doyle">
<title>about liam</title>
</head>
<body>
<span class="fn">Liam Doyle</span>
</body>
</html>
""",
    "mei.tanaka@example.org": """<!doctype html>
<html>
<head><title>mei tanaka</title></head>
<body>
<div class="h-card">
  <span class="p-name">Mei Tanaka</span>
  <span class="p-locality">Osaka</span>
  <img class="u-photo" src="https://mei-tanaka.blogspot.com/img/mei.png">
</div>
</body>
</html>
""",
    "noah.petit@example.com": """<!doctype html>
<html>
<head><title>noah petit</title></head>
<body>
<div class="h-card">
  <span class="fn">Noah Petit</span>
  <img class="photo" src="/img/noah.png">
</div>
</body>
</html>
""",
    "priya.nair@example.net": """<!doctype html>
<html>
<head><title>priya's journal</title></head>
<body>
<span class="fn">Priya Nair</span>
<p class="note">Backwaters, book reviews and long train rides.</p>
</body>
</html>
""",
    "rafael.sousa@example.com": """<!doctype html>
<html>
<head><title>rafael</title></head>
<body>
<p>Photos from my travels.</p>
</body>
</html>
""",
}

ENGINE_CONFIG = {
    "corpus": "corpus/demo",
    "eps": 10,
    "cache_ttl_s": 3600,
    "rate_limit_rps": 1000,
    "providers": [
        {
            "kind": "social",
            "name": "peoplehub",
            "priority": 1,
            "timeout_ms": 5000,
            "backend": {"type": "fixture"},
        },
        {
            "kind": "social",
            "name": "socialgraph",
            "priority": 2,
            "timeout_ms": 5000,
            "backend": {"type": "fixture"},
        },
        {
            "kind": "web",
            "name": "websearch",
            "priority": 3,
            "timeout_ms": 5000,
            "backend": {"type": "fixture"},
        },
    ],
}


def write_json(path: Path, document) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def main() -> None:
    for email, payloads in PEOPLEHUB.items():
        write_json(CORPUS / "social" / "peoplehub" / f"{email}.json", payloads)
    for email, payloads in SOCIALGRAPH.items():
        write_json(CORPUS / "social" / "socialgraph" / f"{email}.json", payloads)

    write_json(CORPUS / "web" / "websearch" / "index.json", WEB_INDEX)

    pages_dir = CORPUS / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    for email, page in PAGES.items():
        url = BLOG_URLS[email]
        (pages_dir / page_fixture_name(url)).write_text(page, encoding="utf-8")

    write_json(REPO / "config" / "engine.json", ENGINE_CONFIG)
    write_json(
        REPO / "bench" / "manifest.json",
        {"sessions": [{"id": 1, "emails": EMAILS}]},
    )
    print(f"demo corpus written under {CORPUS}")


if __name__ == "__main__":
    main()
