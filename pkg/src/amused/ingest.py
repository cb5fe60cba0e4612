"""Manifest-driven article ingestion: load HTML, extract fields, store articles.

Default mode reads local fixture files named in the manifest; ``live=True``
swaps in an HTTP loader. Raw HTML is copied into ``<store>/html/`` so later
stages (link extraction) work from the store directory alone.
"""

from __future__ import annotations

import json
import re
import urllib.request
from dataclasses import dataclass, field
from datetime import datetime, date
from pathlib import Path

from .errors import (
    BadAcronym,
    FieldMissing,
    FixtureMissing,
    ManifestInvalid,
    UnparseableDate,
)
from .htmldoc import parse_html
from .models import ACRONYM_RE, NewsArticle
from .store import Store

MANDATORY_FIELDS = ("title", "body", "verdict")
PROFILE_FIELDS = ("title", "published_date", "body", "verdict", "countries", "publisher")


@dataclass
class ManifestEntry:
    source_url: str
    html_path: str | None = None
    verdict_hint: str | None = None


@dataclass
class SourceManifest:
    source_name: str
    source_acronym: str
    parser_profile: str
    entries: list[ManifestEntry]
    base_dir: Path = field(default_factory=Path)

    @classmethod
    def load(cls, path: str | Path) -> "SourceManifest":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ManifestInvalid(f"{path}: {exc}") from exc
        try:
            entries = [ManifestEntry(**e) for e in raw["entries"]]
            manifest = cls(
                source_name=raw["source_name"],
                source_acronym=raw["source_acronym"],
                parser_profile=raw["parser_profile"],
                entries=entries,
                base_dir=path.parent,
            )
        except (KeyError, TypeError) as exc:
            raise ManifestInvalid(f"{path}: {exc}") from exc
        manifest.validate()
        return manifest

    def validate(self):
        if not ACRONYM_RE.match(self.source_acronym):
            raise ManifestInvalid(
                f"source_acronym {self.source_acronym!r} must be 1-4 uppercase letters")
        if not self.entries:
            raise ManifestInvalid("entries must be non-empty")
        urls = [e.source_url for e in self.entries]
        if len(set(urls)) != len(urls):
            raise ManifestInvalid("duplicate source_url in manifest")


@dataclass
class ParserProfile:
    profile_name: str
    selectors: dict[str, dict]  # field -> {"selector": ..., "attribute"|"text": ...}

    @classmethod
    def load(cls, path: str | Path) -> "ParserProfile":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ManifestInvalid(f"parser profile {path}: {exc}") from exc
        profile = cls(profile_name=raw.get("profile_name", path.stem),
                      selectors=raw["selectors"])
        profile.validate()
        return profile

    def validate(self):
        missing = [f for f in PROFILE_FIELDS if f not in self.selectors]
        if missing:
            raise ManifestInvalid(f"profile {self.profile_name!r} lacks rules for {missing}")

    def to_dict(self) -> dict:
        return {"profile_name": self.profile_name, "selectors": self.selectors}

    @property
    def body_selector(self) -> str:
        return self.selectors["body"]["selector"]


def assign_news_id(source_acronym: str, sequence: int) -> str:
    """Acronym + decimal ordinal, e.g. ("PY", 9) -> "PY9"."""
    if not ACRONYM_RE.match(source_acronym):
        raise BadAcronym(f"{source_acronym!r} is not 1-4 uppercase letters")
    if sequence < 1:
        raise BadAcronym(f"sequence must be >= 1, got {sequence}")
    return f"{source_acronym}{sequence}"


_DATE_FORMATS = (
    "%d %B %Y",    # 01 September 2020
    "%B %d, %Y",   # September 1, 2020
)


def parse_date(raw: str) -> str:
    """Parse the accepted date spellings into an ISO 8601 date string."""
    text = raw.strip()
    try:
        return date.fromisoformat(text).isoformat()
    except ValueError:
        pass
    for fmt in _DATE_FORMATS:
        try:
            return datetime.strptime(text, fmt).date().isoformat()
        except ValueError:
            continue
    raise UnparseableDate(raw)


def _apply_rule(doc, rule: dict) -> str | None:
    node = doc.select_one(rule["selector"])
    if node is None:
        return None
    if rule.get("attribute"):
        value = node.attrs.get(rule["attribute"])
        return value.strip() if value else None
    text = node.text()
    return text or None


def parse_article(html: str, profile: ParserProfile,
                  verdict_hint: str | None = None) -> dict:
    """Extract article fields from HTML per the profile's rules.

    Returns a dict with title, published_date (ISO or None), body_text,
    verdict_raw, publisher, countries. Verdict casing is preserved verbatim;
    normalization happens at labeling time.
    """
    if not html:
        raise FieldMissing("body")
    doc = parse_html(html)
    values = {f: _apply_rule(doc, profile.selectors[f]) for f in PROFILE_FIELDS}
    if values["verdict"] is None and verdict_hint:
        values["verdict"] = verdict_hint
    for fname in MANDATORY_FIELDS:
        if values[fname] is None:
            raise FieldMissing(fname)
    published = parse_date(values["published_date"]) if values["published_date"] else None
    countries = [c.strip() for c in (values["countries"] or "").split(",") if c.strip()]
    return {
        "title": values["title"],
        "published_date": published,
        "body_text": values["body"],
        "verdict_raw": values["verdict"],
        "publisher": values["publisher"] or "",
        "countries": countries,
    }


class FixtureLoader:
    """Reads entry HTML from local files, resolved against the manifest dir."""

    def __init__(self, base_dir: Path):
        self.base_dir = Path(base_dir)

    def load(self, entry: ManifestEntry) -> str:
        if not entry.html_path:
            raise FixtureMissing(f"{entry.source_url}: no html_path and live mode off")
        path = Path(entry.html_path)
        if not path.is_absolute():
            path = self.base_dir / path
        if not path.exists():
            raise FixtureMissing(str(path))
        return path.read_text(encoding="utf-8")


class LiveLoader:
    """Fetches entry HTML over HTTP. Only used behind the --live flag."""

    def __init__(self, timeout: float = 30.0):
        self.timeout = timeout

    def load(self, entry: ManifestEntry) -> str:
        req = urllib.request.Request(
            entry.source_url, headers={"User-Agent": "amused/0.1"})
        with urllib.request.urlopen(req, timeout=self.timeout) as resp:
            return resp.read().decode("utf-8", errors="replace")


def _next_sequence(store: Store, acronym: str) -> int:
    """Continue numbering from the highest existing ordinal for the acronym."""
    highest = 0
    for article in store.articles():
        m = re.match(rf"^{acronym}([0-9]+)$", article.news_id)
        if m:
            highest = max(highest, int(m.group(1)))
    return highest + 1


def ingest_manifest(manifest: SourceManifest, store: Store,
                    profile: ParserProfile | None = None,
                    loader=None, live: bool = False) -> dict:
    """Parse every manifest entry into a stored NewsArticle.

    Partial success: per-entry failures are reported, not fatal. Already
    ingested source_urls are skipped so reruns create nothing new.
    """
    if profile is None:
        profile_path = manifest.base_dir / f"{manifest.parser_profile}.json"
        if not profile_path.exists():
            raise ManifestInvalid(f"parser profile file not found: {profile_path}")
        profile = ParserProfile.load(profile_path)
    if loader is None:
        loader = LiveLoader() if live else FixtureLoader(manifest.base_dir)

    profiles_meta = dict(store.meta.get("parser_profiles", {}))
    profiles_meta[manifest.source_acronym] = profile.to_dict()
    store.set_meta("parser_profiles", profiles_meta)

    known_urls = {a.source_url for a in store.articles()}
    html_dir = store.path / "html"
    html_dir.mkdir(exist_ok=True)

    sequence = _next_sequence(store, manifest.source_acronym)
    created = 0
    failures: list[dict] = []
    for entry in manifest.entries:
        if entry.source_url in known_urls:
            continue
        try:
            html = loader.load(entry)
            fields = parse_article(html, profile, verdict_hint=entry.verdict_hint)
            news_id = assign_news_id(manifest.source_acronym, sequence)
            html_ref = html_dir / f"{news_id}.html"
            html_ref.write_text(html, encoding="utf-8")
            article = NewsArticle(
                news_id=news_id,
                source_url=entry.source_url,
                html_ref=str(html_ref.relative_to(store.path)),
                **fields,
            )
            store.upsert(article)
            sequence += 1
            created += 1
        except Exception as exc:  # per-entry, reported not fatal
            failures.append({
                "source_url": entry.source_url,
                "error": type(exc).__name__,
                "detail": str(exc),
            })
    return {"articles_created": created, "failures": failures}


def read_article_html(store: Store, article: NewsArticle) -> str:
    path = Path(article.html_ref)
    if not path.is_absolute():
        path = store.path / path
    return path.read_text(encoding="utf-8")


def profile_for_article(store: Store, article: NewsArticle) -> ParserProfile | None:
    """Look up the parser profile recorded at ingest time for this article."""
    m = re.match(r"^([A-Z]{1,4})[0-9]+$", article.news_id)
    if not m:
        return None
    raw = store.meta.get("parser_profiles", {}).get(m.group(1))
    if raw is None:
        return None
    return ParserProfile(profile_name=raw["profile_name"], selectors=raw["selectors"])
