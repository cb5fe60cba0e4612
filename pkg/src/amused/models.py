"""Domain records shared by every pipeline stage.

Records serialize to flat JSON dicts (the store's line format) and validate
their own invariants; the store calls ``validate()`` before persisting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, asdict
from urllib.parse import urlparse

from .errors import InvariantViolation
from .urls import Platform, canonicalize

NEWS_ID_RE = re.compile(r"^[A-Z]{1,4}[0-9]+$")
ACRONYM_RE = re.compile(r"^[A-Z]{1,4}$")

MODALITIES = ("text", "image", "text+image", "video")
FETCH_STATUSES = ("fetched", "deleted", "unavailable")
LABEL_CLASSES = ("false", "partially_false", "true", "other")
VERIFICATION_STATES = ("unverified", "sampled", "confirmed", "rejected")
VERDICTS = ("pending", "confirmed", "rejected")

# Legal verification_state replacements: forward only.
STATE_TRANSITIONS = {
    "unverified": {"unverified", "sampled"},
    "sampled": {"sampled", "confirmed", "rejected"},
    "confirmed": {"confirmed"},
    "rejected": {"rejected"},
}


def _require(cond: bool, invariant: str, detail: str = ""):
    if not cond:
        raise InvariantViolation(invariant, detail)


@dataclass
class NewsArticle:
    news_id: str
    source_url: str
    title: str
    published_date: str | None  # ISO 8601 date or None
    body_text: str
    verdict_raw: str
    publisher: str
    countries: list[str] = field(default_factory=list)
    language: str | None = None
    html_ref: str = ""

    @property
    def key(self) -> str:
        return self.news_id

    def validate(self):
        _require(bool(NEWS_ID_RE.match(self.news_id)),
                 "news_id pattern", f"{self.news_id!r} is not 1-4 uppercase letters + digits")
        parts = urlparse(self.source_url)
        _require(parts.scheme in ("http", "https") and bool(parts.netloc),
                 "source_url absolute", self.source_url)
        _require(bool(self.verdict_raw), "verdict_raw non-empty", self.news_id)
        if self.language is not None:
            _require(len(self.language) == 2 and self.language.isascii()
                     and self.language.isalpha() and self.language.islower(),
                     "language ISO 639-1", repr(self.language))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "NewsArticle":
        return cls(**d)


@dataclass
class SocialLink:
    article_id: str
    platform: Platform
    raw_url: str
    canonical_url: str
    post_uid: str
    anchor_index: int

    @property
    def key(self) -> tuple:
        return (self.article_id, self.platform.value, self.post_uid)

    def validate(self):
        _require(self.platform != Platform.OTHER,
                 "no Other links persisted", self.raw_url)
        _require(bool(self.post_uid), "post_uid non-empty", self.raw_url)
        _require(canonicalize(self.raw_url) == self.canonical_url,
                 "canonical_url recomputable",
                 f"{self.canonical_url!r} != canonicalize({self.raw_url!r})")
        _require(self.anchor_index >= 0, "anchor_index >= 0", str(self.anchor_index))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["platform"] = self.platform.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SocialLink":
        d = dict(d)
        d["platform"] = Platform(d["platform"])
        return cls(**d)


@dataclass
class SocialPost:
    platform: Platform
    post_uid: str
    modality: str = "text"
    text_content: str = ""
    media_refs: list[str] = field(default_factory=list)
    author: str = ""
    posted_at: str | None = None  # RFC 3339 or None
    metrics: dict[str, int] = field(default_factory=dict)
    fetch_status: str = "fetched"
    fetched_at: str = ""

    @property
    def key(self) -> tuple:
        return (self.platform.value, self.post_uid)

    def validate(self):
        _require(self.modality in MODALITIES, "modality exclusive", self.modality)
        _require(self.fetch_status in FETCH_STATUSES, "fetch_status", self.fetch_status)
        if self.fetch_status == "fetched":
            _require(bool(self.text_content) or bool(self.media_refs),
                     "fetched post has content", f"{self.platform}/{self.post_uid}")
        _require(all(isinstance(v, int) and v >= 0 for v in self.metrics.values()),
                 "metrics non-negative", str(self.metrics))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["platform"] = self.platform.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SocialPost":
        d = dict(d)
        d["platform"] = Platform(d["platform"])
        return cls(**d)


@dataclass
class Enrichment:
    """Article fields copied onto the labeled post so exports stand alone."""
    title: str = ""
    publisher: str = ""
    published_date: str | None = None
    language: str | None = None
    countries: list[str] = field(default_factory=list)


@dataclass
class LabeledPost:
    platform: Platform
    post_uid: str
    news_id: str
    label_raw: str
    label_norm: str
    verification_state: str = "unverified"
    enrichment: Enrichment = field(default_factory=Enrichment)

    @property
    def key(self) -> tuple:
        return (self.platform.value, self.post_uid, self.news_id)

    @property
    def post_key(self) -> tuple:
        return (self.platform.value, self.post_uid)

    def validate(self):
        _require(self.label_norm in LABEL_CLASSES, "label_norm class", self.label_norm)
        _require(self.verification_state in VERIFICATION_STATES,
                 "verification_state", self.verification_state)
        _require(bool(self.label_raw), "label_raw non-empty", str(self.key))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["platform"] = self.platform.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LabeledPost":
        d = dict(d)
        d["platform"] = Platform(d["platform"])
        d["enrichment"] = Enrichment(**d["enrichment"])
        return cls(**d)


@dataclass
class VerificationTask:
    task_id: str
    platform: Platform
    post_uid: str
    news_id: str
    sampled_at: str
    verdict: str = "pending"
    reviewer: str | None = None
    reviewed_at: str | None = None
    note: str = ""

    @property
    def key(self) -> str:
        return self.task_id

    @property
    def labeled_key(self) -> tuple:
        return (self.platform.value, self.post_uid, self.news_id)

    def validate(self):
        _require(bool(self.task_id), "task_id non-empty")
        _require(self.verdict in VERDICTS, "verdict", self.verdict)
        if self.verdict != "pending":
            _require(self.reviewer is not None and self.reviewed_at is not None,
                     "decided task has reviewer and reviewed_at", self.task_id)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["platform"] = self.platform.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationTask":
        d = dict(d)
        d["platform"] = Platform(d["platform"])
        return cls(**d)
