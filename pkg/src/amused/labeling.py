"""Verdict propagation, label normalization, dedup, and enrichment.

Every fetched post cited by a link inherits the citing article's verdict
verbatim plus its normalized class. Dedup then keeps one labeled record per
(platform, post_uid) — earliest article wins — and logs what it dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from .errors import ConfigInvalid, MissingArticle, MissingPost
from .models import LABEL_CLASSES, Enrichment, LabeledPost, SocialLink
from .store import Store

# Shipped verdict vocabulary; override with a mapping file for new sources.
DEFAULT_MAPPING = {
    "false": "false",
    "fake": "false",
    "incorrect": "false",
    "pants on fire": "false",
    "no evidence": "false",
    "partially false": "partially_false",
    "partly false": "partially_false",
    "misleading": "partially_false",
    "mostly false": "partially_false",
    "half true": "partially_false",
    "missing context": "partially_false",
    "true": "true",
    "correct": "true",
    "mostly true": "true",
}


@dataclass
class LabelMapping:
    mapping: dict[str, str] = dataclass_field(default_factory=lambda: dict(DEFAULT_MAPPING))
    default: str = "other"

    def __post_init__(self):
        bad = {v for v in self.mapping.values()} - set(LABEL_CLASSES)
        if bad or self.default not in LABEL_CLASSES:
            raise ConfigInvalid(f"mapping values must be one of {LABEL_CLASSES}, got {bad}")

    @classmethod
    def load(cls, path: str | Path) -> "LabelMapping":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigInvalid(f"mapping file {path}: {exc}") from exc
        return cls(mapping={k.casefold(): v for k, v in raw["map"].items()},
                   default=raw.get("default", "other"))


def normalize_label(label_raw: str, mapping: LabelMapping | None = None) -> str:
    """Case-fold, trim, look up; unmapped verdicts fall back to ``other``."""
    mapping = mapping or LabelMapping()
    return mapping.mapping.get(label_raw.strip().casefold(), mapping.default)


def propagate_label(link: SocialLink, store: Store,
                    mapping: LabelMapping | None = None) -> LabeledPost:
    """Build (and persist) the labeled record for one link."""
    article = store.get_article(link.article_id)
    if article is None:
        raise MissingArticle(link.article_id)
    post = store.get_post(link.platform, link.post_uid)
    if post is None or post.fetch_status != "fetched":
        raise MissingPost(f"{link.platform}/{link.post_uid}")
    existing = store.get_labeled(link.platform, link.post_uid, article.news_id)
    if existing is not None:
        return existing
    labeled = LabeledPost(
        platform=link.platform,
        post_uid=link.post_uid,
        news_id=article.news_id,
        label_raw=article.verdict_raw,
        label_norm=normalize_label(article.verdict_raw, mapping),
        verification_state="unverified",
        enrichment=Enrichment(
            title=article.title,
            publisher=article.publisher,
            published_date=article.published_date,
            language=article.language,
            countries=list(article.countries),
        ),
    )
    store.upsert(labeled)
    return labeled


def label_all(store: Store, mapping: LabelMapping | None = None) -> dict:
    """Propagate labels for every link whose post was fetched.

    Skips links already labeled and links dedup previously collapsed, so a
    rerun on a completed store creates nothing.
    """
    dropped = store.dedup_dropped_keys()
    created = 0
    skipped_unfetched = 0
    for link in store.links():
        post = store.get_post(link.platform, link.post_uid)
        if post is None or post.fetch_status != "fetched":
            skipped_unfetched += 1
            continue
        key = (link.platform.value, link.post_uid, link.article_id)
        if key in dropped:
            continue
        if store.get_labeled(link.platform, link.post_uid, link.article_id) is not None:
            continue
        propagate_label(link, store, mapping)
        created += 1
    return {"labeled_created": created, "links_without_post": skipped_unfetched}


def _dedup_order(store: Store, labeled: LabeledPost) -> tuple:
    # earliest published date first; undated articles sort last
    date = labeled.enrichment.published_date or "9999-12-31"
    return (date, labeled.news_id)


def dedupe(store: Store) -> dict:
    """Keep one LabeledPost per (platform, post_uid); audit the drops."""
    groups: dict[tuple, list[LabeledPost]] = {}
    for labeled in store.labeled():
        groups.setdefault(labeled.post_key, []).append(labeled)
    total = sum(len(g) for g in groups.values())
    to_drop = []
    for group in groups.values():
        if len(group) == 1:
            continue
        group.sort(key=lambda lp: _dedup_order(store, lp))
        winner = group[0]
        for loser in group[1:]:
            store.audit(
                "dedup_drop",
                platform=loser.platform.value,
                post_uid=loser.post_uid,
                news_id=loser.news_id,
                kept_news_id=winner.news_id,
                label_conflict=loser.label_norm != winner.label_norm,
            )
            to_drop.append(loser.key)
    store.delete_labeled_many(to_drop)
    return {"total_labeled": total,
            "unique_kept": total - len(to_drop),
            "duplicates_dropped": len(to_drop)}
