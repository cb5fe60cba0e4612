"""Summary views over the labeled corpus, and the JSONL export.

All views run on unique, fetched, non-rejected labeled posts; rejected posts
are excluded unconditionally (no flag re-includes them) and reads never
mutate the store.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import WritePermission
from .models import LABEL_CLASSES, MODALITIES, LabeledPost, SocialPost
from .store import Store

# Documented export field order (stable across runs).
EXPORT_FIELDS = (
    "platform", "post_uid", "news_id", "label_raw", "label_norm",
    "verification_state", "modality", "text_content", "media_refs", "author",
    "posted_at", "metrics", "fetch_status", "article_title",
    "article_publisher", "article_published_date", "article_language",
    "article_countries", "article_source_url",
)


def _visible(store: Store) -> list[tuple[LabeledPost, SocialPost]]:
    """Unique fetched non-rejected labeled posts joined with their content."""
    rows = []
    for labeled in store.labeled():
        if labeled.verification_state == "rejected":
            continue
        post = store.get_post(labeled.platform, labeled.post_uid)
        if post is None or post.fetch_status != "fetched":
            continue
        rows.append((labeled, post))
    return rows


def platform_summary(store: Store) -> list[dict]:
    """Per-platform totals with the modality breakdown."""
    links_by_platform: dict[str, int] = {}
    for link in store.links():
        links_by_platform[link.platform.value] = links_by_platform.get(link.platform.value, 0) + 1
    rows: dict[str, dict] = {}
    for name in links_by_platform:
        rows[name] = {"platform": name, "total_links": links_by_platform[name],
                      "unique_posts": 0,
                      **{m: 0 for m in MODALITIES}}
    for labeled, post in _visible(store):
        row = rows.setdefault(labeled.platform.value, {
            "platform": labeled.platform.value, "total_links": 0, "unique_posts": 0,
            **{m: 0 for m in MODALITIES}})
        row["unique_posts"] += 1
        row[post.modality] += 1
    return [rows[name] for name in sorted(rows)]


def class_distribution(store: Store) -> list[dict]:
    """Normalized-class counts per platform (deleted and duplicates excluded)."""
    rows: dict[str, dict] = {}
    for labeled, _post in _visible(store):
        row = rows.setdefault(labeled.platform.value, {
            "platform": labeled.platform.value, **{c: 0 for c in LABEL_CLASSES}})
        row[labeled.label_norm] += 1
    return [rows[name] for name in sorted(rows)]


def timeline(store: Store, min_posts: int = 25) -> list[dict]:
    """Monthly post counts per platform; platforms with <= min_posts are omitted.

    Bucket date: the post's own timestamp, else the citing article's publish
    date; ``fallback_count`` records how many points in the bucket used the
    fallback.
    """
    buckets: dict[str, dict[str, dict]] = {}
    totals: dict[str, int] = {}
    for labeled, post in _visible(store):
        if post.posted_at:
            month, fallback = post.posted_at[:7], False
        elif labeled.enrichment.published_date:
            month, fallback = labeled.enrichment.published_date[:7], True
        else:
            continue
        name = labeled.platform.value
        row = buckets.setdefault(name, {}).setdefault(
            month, {"platform": name, "bucket": month, "count": 0, "fallback_count": 0})
        row["count"] += 1
        row["fallback_count"] += int(fallback)
        totals[name] = totals.get(name, 0) + 1
    out = []
    for name in sorted(buckets):
        if totals[name] <= min_posts:
            continue
        out.extend(buckets[name][m] for m in sorted(buckets[name]))
    return out


def link_coverage(store: Store) -> float:
    """Fraction of articles carrying at least one persisted social link."""
    articles = store.articles()
    if not articles:
        return 0.0
    linked = {link.article_id for link in store.links()}
    return len([a for a in articles if a.news_id in linked]) / len(articles)


def export_row(labeled: LabeledPost, post: SocialPost) -> dict:
    e = labeled.enrichment
    values = {
        "platform": labeled.platform.value,
        "post_uid": labeled.post_uid,
        "news_id": labeled.news_id,
        "label_raw": labeled.label_raw,
        "label_norm": labeled.label_norm,
        "verification_state": labeled.verification_state,
        "modality": post.modality,
        "text_content": post.text_content,
        "media_refs": post.media_refs,
        "author": post.author,
        "posted_at": post.posted_at,
        "metrics": post.metrics,
        "fetch_status": post.fetch_status,
        "article_title": e.title,
        "article_publisher": e.publisher,
        "article_published_date": e.published_date,
        "article_language": e.language,
        "article_countries": e.countries,
        "article_source_url": "",
    }
    return {k: values[k] for k in EXPORT_FIELDS}


def labeled_from_export(line: str) -> LabeledPost:
    """Rebuild the LabeledPost record from one exported line."""
    d = json.loads(line)
    from .models import Enrichment
    from .urls import Platform
    return LabeledPost(
        platform=Platform(d["platform"]),
        post_uid=d["post_uid"],
        news_id=d["news_id"],
        label_raw=d["label_raw"],
        label_norm=d["label_norm"],
        verification_state=d["verification_state"],
        enrichment=Enrichment(
            title=d["article_title"],
            publisher=d["article_publisher"],
            published_date=d["article_published_date"],
            language=d["article_language"],
            countries=list(d["article_countries"]),
        ),
    )


def export_jsonl(store: Store, out_path: str | Path,
                 confirmed_only: bool = False) -> int:
    """Write one JSON object per unique fetched non-rejected labeled post.

    Default includes unverified, sampled, and confirmed posts;
    ``confirmed_only`` narrows to confirmed. Rejected posts never appear.
    """
    rows = []
    for labeled, post in _visible(store):
        if confirmed_only and labeled.verification_state != "confirmed":
            continue
        row = export_row(labeled, post)
        article = store.get_article(labeled.news_id)
        row["article_source_url"] = article.source_url if article else ""
        rows.append(row)
    rows.sort(key=lambda r: (r["platform"], r["post_uid"], r["news_id"]))
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            for row in rows:
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    except PermissionError as exc:
        raise WritePermission(str(exc)) from exc
    return len(rows)


# -- output formatting ---------------------------------------------------

def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False)
    if not rows:
        return ""
    headers = list(rows[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=headers, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "table":
        widths = {h: max(len(h), *(len(str(r[h])) for r in rows)) for h in headers}
        lines = ["  ".join(h.ljust(widths[h]) for h in headers)]
        lines.append("  ".join("-" * widths[h] for h in headers))
        for r in rows:
            lines.append("  ".join(str(r[h]).ljust(widths[h]) for h in headers))
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")
