"""Anchor harvesting and social-link persistence.

Anchors are collected from the article's content region only (the parser
profile's body rule keeps nav/footer chrome out), then classified, canonicalized,
and reduced to (platform, post_uid). Anything that is not a recognizable
platform post is dropped.
"""

from __future__ import annotations

import logging
from urllib.parse import urljoin

from .errors import NoPostId, UrlUnparseable
from .htmldoc import parse_html
from .ingest import profile_for_article, read_article_html
from .models import NewsArticle, SocialLink
from .store import Store
from .urls import Platform, PlatformPattern, canonicalize, classify_platform, extract_post_uid

log = logging.getLogger(__name__)


def extract_anchors(html: str, body_selector: str | None = None,
                    base_url: str | None = None) -> list[str]:
    """All anchor hrefs inside the content region, absolute, in document order.

    Embedded-post blockquotes live inside the body, so their plain anchors to
    the original post are picked up with everything else.
    """
    doc = parse_html(html)
    scope = doc
    if body_selector:
        node = doc.select_one(body_selector)
        if node is not None:
            scope = node
    hrefs = []
    for node in scope.iter_nodes():
        if node.tag == "a":
            href = node.attrs.get("href")
            if not href:
                continue
            hrefs.append(urljoin(base_url, href) if base_url else href)
    return hrefs


def classify_and_extract(url: str, patterns: list[PlatformPattern] | None = None):
    """(platform, canonical_url, post_uid) or None when the URL is not a post."""
    try:
        platform = classify_platform(url, patterns)
        if platform == Platform.OTHER:
            return None
        canonical = canonicalize(url, patterns)
        uid = extract_post_uid(platform, url, patterns)
    except (UrlUnparseable, NoPostId) as exc:
        log.debug("dropped anchor %r: %s", url, exc)
        return None
    return platform, canonical, uid


def extract_links(article: NewsArticle, store: Store,
                  patterns: list[PlatformPattern] | None = None,
                  resolver=None) -> list[SocialLink]:
    """Harvest and persist this article's social links; returns what was kept.

    ``resolver`` (live mode) expands shortened URLs that classified as Other;
    resolved links are stored under their expanded URL so the canonical form
    stays recomputable.
    """
    html = read_article_html(store, article)
    profile = profile_for_article(store, article)
    body_selector = profile.body_selector if profile else None
    anchors = extract_anchors(html, body_selector, base_url=article.source_url)
    kept: list[SocialLink] = []
    for index, url in enumerate(anchors):
        hit = classify_and_extract(url, patterns)
        if hit is None and resolver is not None:
            try:
                expanded = resolver(url)
            except Exception as exc:
                log.debug("resolver failed on %r: %s", url, exc)
                expanded = url
            if expanded != url:
                log.debug("resolved %r -> %r", url, expanded)
                url = expanded
                hit = classify_and_extract(url, patterns)
        if hit is None:
            continue
        platform, canonical, uid = hit
        link = SocialLink(
            article_id=article.news_id,
            platform=platform,
            raw_url=url,
            canonical_url=canonical,
            post_uid=uid,
            anchor_index=index,
        )
        store.upsert(link)
        kept.append(link)
        log.debug("kept anchor %d of %s: %s -> %s/%s",
                  index, article.news_id, url, platform, uid)
    return kept


def extract_all(store: Store, patterns: list[PlatformPattern] | None = None,
                resolver=None) -> dict:
    """Run link extraction over every stored article."""
    before = {link.key for link in store.links()}
    total = 0
    for article in store.articles():
        total += len(extract_links(article, store, patterns, resolver=resolver))
    after = {link.key for link in store.links()}
    return {"links_found": total, "links_created": len(after - before)}
