"""Post fetching behind a uniform per-platform contract.

Desk-scale runs use the fixture fetcher (one JSON file per post); live
adapters for Twitter/YouTube/Reddit exist behind the same contract but are
disabled unless explicitly requested and credentialed. Facebook/Instagram
have no desk-scale access path and resolve to ``unavailable`` in live mode.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import clock
from .errors import FetcherMissing, RateLimited
from .models import SocialPost
from .store import Store
from .urls import Platform

log = logging.getLogger(__name__)

VIDEO_EXTENSIONS = (".mp4", ".mov", ".webm", ".avi", ".mkv", ".m4v")

MAX_RATE_LIMIT_RETRIES = 3
BACKOFF_BASE_SECONDS = 1.0


def derive_modality(text_content: str, media_refs: list[str]) -> str:
    """Collapse content into one exclusive category; video beats image."""
    has_video = any(ref.lower().split("?")[0].endswith(VIDEO_EXTENSIONS)
                    for ref in media_refs)
    has_media = bool(media_refs)
    has_text = bool(text_content.strip())
    if has_video:
        return "video"
    if has_text and has_media:
        return "text+image"
    if has_media:
        return "image"
    return "text"


class FixtureFetcher:
    """Reads posts from ``<root>/<platform>/<post_uid>.json``.

    A ``<post_uid>.deleted`` marker, or no file at all, means the post is gone.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def fetch(self, platform: Platform, post_uid: str) -> SocialPost:
        base = self.root / platform.value
        json_path = base / f"{post_uid}.json"
        if (base / f"{post_uid}.deleted").exists() or not json_path.exists():
            return SocialPost(platform=platform, post_uid=post_uid,
                              fetch_status="deleted", fetched_at=clock.now_rfc3339())
        raw = json.loads(json_path.read_text(encoding="utf-8"))
        text = raw.get("text_content", "")
        media = list(raw.get("media_refs", []))
        return SocialPost(
            platform=platform,
            post_uid=post_uid,
            modality=derive_modality(text, media),
            text_content=text,
            media_refs=media,
            author=raw.get("author", ""),
            posted_at=raw.get("posted_at"),
            metrics={k: int(v) for k, v in raw.get("metrics", {}).items()},
            fetch_status="fetched",
            fetched_at=clock.now_rfc3339(),
        )


class UnavailableFetcher:
    """Stub for platforms with no access path (e.g. Facebook/Instagram live)."""

    def fetch(self, platform: Platform, post_uid: str) -> SocialPost:
        return SocialPost(platform=platform, post_uid=post_uid,
                          fetch_status="unavailable", fetched_at=clock.now_rfc3339())


class _LiveJsonFetcher:
    """Shared shape of the thin live adapters: one GET, one JSON mapping."""

    credential_env: str = ""

    def __init__(self, timeout: float = 20.0):
        self.timeout = timeout
        self.credential = os.environ.get(self.credential_env, "") if self.credential_env else ""

    def _get(self, url: str, headers: dict | None = None) -> dict:
        req = urllib.request.Request(url, headers={"User-Agent": "amused/0.1",
                                                   **(headers or {})})
        with urllib.request.urlopen(req, timeout=self.timeout) as resp:
            if resp.status == 429:
                raise RateLimited()
            return json.loads(resp.read().decode("utf-8"))

    def _unavailable(self, platform: Platform, post_uid: str) -> SocialPost:
        return SocialPost(platform=platform, post_uid=post_uid,
                          fetch_status="unavailable", fetched_at=clock.now_rfc3339())


class LiveTwitterFetcher(_LiveJsonFetcher):
    credential_env = "TWITTER_BEARER_TOKEN"

    def fetch(self, platform: Platform, post_uid: str) -> SocialPost:
        if not self.credential:
            return self._unavailable(platform, post_uid)
        data = self._get(
            f"https://api.twitter.com/2/tweets/{post_uid}"
            "?tweet.fields=created_at,public_metrics&expansions=author_id",
            headers={"Authorization": f"Bearer {self.credential}"})
        if "data" not in data:
            return SocialPost(platform=platform, post_uid=post_uid,
                              fetch_status="deleted", fetched_at=clock.now_rfc3339())
        tweet = data["data"]
        metrics = tweet.get("public_metrics", {})
        return SocialPost(
            platform=platform, post_uid=post_uid,
            modality="text",
            text_content=tweet.get("text", ""),
            author=tweet.get("author_id", ""),
            posted_at=tweet.get("created_at"),
            metrics={"likes": metrics.get("like_count", 0),
                     "retweets": metrics.get("retweet_count", 0)},
            fetch_status="fetched", fetched_at=clock.now_rfc3339(),
        )


class LiveYouTubeFetcher(_LiveJsonFetcher):
    credential_env = "YOUTUBE_API_KEY"

    def fetch(self, platform: Platform, post_uid: str) -> SocialPost:
        if not self.credential:
            return self._unavailable(platform, post_uid)
        data = self._get(
            "https://www.googleapis.com/youtube/v3/videos"
            f"?part=snippet,statistics&id={post_uid}&key={self.credential}")
        items = data.get("items", [])
        if not items:
            return SocialPost(platform=platform, post_uid=post_uid,
                              fetch_status="deleted", fetched_at=clock.now_rfc3339())
        snippet = items[0].get("snippet", {})
        stats = items[0].get("statistics", {})
        return SocialPost(
            platform=platform, post_uid=post_uid,
            modality="video",
            text_content=snippet.get("title", ""),
            media_refs=[f"https://www.youtube.com/watch?v={post_uid}"],
            author=snippet.get("channelTitle", ""),
            posted_at=snippet.get("publishedAt"),
            metrics={"likes": int(stats.get("likeCount", 0)),
                     "views": int(stats.get("viewCount", 0))},
            fetch_status="fetched", fetched_at=clock.now_rfc3339(),
        )


class LiveRedditFetcher(_LiveJsonFetcher):
    def fetch(self, platform: Platform, post_uid: str) -> SocialPost:
        data = self._get(f"https://www.reddit.com/r/{post_uid}/about.json")
        about = data.get("data", {})
        if not about:
            return SocialPost(platform=platform, post_uid=post_uid,
                              fetch_status="deleted", fetched_at=clock.now_rfc3339())
        return SocialPost(
            platform=platform, post_uid=post_uid,
            modality="text",
            text_content=about.get("public_description", "") or about.get("title", ""),
            author="",
            posted_at=None,
            metrics={"subscribers": int(about.get("subscribers", 0))},
            fetch_status="fetched", fetched_at=clock.now_rfc3339(),
        )


class TokenBucket:
    """Thread-safe token bucket; clock and sleep injectable for tests.

    Capacity 1: no bursts, requests are spaced at least 1/rate apart.
    """

    def __init__(self, rate: float, clock_fn=time.monotonic, sleep_fn=time.sleep):
        if rate <= 0:
            raise ValueError("rate must be > 0")
        self.rate = rate
        self.capacity = 1.0
        self._tokens = self.capacity
        self._clock = clock_fn
        self._sleep = sleep_fn
        self._last = clock_fn()
        self._lock = threading.Lock()

    def acquire(self):
        while True:
            with self._lock:
                now = self._clock()
                self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
                self._last = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            self._sleep(wait)


@dataclass
class FetcherRegistry:
    fetchers: dict[Platform, object]
    rate_limits: dict[Platform, float] = field(default_factory=dict)
    concurrency: int = 4
    default_rate: float = 10.0
    clock_fn: object = time.monotonic
    sleep_fn: object = time.sleep

    def __post_init__(self):
        if any(v <= 0 for v in self.rate_limits.values()) or self.default_rate <= 0:
            raise ValueError("rate limits must be > 0")
        self._buckets: dict[Platform, TokenBucket] = {}

    def fetcher_for(self, platform: Platform):
        try:
            return self.fetchers[platform]
        except KeyError:
            raise FetcherMissing(platform.value) from None

    def bucket_for(self, platform: Platform) -> TokenBucket:
        if platform not in self._buckets:
            rate = self.rate_limits.get(platform, self.default_rate)
            self._buckets[platform] = TokenBucket(rate, self.clock_fn, self.sleep_fn)
        return self._buckets[platform]


LIVE_RATE_LIMIT = 1.0  # requests/second against real platform APIs


def build_registry(fixtures_dir: str | Path | None = None,
                   live_platforms: tuple[Platform, ...] = (),
                   concurrency: int = 4) -> FetcherRegistry:
    """Fixture fetcher everywhere, overridden by live adapters on request.

    Fixture reads are local disk, so they run effectively unthrottled; live
    platforms get a polite per-platform limit.
    """
    fetchers: dict[Platform, object] = {}
    rate_limits: dict[Platform, float] = {}
    fixture = FixtureFetcher(fixtures_dir) if fixtures_dir else None
    live = {
        Platform.TWITTER: LiveTwitterFetcher,
        Platform.YOUTUBE: LiveYouTubeFetcher,
        Platform.REDDIT: LiveRedditFetcher,
    }
    for platform in Platform:
        if platform == Platform.OTHER:
            continue
        if platform in live_platforms:
            fetchers[platform] = live[platform]() if platform in live else UnavailableFetcher()
            rate_limits[platform] = LIVE_RATE_LIMIT
        elif fixture is not None:
            fetchers[platform] = fixture
    return FetcherRegistry(fetchers=fetchers, rate_limits=rate_limits,
                           concurrency=concurrency, default_rate=10_000.0)


def _fetch_one(registry: FetcherRegistry, platform: Platform, post_uid: str) -> SocialPost:
    fetcher = registry.fetcher_for(platform)
    bucket = registry.bucket_for(platform)
    delay = BACKOFF_BASE_SECONDS
    for attempt in range(MAX_RATE_LIMIT_RETRIES + 1):
        bucket.acquire()
        try:
            return fetcher.fetch(platform, post_uid)
        except RateLimited as exc:
            if attempt == MAX_RATE_LIMIT_RETRIES:
                log.warning("%s/%s: rate limited after %d retries",
                            platform, post_uid, attempt)
                break
            registry.sleep_fn(max(delay, exc.retry_after))
            delay *= 2
        except Exception as exc:
            log.warning("%s/%s: fetch failed: %s", platform, post_uid, exc)
            break
    return SocialPost(platform=platform, post_uid=post_uid,
                      fetch_status="unavailable", fetched_at=clock.now_rfc3339())


def fetch_all(store: Store, registry: FetcherRegistry, refresh: bool = False) -> dict:
    """Fetch each distinct (platform, post_uid) exactly once.

    Posts already in the store are skipped unless ``refresh``. Every outcome
    (including deleted/unavailable) is persisted as soon as it arrives, so an
    interrupted run resumes with only the remaining uids.
    """
    wanted = sorted({(link.platform, link.post_uid) for link in store.links()},
                    key=lambda k: (k[0].value, k[1]))
    if not refresh:
        wanted = [(p, uid) for p, uid in wanted if store.get_post(p, uid) is None]
    for platform, _ in wanted:
        registry.fetcher_for(platform)  # fail fast on unregistered platforms
    report = {"fetched": 0, "deleted": 0, "unavailable": 0}
    lock = threading.Lock()

    def worker(key):
        platform, post_uid = key
        post = _fetch_one(registry, platform, post_uid)
        store.upsert(post)
        with lock:
            report[post.fetch_status] += 1

    if wanted:
        with ThreadPoolExecutor(max_workers=max(1, registry.concurrency)) as pool:
            list(pool.map(worker, wanted))
    return report
