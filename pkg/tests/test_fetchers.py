import json
import threading

import pytest

from amused.errors import FetcherMissing, RateLimited
from amused.fetchers import (
    FetcherRegistry,
    FixtureFetcher,
    TokenBucket,
    UnavailableFetcher,
    build_registry,
    derive_modality,
    fetch_all,
)
from amused.models import NewsArticle, SocialLink, SocialPost
from amused.store import open_store
from amused.urls import Platform, canonicalize

from conftest import GOLDEN


class FakeClock:
    def __init__(self):
        self.now = 0.0
        self._lock = threading.Lock()

    def time(self):
        with self._lock:
            return self.now

    def sleep(self, dt):
        with self._lock:
            self.now += dt


class CountingFetcher:
    """Wraps a result factory and records every call."""

    def __init__(self, factory):
        self.factory = factory
        self.calls = []
        self._lock = threading.Lock()

    def fetch(self, platform, post_uid):
        with self._lock:
            self.calls.append((platform.value, post_uid))
        return self.factory(platform, post_uid)


def fetched_post(platform, uid):
    return SocialPost(platform=platform, post_uid=uid, modality="text",
                      text_content="content", fetch_status="fetched",
                      fetched_at="2020-09-01T00:00:00Z")


def seed_links(store, uids, platform=Platform.TWITTER):
    store.upsert(NewsArticle(news_id="PY1", source_url="https://x.example/1",
                             title="t", published_date="2020-01-01",
                             body_text="body", verdict_raw="False", publisher="X"))
    for i, uid in enumerate(uids):
        raw = f"https://twitter.com/u/status/{uid}"
        store.upsert(SocialLink(article_id="PY1", platform=platform, raw_url=raw,
                                canonical_url=canonicalize(raw), post_uid=uid,
                                anchor_index=i))


def test_derive_modality():
    assert derive_modality("text", []) == "text"
    assert derive_modality("", ["a.jpg"]) == "image"
    assert derive_modality("text", ["a.jpg"]) == "text+image"
    assert derive_modality("", ["a.mp4"]) == "video"
    assert derive_modality("text", ["a.jpg", "b.mp4"]) == "video"  # video dominates
    assert derive_modality("", []) == "text"


def test_fixture_fetcher_known_values(tmp_path):
    root = tmp_path / "fx"
    (root / "Twitter").mkdir(parents=True)
    (root / "Twitter" / "42.json").write_text(json.dumps({
        "platform": "Twitter", "post_uid": "42",
        "text_content": "hello world", "media_refs": [],
        "author": "@someone", "posted_at": "2020-03-02T10:00:00Z",
        "metrics": {"likes": 10, "retweets": 3},
    }))
    post = FixtureFetcher(root).fetch(Platform.TWITTER, "42")
    assert post.fetch_status == "fetched"
    assert post.text_content == "hello world"
    assert post.author == "@someone"
    assert post.metrics == {"likes": 10, "retweets": 3}
    assert post.modality == "text"


def test_fixture_fetcher_missing_means_deleted(tmp_path):
    post = FixtureFetcher(tmp_path).fetch(Platform.TWITTER, "404")
    assert post.fetch_status == "deleted"


def test_fixture_fetcher_deleted_marker(tmp_path):
    (tmp_path / "Twitter").mkdir()
    (tmp_path / "Twitter" / "9.deleted").write_text("")
    (tmp_path / "Twitter" / "9.json").write_text("{}")  # marker wins
    assert FixtureFetcher(tmp_path).fetch(Platform.TWITTER, "9").fetch_status == "deleted"


def test_unavailable_stub():
    post = UnavailableFetcher().fetch(Platform.FACEBOOK, "whatever")
    assert post.fetch_status == "unavailable"


def test_fetch_all_dedups_shared_uids(tmp_path):
    store = open_store(tmp_path / "s")
    seed_links(store, ["1", "2", "3", "4", "1"])  # 5 links, 2 share uid "1"
    fetcher = CountingFetcher(fetched_post)
    registry = FetcherRegistry(fetchers={Platform.TWITTER: fetcher})
    report = fetch_all(store, registry)
    assert len(fetcher.calls) == 4
    assert report == {"fetched": 4, "deleted": 0, "unavailable": 0}


def test_fetch_all_rerun_is_noop(tmp_path):
    store = open_store(tmp_path / "s")
    seed_links(store, ["1", "2"])
    fetcher = CountingFetcher(fetched_post)
    registry = FetcherRegistry(fetchers={Platform.TWITTER: fetcher})
    fetch_all(store, registry)
    report = fetch_all(store, registry)
    assert report == {"fetched": 0, "deleted": 0, "unavailable": 0}
    assert len(fetcher.calls) == 2


def test_fetch_all_resumes_only_remaining(tmp_path):
    store = open_store(tmp_path / "s")
    seed_links(store, ["1", "2", "3"])
    store.upsert(fetched_post(Platform.TWITTER, "2"))  # as if persisted pre-crash
    fetcher = CountingFetcher(fetched_post)
    registry = FetcherRegistry(fetchers={Platform.TWITTER: fetcher})
    fetch_all(store, registry)
    assert sorted(uid for _, uid in fetcher.calls) == ["1", "3"]


def test_fetch_all_missing_fetcher(tmp_path):
    store = open_store(tmp_path / "s")
    seed_links(store, ["1"])
    with pytest.raises(FetcherMissing):
        fetch_all(store, FetcherRegistry(fetchers={}))


def test_fetch_all_golden_counts(tmp_path):
    from amused.ingest import SourceManifest, ingest_manifest
    from amused.links import extract_all
    store = open_store(tmp_path / "s")
    ingest_manifest(SourceManifest.load(GOLDEN / "manifest.json"), store)
    extract_all(store)
    report = fetch_all(store, build_registry(GOLDEN / "posts"))
    assert report == {"fetched": 90, "deleted": 10, "unavailable": 0}


def test_rate_limit_spacing_with_fake_clock(tmp_path):
    clock = FakeClock()
    rate = 2.0
    stamps = []

    class StampingFetcher:
        def fetch(self, platform, uid):
            stamps.append(clock.time())
            return fetched_post(platform, uid)

    store = open_store(tmp_path / "s")
    seed_links(store, [str(i) for i in range(6)])
    registry = FetcherRegistry(fetchers={Platform.TWITTER: StampingFetcher()},
                               rate_limits={Platform.TWITTER: rate},
                               concurrency=3,
                               clock_fn=clock.time, sleep_fn=clock.sleep)
    fetch_all(store, registry)
    stamps.sort()
    for a, b in zip(stamps, stamps[1:]):
        assert b - a >= (1.0 / rate) - 1e-9


def test_rate_limited_retries_then_succeeds(tmp_path):
    clock = FakeClock()
    attempts = []

    class FlakyFetcher:
        def fetch(self, platform, uid):
            attempts.append(uid)
            if len(attempts) < 3:
                raise RateLimited(retry_after=1.0)
            return fetched_post(platform, uid)

    store = open_store(tmp_path / "s")
    seed_links(store, ["1"])
    registry = FetcherRegistry(fetchers={Platform.TWITTER: FlakyFetcher()},
                               clock_fn=clock.time, sleep_fn=clock.sleep)
    report = fetch_all(store, registry)
    assert report["fetched"] == 1
    assert len(attempts) == 3


def test_rate_limited_exhaustion_is_unavailable(tmp_path):
    clock = FakeClock()

    class AlwaysLimited:
        def fetch(self, platform, uid):
            raise RateLimited(retry_after=0.5)

    store = open_store(tmp_path / "s")
    seed_links(store, ["1"])
    registry = FetcherRegistry(fetchers={Platform.TWITTER: AlwaysLimited()},
                               clock_fn=clock.time, sleep_fn=clock.sleep)
    report = fetch_all(store, registry)
    assert report == {"fetched": 0, "deleted": 0, "unavailable": 1}
    assert store.get_post(Platform.TWITTER, "1").fetch_status == "unavailable"


def test_broken_fetcher_persists_unavailable(tmp_path):
    class Broken:
        def fetch(self, platform, uid):
            raise OSError("disk on fire")

    store = open_store(tmp_path / "s")
    seed_links(store, ["1", "2"])
    report = fetch_all(store, FetcherRegistry(fetchers={Platform.TWITTER: Broken()}))
    assert report["unavailable"] == 2


def test_token_bucket_rejects_bad_rate():
    with pytest.raises(ValueError):
        TokenBucket(0)
    with pytest.raises(ValueError):
        FetcherRegistry(fetchers={}, rate_limits={Platform.TWITTER: -1})


def test_live_fetchers_without_credentials_are_unavailable(monkeypatch):
    monkeypatch.delenv("TWITTER_BEARER_TOKEN", raising=False)
    monkeypatch.delenv("YOUTUBE_API_KEY", raising=False)
    from amused.fetchers import LiveTwitterFetcher, LiveYouTubeFetcher
    assert LiveTwitterFetcher().fetch(Platform.TWITTER, "1").fetch_status == "unavailable"
    assert LiveYouTubeFetcher().fetch(Platform.YOUTUBE, "x").fetch_status == "unavailable"


def test_build_registry_live_facebook_is_unavailable_stub(tmp_path):
    registry = build_registry(tmp_path, live_platforms=(Platform.FACEBOOK,))
    assert isinstance(registry.fetcher_for(Platform.FACEBOOK), UnavailableFetcher)
