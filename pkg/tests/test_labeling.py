import random

import pytest

from amused.errors import MissingArticle, MissingPost
from amused.labeling import LabelMapping, dedupe, label_all, normalize_label, propagate_label
from amused.models import NewsArticle, SocialLink, SocialPost
from amused.store import open_store
from amused.urls import Platform, canonicalize


def add_article(store, news_id, date="2020-03-01", verdict="False"):
    store.upsert(NewsArticle(news_id=news_id, source_url=f"https://x.example/{news_id}",
                             title=f"title {news_id}", published_date=date,
                             body_text="body", verdict_raw=verdict, publisher="AFP",
                             countries=["USA"], language="en"))


def add_link(store, news_id, uid, index=0):
    raw = f"https://twitter.com/u/status/{uid}"
    link = SocialLink(article_id=news_id, platform=Platform.TWITTER, raw_url=raw,
                      canonical_url=canonicalize(raw), post_uid=uid, anchor_index=index)
    store.upsert(link)
    return link


def add_post(store, uid, status="fetched"):
    store.upsert(SocialPost(platform=Platform.TWITTER, post_uid=uid, modality="text",
                            text_content="content" if status == "fetched" else "",
                            fetch_status=status, fetched_at="2020-09-01T00:00:00Z"))


def test_normalize_label_default_mapping():
    assert normalize_label("False") == "false"
    assert normalize_label("misleading") == "partially_false"
    assert normalize_label("  TRUE ") == "true"
    assert normalize_label("Satire-ish-unknown-verdict") == "other"


def test_mapping_override(tmp_path):
    path = tmp_path / "map.json"
    path.write_text('{"map": {"bogus": "false"}, "default": "other"}')
    mapping = LabelMapping.load(path)
    assert normalize_label("BOGUS", mapping) == "false"
    assert normalize_label("false", mapping) == "other"  # override replaces the default table


def test_propagate_label_copies_verdict_and_enrichment(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1", verdict="False")
    add_post(store, "42")
    labeled = propagate_label(add_link(store, "PY1", "42"), store)
    assert labeled.label_raw == "False"
    assert labeled.label_norm == "false"
    assert labeled.verification_state == "unverified"
    assert labeled.enrichment.title == "title PY1"
    assert labeled.enrichment.publisher == "AFP"
    assert labeled.enrichment.published_date == "2020-03-01"
    assert labeled.enrichment.countries == ["USA"]


def test_propagate_label_partially_false(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1", verdict="Misleading")
    add_post(store, "7")
    assert propagate_label(add_link(store, "PY1", "7"), store).label_norm == "partially_false"


def test_propagate_label_deleted_post_is_missing(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1")
    add_post(store, "9", status="deleted")
    with pytest.raises(MissingPost):
        propagate_label(add_link(store, "PY1", "9"), store)


def test_propagate_label_missing_article(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1")
    add_post(store, "9")
    link = add_link(store, "PY1", "9")
    link.article_id = "PY999"
    with pytest.raises(MissingArticle):
        propagate_label(link, store)


def test_dedupe_tie_break_rule(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1", date="2020-03-01")
    add_article(store, "PY2", date="2020-03-05")
    add_article(store, "PY3", date="2020-03-01")
    add_post(store, "42")
    for news_id, i in (("PY1", 0), ("PY2", 0), ("PY3", 0)):
        propagate_label(add_link(store, news_id, "42", i), store)
    report = dedupe(store)
    assert report == {"total_labeled": 3, "unique_kept": 1, "duplicates_dropped": 2}
    kept = store.labeled()
    assert len(kept) == 1
    assert kept[0].news_id == "PY1"  # earliest date, then smaller news_id


def test_dedupe_counts(tmp_path):
    store = open_store(tmp_path / "s")
    for i in range(1, 5):
        add_article(store, f"PY{i}", date=f"2020-03-0{i}")
    for uid in ("1", "2", "3"):
        add_post(store, uid)
    pairs = [("PY1", "1"), ("PY2", "1"), ("PY3", "1"), ("PY1", "2"), ("PY4", "3")]
    for i, (news_id, uid) in enumerate(pairs):
        propagate_label(add_link(store, news_id, uid, i), store)
    report = dedupe(store)
    assert report == {"total_labeled": 5, "unique_kept": 3, "duplicates_dropped": 2}


def test_dedupe_idempotent(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1")
    add_article(store, "PY2", date="2020-04-01")
    add_post(store, "1")
    propagate_label(add_link(store, "PY1", "1"), store)
    propagate_label(add_link(store, "PY2", "1"), store)
    dedupe(store)
    report = dedupe(store)
    assert report == {"total_labeled": 1, "unique_kept": 1, "duplicates_dropped": 0}


def test_dedupe_conflict_flagged_in_audit(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1", date="2020-03-01", verdict="False")
    add_article(store, "PY2", date="2020-03-02", verdict="True")
    add_post(store, "1")
    propagate_label(add_link(store, "PY1", "1"), store)
    propagate_label(add_link(store, "PY2", "1"), store)
    dedupe(store)
    drops = [e for e in store.audit_entries() if e["event"] == "dedup_drop"]
    assert len(drops) == 1
    assert drops[0]["label_conflict"] is True
    assert drops[0]["kept_news_id"] == "PY1"


def test_label_all_skips_dedup_dropped_keys(tmp_path):
    store = open_store(tmp_path / "s")
    add_article(store, "PY1", date="2020-03-01")
    add_article(store, "PY2", date="2020-03-02")
    add_post(store, "1")
    add_link(store, "PY1", "1")
    add_link(store, "PY2", "1")
    assert label_all(store)["labeled_created"] == 2
    dedupe(store)
    assert label_all(store)["labeled_created"] == 0
    assert len(store.labeled()) == 1


def test_randomized_dedupe_against_bruteforce_oracle(tmp_path):
    rng = random.Random(7)
    store = open_store(tmp_path / "s")
    dates = {}
    for i in range(1, 21):
        date = f"2020-0{rng.randint(1, 8)}-{rng.randint(1, 28):02d}"
        add_article(store, f"PY{i}", date=date)
        dates[f"PY{i}"] = date
    uids = [str(u) for u in range(30)]
    for uid in uids:
        add_post(store, uid)
    citations = set()
    for _ in range(200):
        citations.add((f"PY{rng.randint(1, 20)}", rng.choice(uids)))
    for i, (news_id, uid) in enumerate(sorted(citations)):
        propagate_label(add_link(store, news_id, uid, i), store)
    report = dedupe(store)
    # oracle: brute-force distinct set and tie-break winner
    by_uid = {}
    for news_id, uid in citations:
        by_uid.setdefault(uid, []).append(news_id)
    assert report["total_labeled"] == len(citations)
    assert report["unique_kept"] == len(by_uid)
    winners = {uid: min(ids, key=lambda n: (dates[n], n)) for uid, ids in by_uid.items()}
    assert {(lp.post_uid, lp.news_id) for lp in store.labeled()} == set(winners.items())
