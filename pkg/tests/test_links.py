from amused.links import extract_anchors, extract_links
from amused.store import open_store
from amused.urls import Platform

from conftest import GOLDEN, sidecar

EMBED_PAGE = """<html><body>
<nav><a href="https://factcheck.example/nav">nav</a></nav>
<div class="article-body">
  <p>Intro with an <a href="/relative/page">internal link</a>.</p>
  <blockquote class="twitter-tweet">
    <p lang="en" dir="ltr">The claim text quoted here.</p>
    &mdash; Someone (@someone)
    <a href="https://twitter.com/someone/status/1300839981247913985?ref_src=twsrc%5Etfw">September 1, 2020</a>
  </blockquote>
  <p>Closing line, see <a href="https://example.org/more">more</a>.</p>
</div>
<footer><a href="https://twitter.com/site/status/42">footer tweet</a></footer>
</body></html>"""


def test_extract_anchors_order_scope_and_resolution():
    anchors = extract_anchors(EMBED_PAGE, body_selector="div.article-body",
                              base_url="https://factcheck.example/claims/1")
    assert anchors == [
        "https://factcheck.example/relative/page",
        "https://twitter.com/someone/status/1300839981247913985?ref_src=twsrc%5Etfw",
        "https://example.org/more",
    ]


def test_extract_anchors_without_scope_sees_chrome():
    anchors = extract_anchors(EMBED_PAGE)
    assert anchors[0] == "https://factcheck.example/nav"
    assert anchors[-1] == "https://twitter.com/site/status/42"


def test_extract_anchors_empty_body():
    assert extract_anchors("<html><body><p>No links.</p></body></html>") == []


def test_extract_links_on_embed_article(tmp_path):
    from amused.ingest import SourceManifest, ingest_manifest, ParserProfile
    import json
    d = tmp_path / "m"
    (d / "articles").mkdir(parents=True)
    (d / "articles" / "a.html").write_text(
        "<html><body><h1 class='claim-title'>T</h1><span class='date'>2020-03-01</span>"
        "<span class='verdict'>False</span><span class='publisher'>X</span>"
        "<span class='countries'>USA</span><div class='article-body'>"
        + EMBED_PAGE.split('<div class="article-body">')[1].split("</div>")[0]
        + "</div></body></html>")
    (d / "factcheck_v1.json").write_text((GOLDEN / "factcheck_v1.json").read_text())
    (d / "manifest.json").write_text(json.dumps({
        "source_name": "X", "source_acronym": "EM", "parser_profile": "factcheck_v1",
        "entries": [{"source_url": "https://x.example/embed", "html_path": "articles/a.html"}]}))
    store = open_store(tmp_path / "s")
    ingest_manifest(SourceManifest.load(d / "manifest.json"), store)
    links = extract_links(store.get_article("EM1"), store)
    assert len(links) == 1
    assert links[0].platform == Platform.TWITTER
    assert links[0].post_uid == "1300839981247913985"
    assert links[0].anchor_index == 1  # the relative decoy occupies index 0


def test_golden_corpus_exact_recovery(golden_store):
    got = {(link.article_id, link.platform.value, link.post_uid, link.anchor_index)
           for link in golden_store.links()}
    want = {(e["news_id"], e["platform"], e["post_uid"], e["anchor_index"])
            for e in sidecar("links.json")}
    assert got == want
    assert len(got) == 120


def test_golden_corpus_no_decoy_extracted(golden_store):
    decoys = sidecar("decoys.json")
    assert len(decoys) == 60
    persisted_raw = {link.raw_url for link in golden_store.links()}
    for decoy in decoys:
        assert decoy["raw_url"] not in persisted_raw


def test_no_other_platform_persisted(golden_store):
    assert all(link.platform != Platform.OTHER for link in golden_store.links())


def test_extract_is_deterministic_and_idempotent(golden_store):
    before = {(l.article_id, l.post_uid, l.anchor_index) for l in golden_store.links()}
    for article in golden_store.articles():
        extract_links(article, golden_store)
    after = {(l.article_id, l.post_uid, l.anchor_index) for l in golden_store.links()}
    assert before == after


def test_canonical_url_recomputable(golden_store):
    from amused.urls import canonicalize
    for link in golden_store.links():
        assert link.canonical_url == canonicalize(link.raw_url)


def test_resolver_expands_shorteners(tmp_path):
    from amused.ingest import SourceManifest, ingest_manifest
    import json
    d = tmp_path / "m"
    (d / "articles").mkdir(parents=True)
    (d / "articles" / "a.html").write_text(
        "<html><body><h1 class='claim-title'>T</h1><span class='date'>2020-03-01</span>"
        "<span class='verdict'>False</span><span class='publisher'>X</span>"
        "<span class='countries'>USA</span><div class='article-body'>"
        "<p>see <a href='https://t.co/abc'>this</a> and"
        " <a href='https://t.co/dead'>that</a></p>"
        "</div></body></html>")
    (d / "factcheck_v1.json").write_text((GOLDEN / "factcheck_v1.json").read_text())
    (d / "manifest.json").write_text(json.dumps({
        "source_name": "X", "source_acronym": "RS", "parser_profile": "factcheck_v1",
        "entries": [{"source_url": "https://x.example/r", "html_path": "articles/a.html"}]}))
    store = open_store(tmp_path / "s")
    ingest_manifest(SourceManifest.load(d / "manifest.json"), store)
    article = store.get_article("RS1")

    # without a resolver, shorteners classify as Other and are dropped
    assert extract_links(article, store) == []

    hops = {"https://t.co/abc": "https://twitter.com/u/status/777"}
    links = extract_links(article, store, resolver=lambda u: hops.get(u, u))
    assert [(l.platform, l.post_uid) for l in links] == [(Platform.TWITTER, "777")]
    assert links[0].raw_url == "https://twitter.com/u/status/777"  # stored expanded
