import json

import pytest

from amused.cli import main
from amused.store import open_store

from conftest import GOLDEN, write_config


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_pipeline_golden_counts(tmp_path, capsys):
    cfg = write_config(tmp_path, tmp_path / "store")
    code, out, _ = run_cli(capsys, "-q", "run", "--config", str(cfg))
    assert code == 0
    report = json.loads(out)
    assert {k: report[k] for k in ("articles", "links", "unique_posts", "labeled")} == \
        {"articles": 40, "links": 120, "unique_posts": 100, "labeled": 100}


def test_run_rerun_zero_deltas(tmp_path, capsys):
    cfg = write_config(tmp_path, tmp_path / "store")
    run_cli(capsys, "-q", "run", "--config", str(cfg))
    code, out, _ = run_cli(capsys, "-q", "run", "--config", str(cfg))
    assert code == 0
    report = json.loads(out)
    assert {k: report[k] for k in ("articles", "links", "unique_posts", "labeled")} == \
        {"articles": 0, "links": 0, "unique_posts": 0, "labeled": 0}


def test_config_missing_fixtures_dir(tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({
        "manifest": str(GOLDEN / "manifest.json"),
        "fixtures": str(tmp_path / "not-there"),
        "store": str(tmp_path / "store"),
    }))
    code, out, err = run_cli(capsys, "-q", "run", "--config", str(cfg))
    assert code == 1
    assert "fixtures" in err
    assert out == ""  # diagnostics go to stderr only


def test_run_equals_stage_subcommands(tmp_path, capsys, frozen_clock):
    cfg = write_config(tmp_path, tmp_path / "store-a")
    assert run_cli(capsys, "-q", "run", "--config", str(cfg))[0] == 0

    store_b = tmp_path / "store-b"
    stages = [
        ("ingest", "--manifest", str(GOLDEN / "manifest.json"), "--store", str(store_b)),
        ("langdetect", "--store", str(store_b)),
        ("extract", "--store", str(store_b)),
        ("fetch", "--store", str(store_b), "--fixtures", str(GOLDEN / "posts")),
        ("label", "--store", str(store_b)),
        ("dedupe", "--store", str(store_b)),
    ]
    for stage in stages:
        assert run_cli(capsys, "-q", *stage)[0] == 0

    a, b = open_store(tmp_path / "store-a"), open_store(store_b)
    a.compact(), b.compact()
    a.close(), b.close()
    for name in ("articles.jsonl", "links.jsonl", "posts.jsonl",
                 "labeled.jsonl", "tasks.jsonl", "meta.json", "audit.jsonl"):
        assert (tmp_path / "store-a" / name).read_bytes() == (store_b / name).read_bytes(), name


def test_report_subcommands(tmp_path, capsys):
    cfg = write_config(tmp_path, tmp_path / "store")
    run_cli(capsys, "-q", "run", "--config", str(cfg))
    store = str(tmp_path / "store")

    code, out, _ = run_cli(capsys, "-q", "report", "--store", store,
                           "--kind", "platform", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert sum(r["total_links"] for r in rows) == 120

    code, out, _ = run_cli(capsys, "-q", "report", "--store", store,
                           "--kind", "coverage")
    assert json.loads(out) == {"link_coverage": 0.55}

    code, out, _ = run_cli(capsys, "-q", "report", "--store", store,
                           "--kind", "timeline", "--format", "csv", "--min-posts", "0")
    assert code == 0 and out.splitlines()[0] == "platform,bucket,count,fallback_count"

    code, out, _ = run_cli(capsys, "-q", "report", "--store", store,
                           "--kind", "class", "--format", "table")
    assert code == 0 and out.splitlines()[0].startswith("platform")


def test_sample_and_export_subcommands(tmp_path, capsys, frozen_clock):
    cfg = write_config(tmp_path, tmp_path / "store")
    run_cli(capsys, "-q", "run", "--config", str(cfg))
    store = str(tmp_path / "store")

    code, out, _ = run_cli(capsys, "-q", "sample", "--store", store,
                           "--rate", "0.1", "--seed", "42")
    assert code == 0
    # ceil(0.1*n) per platform: 36->4, 23->3, 21->3, 7->1, 3->1
    assert json.loads(out)["tasks_created"] == 12

    export_path = tmp_path / "out.jsonl"
    code, out, _ = run_cli(capsys, "-q", "export", "--store", store,
                           "--out", str(export_path))
    assert code == 0
    assert json.loads(out)["records_written"] == 90
    assert len(export_path.read_text().splitlines()) == 90


def test_sample_rate_one(tmp_path, capsys, frozen_clock):
    cfg = write_config(tmp_path, tmp_path / "store")
    run_cli(capsys, "-q", "run", "--config", str(cfg))
    code, out, _ = run_cli(capsys, "-q", "sample", "--store", str(tmp_path / "store"),
                           "--rate", "1.0", "--seed", "1")
    assert code == 0
    assert json.loads(out)["tasks_created"] == 90


def test_unknown_subcommand_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_amused_error_exit_code(tmp_path, capsys):
    code, out, err = run_cli(capsys, "-q", "dedupe", "--store",
                             str(tmp_path / "nope" / "also-a-file"))
    assert code == 0  # empty store is created, dedupe of nothing is fine

    bad = tmp_path / "file.txt"
    bad.write_text("not a store")
    code, out, err = run_cli(capsys, "-q", "dedupe", "--store", str(bad))
    assert code == 1
    assert "error" in err
