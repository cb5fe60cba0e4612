import json
import shutil
from datetime import datetime, timezone
from pathlib import Path

import pytest

from amused.pipeline import run_pipeline
from amused.store import open_store

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"

FROZEN_NOW = datetime(2020, 9, 15, 12, 0, 0, tzinfo=timezone.utc)


def sidecar(name: str):
    return json.loads((GOLDEN / "sidecar" / name).read_text(encoding="utf-8"))


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def frozen_clock(monkeypatch):
    """Pin wall-clock time so serialized timestamps are reproducible."""
    import amused.clock
    monkeypatch.setattr(amused.clock, "now_utc", lambda: FROZEN_NOW)
    return FROZEN_NOW


def write_config(directory: Path, store_path: Path) -> Path:
    cfg = directory / "config.json"
    cfg.write_text(json.dumps({
        "manifest": str(GOLDEN / "manifest.json"),
        "fixtures": str(GOLDEN / "posts"),
        "store": str(store_path),
    }))
    return cfg


@pytest.fixture(scope="session")
def golden_run(tmp_path_factory):
    """One full pipeline run over the golden corpus, shared read-only."""
    root = tmp_path_factory.mktemp("golden-run")
    cfg = write_config(root, root / "store")
    report = run_pipeline(cfg)
    return root / "store", report


@pytest.fixture
def golden_store(golden_run, tmp_path):
    """Private mutable copy of the completed golden store."""
    src, _ = golden_run
    dst = tmp_path / "store"
    shutil.copytree(src, dst)
    return open_store(dst)


@pytest.fixture
def golden_report(golden_run):
    return golden_run[1]
