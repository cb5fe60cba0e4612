"""End-to-end automated run: ingest through dedupe.

Sampling and serving stay separate commands on purpose: the pipeline is
semi-automated, and the human-verification half has its own lifecycle.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from .errors import AmusedError, ConfigInvalid
from .fetchers import build_registry, fetch_all
from .ingest import SourceManifest, ingest_manifest
from .labeling import LabelMapping, dedupe, label_all
from .langid import detect_store_languages, load_profiles
from .links import extract_all
from .store import Store, open_store
from .urls import load_patterns

log = logging.getLogger(__name__)


class StageFailed(AmusedError):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")


@dataclass
class PipelineConfig:
    manifest: Path
    fixtures: Path
    store: Path
    mapping: Path | None = None
    profiles: Path | None = None
    patterns: Path | None = None
    concurrency: int = 4

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigInvalid(f"{path}: {exc}") from exc
        base = path.parent

        def resolve(key, required):
            value = raw.get(key)
            if value is None:
                if required:
                    raise ConfigInvalid(f"{path}: missing {key!r}")
                return None
            p = Path(value)
            return p if p.is_absolute() else base / p

        config = cls(
            manifest=resolve("manifest", True),
            fixtures=resolve("fixtures", True),
            store=resolve("store", True),
            mapping=resolve("mapping", False),
            profiles=resolve("profiles", False),
            patterns=resolve("patterns", False),
            concurrency=int(raw.get("concurrency", 4)),
        )
        for name in ("manifest", "fixtures", "mapping", "profiles", "patterns"):
            p = getattr(config, name)
            if p is not None and not p.exists():
                raise ConfigInvalid(f"{path}: {name} path does not exist: {p}")
        return config


def run_pipeline(config: PipelineConfig | str | Path, live: bool = False) -> dict:
    """Execute the automated stages in order; counts are this-run deltas."""
    if not isinstance(config, PipelineConfig):
        config = PipelineConfig.load(config)
    store = open_store(config.store)
    stages: dict[str, dict] = {}

    def run_stage(name, fn):
        log.info("stage %s", name)
        try:
            stages[name] = fn()
        except Exception as exc:
            raise StageFailed(name, exc) from exc
        return stages[name]

    manifest = SourceManifest.load(config.manifest)
    mapping = LabelMapping.load(config.mapping) if config.mapping else LabelMapping()
    profiles = load_profiles(config.profiles) if config.profiles else load_profiles()
    patterns = load_patterns(config.patterns) if config.patterns else None

    ingest_report = run_stage("ingest", lambda: ingest_manifest(manifest, store, live=live))
    run_stage("langdetect", lambda: detect_store_languages(store, profiles))
    extract_report = run_stage("extract", lambda: extract_all(store, patterns))
    registry = build_registry(config.fixtures, concurrency=config.concurrency)
    fetch_report = run_stage("fetch", lambda: fetch_all(store, registry))
    label_report = run_stage("label", lambda: label_all(store, mapping))
    run_stage("dedupe", lambda: dedupe(store))

    report = {
        "articles": ingest_report["articles_created"],
        "links": extract_report["links_created"],
        "unique_posts": sum(fetch_report.values()),
        "labeled": label_report["labeled_created"],
        "stages": stages,
    }
    store.close()
    return report


def stage_store(config: PipelineConfig) -> Store:
    return open_store(config.store)
