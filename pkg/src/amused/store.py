"""Single-directory embedded store: one JSON-Lines file per record kind.

Upserts append a line; the in-memory index (rebuilt on open, last line wins)
is the authoritative view. Deletes and ``compact()`` rewrite a whole file in
canonical form: records sorted by natural key, compact JSON, sorted keys, LF.
Writes are serialized by a lock on the handle (single writer, many readers).
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from . import clock
from .errors import InvariantViolation, PermissionDenied, StorageCorrupt
from .models import (
    STATE_TRANSITIONS,
    LabeledPost,
    NewsArticle,
    SocialLink,
    SocialPost,
    VerificationTask,
)

FORMAT_VERSION = 1

_KINDS = {
    "articles": NewsArticle,
    "links": SocialLink,
    "posts": SocialPost,
    "labeled": LabeledPost,
    "tasks": VerificationTask,
}
_KIND_OF = {cls: kind for kind, cls in _KINDS.items()}


def _canonical_line(d: dict) -> str:
    return json.dumps(d, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"


class Store:
    """Handle over a store directory. Use :func:`open_store` to obtain one."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.RLock()
        self._index: dict[str, dict] = {kind: {} for kind in _KINDS}
        self._files: dict[str, object] = {}
        self._load()

    # -- lifecycle -------------------------------------------------------

    def _file_path(self, kind: str) -> Path:
        return self.path / f"{kind}.jsonl"

    def _load(self):
        try:
            if self.path.exists() and not self.path.is_dir():
                raise StorageCorrupt(f"{self.path} is not a directory")
            self.path.mkdir(parents=True, exist_ok=True)
        except PermissionError as exc:
            raise PermissionDenied(str(exc)) from exc
        meta_path = self.path / "meta.json"
        if meta_path.exists():
            try:
                self.meta = json.loads(meta_path.read_text(encoding="utf-8"))
            except (ValueError, UnicodeDecodeError) as exc:
                raise StorageCorrupt(f"meta.json unreadable: {exc}") from exc
            if self.meta.get("format_version") != FORMAT_VERSION:
                raise StorageCorrupt(
                    f"unsupported format_version {self.meta.get('format_version')!r}")
        else:
            # Refuse to adopt a directory that has content but no meta.json.
            stray = [p.name for p in self.path.iterdir()]
            if stray:
                raise StorageCorrupt(f"{self.path} exists but is not a store: {stray[:3]}")
            self.meta = {"format_version": FORMAT_VERSION}
            self._write_meta()
        for kind, cls in _KINDS.items():
            fp = self._file_path(kind)
            if not fp.exists():
                fp.touch()  # the documented layout names every file
                continue
            n = 0
            try:
                with open(fp, encoding="utf-8") as fh:
                    for n, line in enumerate(fh, 1):
                        if not line.strip():
                            continue
                        record = cls.from_dict(json.loads(line))
                        self._index[kind][record.key] = record.to_dict()
            except (ValueError, TypeError, KeyError, UnicodeDecodeError) as exc:
                raise StorageCorrupt(f"{fp.name}:{n}: {exc}") from exc

    def _write_meta(self):
        (self.path / "meta.json").write_text(
            json.dumps(self.meta, sort_keys=True, indent=2) + "\n", encoding="utf-8")

    def _append(self, kind: str, d: dict):
        fh = self._files.get(kind)
        if fh is None:
            try:
                fh = open(self._file_path(kind), "a", encoding="utf-8", newline="\n")
            except PermissionError as exc:
                raise PermissionDenied(str(exc)) from exc
            self._files[kind] = fh
        fh.write(_canonical_line(d))
        fh.flush()

    def _rewrite(self, kind: str):
        if kind in self._files:
            self._files.pop(kind).close()
        tmp = self._file_path(kind).with_suffix(".jsonl.tmp")
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            for key in sorted(self._index[kind]):
                fh.write(_canonical_line(self._index[kind][key]))
        os.replace(tmp, self._file_path(kind))

    def close(self):
        with self._lock:
            for fh in self._files.values():
                fh.close()
            self._files.clear()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    # -- writes ----------------------------------------------------------

    def upsert(self, record):
        """Insert or replace by natural key; returns the key. Idempotent."""
        kind = _KIND_OF.get(type(record))
        if kind is None:
            raise InvariantViolation("unknown record kind", type(record).__name__)
        record.validate()
        with self._lock:
            self._check_references(kind, record)
            key = record.key
            new = record.to_dict()
            old = self._index[kind].get(key)
            if old == new:
                return key
            if old is not None:
                self._check_transition(kind, old, new)
            self._index[kind][key] = new
            self._append(kind, new)
            return key

    def _check_references(self, kind: str, record):
        if kind == "links":
            if record.article_id not in self._index["articles"]:
                raise InvariantViolation("link references stored article", record.article_id)
        elif kind == "labeled":
            if record.news_id not in self._index["articles"]:
                raise InvariantViolation("labeled post references stored article", record.news_id)
            if record.post_key not in self._index["posts"]:
                raise InvariantViolation("labeled post references stored post", str(record.post_key))
        elif kind == "tasks":
            if record.labeled_key not in self._index["labeled"]:
                raise InvariantViolation("task references stored labeled post", str(record.labeled_key))
            for other in self._index["tasks"].values():
                if other["task_id"] != record.task_id and \
                        (other["platform"], other["post_uid"], other["news_id"]) == record.labeled_key:
                    raise InvariantViolation("one task per labeled post", str(record.labeled_key))

    @staticmethod
    def _check_transition(kind: str, old: dict, new: dict):
        if kind == "labeled":
            if new["verification_state"] not in STATE_TRANSITIONS[old["verification_state"]]:
                raise InvariantViolation(
                    "verification_state forward-only",
                    f"{old['verification_state']} -> {new['verification_state']}")
        elif kind == "tasks":
            if old["verdict"] != "pending" and new["verdict"] != old["verdict"]:
                raise InvariantViolation("task verdict decided once",
                                         f"{old['verdict']} -> {new['verdict']}")

    def delete_labeled(self, key: tuple):
        self.delete_labeled_many([key])

    def delete_labeled_many(self, keys):
        """Drop several labeled records with a single file rewrite."""
        with self._lock:
            found = [k for k in keys if k in self._index["labeled"]]
            for key in found:
                del self._index["labeled"][key]
            if found:
                self._rewrite("labeled")

    def compact(self):
        """Rewrite every file in canonical order (for diffing/comparison)."""
        with self._lock:
            for kind in _KINDS:
                self._rewrite(kind)
            self._write_meta()

    def set_meta(self, key: str, value):
        with self._lock:
            self.meta[key] = value
            self._write_meta()

    # -- audit log ---------------------------------------------------------

    def audit(self, event: str, **fields):
        entry = {"ts": clock.now_rfc3339(), "event": event, **fields}
        with self._lock:
            with open(self.path / "audit.jsonl", "a", encoding="utf-8", newline="\n") as fh:
                fh.write(_canonical_line(entry))
        return entry

    def audit_entries(self) -> list[dict]:
        fp = self.path / "audit.jsonl"
        if not fp.exists():
            return []
        with open(fp, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]

    def dedup_dropped_keys(self) -> set[tuple]:
        return {(e["platform"], e["post_uid"], e["news_id"])
                for e in self.audit_entries() if e["event"] == "dedup_drop"}

    # -- reads -------------------------------------------------------------

    def _all(self, kind: str):
        cls = _KINDS[kind]
        with self._lock:
            return [cls.from_dict(self._index[kind][k]) for k in sorted(self._index[kind])]

    def articles(self) -> list[NewsArticle]:
        return self._all("articles")

    def links(self) -> list[SocialLink]:
        return self._all("links")

    def posts(self) -> list[SocialPost]:
        return self._all("posts")

    def labeled(self) -> list[LabeledPost]:
        return self._all("labeled")

    def tasks(self) -> list[VerificationTask]:
        return self._all("tasks")

    def _get(self, kind: str, key):
        with self._lock:
            d = self._index[kind].get(key)
        return _KINDS[kind].from_dict(d) if d is not None else None

    def get_article(self, news_id: str) -> NewsArticle | None:
        return self._get("articles", news_id)

    def get_post(self, platform, post_uid: str) -> SocialPost | None:
        return self._get("posts", (str(platform), post_uid))

    def get_labeled(self, platform, post_uid: str, news_id: str) -> LabeledPost | None:
        return self._get("labeled", (str(platform), post_uid, news_id))

    def get_task(self, task_id: str) -> VerificationTask | None:
        return self._get("tasks", task_id)

    def count(self, kind: str) -> int:
        with self._lock:
            return len(self._index[kind])


def open_store(path: str | Path) -> Store:
    """Open an existing store or create an empty one at ``path``."""
    return Store(path)
