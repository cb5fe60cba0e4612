"""Human-review sampling and the verdict queue.

Per platform, ceil(rate * n) of the unverified labeled posts are drawn with
the deterministic generator from :mod:`amused.sampling` and turned into
pending tasks. Reviewers lease the oldest pending task, then confirm or
reject; a rejection flips the labeled post to ``rejected``, which every
export and report excludes. All decisions land in the append-only audit log.
"""

from __future__ import annotations

import threading
import uuid
from datetime import datetime, timedelta

from . import clock
from .errors import (
    AlreadyDecided,
    LeaseHeldByOther,
    NothingToSample,
    QueueEmpty,
    TaskNotFound,
)
from .models import LabeledPost, VerificationTask
from .sampling import floyd_sample, platform_rng, sample_size
from .store import Store

LEASE_MINUTES = 15

# Task ids must be stable across runs for a given (seed, post); a UUIDv5 in
# this namespace gives that while keeping the opaque-UUID shape.
TASK_NAMESPACE = uuid.UUID("6ba7b811-9dad-11d1-80b4-00c04fd430c8")


def make_task_id(seed: int, labeled: LabeledPost) -> str:
    name = f"{seed}:{labeled.platform.value}:{labeled.post_uid}:{labeled.news_id}"
    return str(uuid.uuid5(TASK_NAMESPACE, name))


def sample_for_review(store: Store, rate: float | str = 0.10, seed: int = 0) -> list[VerificationTask]:
    """Draw the per-platform review sample and create pending tasks."""
    candidates: dict[str, list[LabeledPost]] = {}
    for labeled in store.labeled():
        if labeled.verification_state == "unverified":
            candidates.setdefault(labeled.platform.value, []).append(labeled)
    if not any(candidates.values()):
        raise NothingToSample("no unverified labeled posts")
    tasks: list[VerificationTask] = []
    sampled_at = clock.now_rfc3339()
    for platform_name in sorted(candidates):
        pool = sorted(candidates[platform_name],
                      key=lambda lp: (lp.post_uid, lp.news_id))
        k = sample_size(rate, len(pool))
        if k == 0:
            continue
        rng = platform_rng(seed, platform_name)
        for index in floyd_sample(len(pool), k, rng):
            labeled = pool[index]
            labeled.verification_state = "sampled"
            store.upsert(labeled)
            task = VerificationTask(
                task_id=make_task_id(seed, labeled),
                platform=labeled.platform,
                post_uid=labeled.post_uid,
                news_id=labeled.news_id,
                sampled_at=sampled_at,
            )
            store.upsert(task)
            store.audit("sampled", task_id=task.task_id,
                        platform=platform_name, post_uid=labeled.post_uid,
                        news_id=labeled.news_id, seed=seed)
            tasks.append(task)
    return tasks


class VerificationQueue:
    """Serialized review operations over one store.

    Leases are in-memory: a restart returns leased-but-undecided tasks to the
    pool, which is exactly what lease expiry would do.
    """

    def __init__(self, store: Store):
        self.store = store
        self._lock = threading.RLock()
        self._leases: dict[str, tuple[str, datetime]] = {}  # task_id -> (reviewer, expiry)

    def _pending_tasks(self) -> list[VerificationTask]:
        tasks = [t for t in self.store.tasks() if t.verdict == "pending"]
        tasks.sort(key=lambda t: (t.sampled_at, t.platform.value, t.post_uid))
        return tasks

    def next_task(self, reviewer: str) -> tuple[VerificationTask, dict]:
        """Lease the oldest pending task to ``reviewer``; FIFO order."""
        if not reviewer:
            raise ValueError("reviewer id required")
        with self._lock:
            now = clock.now_utc()
            for task in self._pending_tasks():
                lease = self._leases.get(task.task_id)
                if lease is not None and lease[1] > now:
                    continue
                self._leases[task.task_id] = (reviewer, now + timedelta(minutes=LEASE_MINUTES))
                return task, self._payload(task)
            raise QueueEmpty("no pending unleased tasks")

    def _payload(self, task: VerificationTask) -> dict:
        labeled = self.store.get_labeled(task.platform, task.post_uid, task.news_id)
        post = self.store.get_post(task.platform, task.post_uid)
        article = self.store.get_article(task.news_id)
        return {
            "post": post.to_dict() if post else None,
            "article_title": article.title if article else "",
            "article_verdict_raw": article.verdict_raw if article else "",
            "label_norm": labeled.label_norm if labeled else "",
            "source_url": article.source_url if article else "",
        }

    def submit_verdict(self, task_id: str, verdict: str, reviewer: str,
                       note: str = "") -> VerificationTask:
        """Atomically decide a task and move its labeled post forward."""
        if verdict not in ("confirmed", "rejected"):
            raise ValueError(f"verdict must be confirmed or rejected, got {verdict!r}")
        with self._lock:
            task = self.store.get_task(task_id)
            if task is None:
                raise TaskNotFound(task_id)
            if task.verdict != "pending":
                raise AlreadyDecided(f"{task_id} already {task.verdict}")
            lease = self._leases.get(task_id)
            if lease is not None and lease[0] != reviewer and lease[1] > clock.now_utc():
                raise LeaseHeldByOther(f"{task_id} leased to {lease[0]}")
            task.verdict = verdict
            task.reviewer = reviewer
            task.reviewed_at = clock.now_rfc3339()
            task.note = note
            self.store.upsert(task)
            labeled = self.store.get_labeled(task.platform, task.post_uid, task.news_id)
            labeled.verification_state = verdict
            self.store.upsert(labeled)
            self.store.audit("verdict", task_id=task_id, verdict=verdict,
                             reviewer=reviewer, note=note,
                             platform=task.platform.value, post_uid=task.post_uid)
            self._leases.pop(task_id, None)
            return task

    def stats(self) -> dict:
        counts = {"pending": 0, "confirmed": 0, "rejected": 0}
        by_platform: dict[str, dict] = {}
        for task in self.store.tasks():
            counts[task.verdict] += 1
            row = by_platform.setdefault(task.platform.value,
                                         {"pending": 0, "confirmed": 0, "rejected": 0})
            row[task.verdict] += 1
        return {**counts, "by_platform": by_platform}
