"""In-process asynchronous job queue.

One worker thread drains a FIFO queue; job records are kept in memory
(sessions and corpora are the durable state, jobs are not). The queue
interface is deliberately small so an external broker could replace it.
"""
from __future__ import annotations

import queue
import threading
import time
import traceback
import uuid
from dataclasses import dataclass, field
from typing import Callable


@dataclass
class Job:
    job_id: str
    kind: str  # "ingest_encode_rank" or "rerank"
    subject: str  # corpus_id or session_id
    state: str = "queued"
    error: str | None = None
    created_at: float = field(default_factory=time.time)
    started_at: float | None = None
    finished_at: float | None = None

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "kind": self.kind,
            "subject": self.subject,
            "state": self.state,
            "error": self.error,
            "created_at": self.created_at,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }


class JobQueue:
    def __init__(self):
        self._queue: queue.Queue[str | None] = queue.Queue()
        self._jobs: dict[str, Job] = {}
        self._funcs: dict[str, Callable[[], None]] = {}
        self._lock = threading.Lock()
        self._worker = threading.Thread(target=self._run, daemon=True)
        self._worker.start()

    def submit(self, kind: str, subject: str, fn: Callable[[], None]) -> Job:
        job = Job(job_id=uuid.uuid4().hex, kind=kind, subject=subject)
        with self._lock:
            self._jobs[job.job_id] = job
            self._funcs[job.job_id] = fn
        self._queue.put(job.job_id)
        return job

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)

    def has_active(self, subject: str, kind: str) -> bool:
        with self._lock:
            return any(
                j.subject == subject and j.kind == kind and j.state in ("queued", "running")
                for j in self._jobs.values()
            )

    def wait_idle(self, timeout: float = 30.0) -> None:
        """Block until every queued job has been processed (test helper)."""
        deadline = time.time() + timeout
        while time.time() < deadline:
            with self._lock:
                busy = any(j.state in ("queued", "running") for j in self._jobs.values())
            if not busy:
                return
            time.sleep(0.01)
        raise TimeoutError("job queue did not drain")

    def shutdown(self) -> None:
        self._queue.put(None)

    def _run(self) -> None:
        while True:
            job_id = self._queue.get()
            if job_id is None:
                return
            with self._lock:
                job = self._jobs[job_id]
                fn = self._funcs.pop(job_id)
                job.state = "running"
                job.started_at = time.time()
            try:
                fn()
            except Exception as exc:
                with self._lock:
                    job.state = "failed"
                    job.error = f"{type(exc).__name__}: {exc}"
                    job.finished_at = time.time()
                traceback.print_exc()
            else:
                with self._lock:
                    job.state = "succeeded"
                    job.finished_at = time.time()
