"""File-backed job store with an in-process worker pool.

Each job lives as two files under the data directory: ``<id>.job.json``
(state, config, timings) and ``<id>.result.json`` (the full pre-dedupe
ranked rows, written once when the job finishes). Storing the ranked result
is what makes similarity-threshold changes interactive: re-filtering a done
job never re-mines.
"""

from __future__ import annotations

import json
import queue
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..pipeline import AnalysisConfig, run_analysis
from ..report import serialize_ranked_rows

RESULT_SCHEMA = "rca-result/1"


class JobQueueFull(RuntimeError):
    """The pending-job queue is at capacity."""


@dataclass(slots=True)
class JobRecord:
    job_id: str
    state: str  # queued -> running -> done | failed
    config: dict
    error: str | None = None
    timings: dict[str, float] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    idempotency_key: str | None = None

    def to_json(self) -> dict:
        return {
            "job_id": self.job_id,
            "state": self.state,
            "config": self.config,
            "error": self.error,
            "timings": self.timings,
            "warnings": self.warnings,
            "idempotency_key": self.idempotency_key,
        }

    @classmethod
    def from_json(cls, data: dict) -> "JobRecord":
        return cls(
            job_id=data["job_id"],
            state=data["state"],
            config=data.get("config", {}),
            error=data.get("error"),
            timings=data.get("timings", {}),
            warnings=data.get("warnings", []),
            idempotency_key=data.get("idempotency_key"),
        )


class JobStore:
    """Queue, execute, and persist analysis jobs.

    State transitions are queued -> running -> done/failed only; results are
    write-once and reads after completion always see the same bytes.
    """

    def __init__(
        self,
        data_dir: Path,
        job_workers: int = 2,
        queue_limit: int = 64,
    ) -> None:
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._jobs: dict[str, JobRecord] = {}
        self._by_key: dict[str, str] = {}
        self._queue: queue.Queue = queue.Queue(maxsize=queue_limit)
        self._recover()
        # job_workers < 1 starts no workers; jobs then sit queued (test seam)
        self._workers = [
            threading.Thread(target=self._worker_loop, daemon=True, name=f"rca-worker-{i}")
            for i in range(job_workers)
        ]
        for worker in self._workers:
            worker.start()

    # -- persistence -----------------------------------------------------

    def _job_path(self, job_id: str) -> Path:
        return self.data_dir / f"{job_id}.job.json"

    def _result_path(self, job_id: str) -> Path:
        return self.data_dir / f"{job_id}.result.json"

    def _persist(self, record: JobRecord) -> None:
        self._job_path(record.job_id).write_text(
            json.dumps(record.to_json(), indent=2), encoding="utf-8"
        )

    def _recover(self) -> None:
        for path in sorted(self.data_dir.glob("*.job.json")):
            record = JobRecord.from_json(json.loads(path.read_text(encoding="utf-8")))
            if record.state in ("queued", "running"):
                record.state = "failed"
                record.error = "interrupted by service restart"
                self._persist(record)
            self._jobs[record.job_id] = record
            if record.idempotency_key:
                self._by_key[record.idempotency_key] = record.job_id

    # -- submission and execution ----------------------------------------

    def submit(
        self,
        test_records: Sequence[dict],
        control_records: Sequence[dict],
        config: AnalysisConfig,
        idempotency_key: str | None = None,
    ) -> str:
        with self._lock:
            if idempotency_key and idempotency_key in self._by_key:
                return self._by_key[idempotency_key]
            job_id = uuid.uuid4().hex[:12]
            record = JobRecord(
                job_id=job_id,
                state="queued",
                config=config.to_json(),
                idempotency_key=idempotency_key,
            )
            self._jobs[job_id] = record
            if idempotency_key:
                self._by_key[idempotency_key] = job_id
            self._persist(record)
        try:
            self._queue.put_nowait((job_id, list(test_records), list(control_records), config))
        except queue.Full:
            with self._lock:
                record.state = "failed"
                record.error = "job queue full"
                self._persist(record)
            raise JobQueueFull("job queue full") from None
        return job_id

    def _worker_loop(self) -> None:
        while True:
            item = self._queue.get()
            if item is None:
                return
            job_id, test_records, control_records, config = item
            self._execute(job_id, test_records, control_records, config)
            self._queue.task_done()

    def _execute(
        self,
        job_id: str,
        test_records: list[dict],
        control_records: list[dict],
        config: AnalysisConfig,
    ) -> None:
        with self._lock:
            record = self._jobs[job_id]
            record.state = "running"
            self._persist(record)
        try:
            run = run_analysis(test_records, control_records, config)
            result = {
                "schema": RESULT_SCHEMA,
                "job_id": job_id,
                "metadata": run.result.metadata,
                "ranked_rows": serialize_ranked_rows(run.result.rows),
            }
            self._result_path(job_id).write_text(
                json.dumps(result, indent=2, ensure_ascii=False), encoding="utf-8"
            )
            with self._lock:
                record.state = "done"
                record.timings = {k: round(v, 6) for k, v in run.timings.items()}
                record.warnings = list(run.result.warnings)
                self._persist(record)
        except Exception as exc:  # failed jobs carry the error, never crash a worker
            with self._lock:
                record.state = "failed"
                record.error = str(exc)
                self._persist(record)

    # -- reads -------------------------------------------------------------

    def get(self, job_id: str) -> JobRecord | None:
        with self._lock:
            return self._jobs.get(job_id)

    def load_result(self, job_id: str) -> dict:
        return json.loads(self._result_path(job_id).read_text(encoding="utf-8"))

    def wait_idle(self, timeout: float | None = None) -> None:
        """Block until queued work drains (test helper)."""
        import time

        deadline = None if timeout is None else time.monotonic() + timeout
        while True:
            with self._lock:
                busy = any(r.state in ("queued", "running") for r in self._jobs.values())
            if not busy:
                return
            if deadline is not None and time.monotonic() > deadline:
                raise TimeoutError("jobs did not settle in time")
            time.sleep(0.01)

    def close(self) -> None:
        for _ in self._workers:
            self._queue.put(None)
