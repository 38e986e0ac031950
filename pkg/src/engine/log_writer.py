"""
Run directory writer: step log, events sidecar and the payload table.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Set, Union

from src.models import LogHeader, RunSummary, StepRecord

logger = logging.getLogger(__name__)

LOG_FILE = "log.jsonl"
EVENTS_FILE = "events.jsonl"
ARTIFACTS_FILE = "artifacts.jsonl"
SUMMARY_FILE = "summary.json"


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


class RunWriter:
    """Append-only writer for one run directory. Use as a context manager."""

    def __init__(self, run_dir: Union[str, Path]):
        self.run_dir = Path(run_dir)
        self.run_dir.mkdir(parents=True, exist_ok=True)
        self._log = open(self.run_dir / LOG_FILE, "w", encoding="utf-8")
        self._events = open(self.run_dir / EVENTS_FILE, "w", encoding="utf-8")
        self._artifacts = open(self.run_dir / ARTIFACTS_FILE, "w", encoding="utf-8")
        self._seen_payloads: Set[str] = set()

    def __enter__(self) -> "RunWriter":
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()
        if exc_type is not None:
            logger.error(f"Run aborted, partial log left in {self.run_dir}: {exc}")
        return False

    def write_header(self, header: LogHeader) -> None:
        self._log.write(dumps(header.model_dump(mode="json")) + "\n")

    def write_records(self, records: Iterable[StepRecord]) -> None:
        for record in records:
            self._log.write(dumps(record.model_dump(mode="json")) + "\n")

    def write_events(self, events: Iterable[Dict[str, Any]]) -> None:
        for event in events:
            if "payload" in event:
                event = dict(event)
                self._store_payload(event["payload_hash"], event.pop("payload"))
            self._events.write(dumps(event) + "\n")

    def _store_payload(self, digest: str, payload: str) -> None:
        if digest in self._seen_payloads:
            return
        self._seen_payloads.add(digest)
        self._artifacts.write(dumps({"hash": digest, "payload": payload}) + "\n")

    def flush(self) -> None:
        for handle in (self._log, self._events, self._artifacts):
            handle.flush()

    def write_summary(self, summary: RunSummary) -> None:
        (self.run_dir / SUMMARY_FILE).write_text(
            json.dumps(summary.model_dump(mode="json"), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    def close(self) -> None:
        for handle in (self._log, self._events, self._artifacts):
            if not handle.closed:
                handle.flush()
                handle.close()
