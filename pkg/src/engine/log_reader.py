"""
Readers for run directories. All analysis stages go through these.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Union

from pydantic import ValidationError

from src.engine.log_writer import ARTIFACTS_FILE, EVENTS_FILE, LOG_FILE, SUMMARY_FILE
from src.errors import LogFormatError, SchemaMismatch
from src.models import LOG_SCHEMA, LogHeader, RunSummary, StepRecord


def _json_lines(path: Path) -> Iterator[tuple]:
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                yield line_no, json.loads(line)
            except json.JSONDecodeError as e:
                raise LogFormatError(str(path), line_no, f"not valid JSON ({e.msg})") from e


def read_header(path: Union[str, Path]) -> LogHeader:
    path = Path(path)
    for line_no, obj in _json_lines(path):
        try:
            header = LogHeader.model_validate(obj)
        except ValidationError as e:
            raise LogFormatError(str(path), line_no, f"bad header: {e}") from e
        if header.schema_version != LOG_SCHEMA:
            raise SchemaMismatch(f"{path} has schema {header.schema_version}, expected {LOG_SCHEMA}")
        return header
    raise LogFormatError(str(path), 1, "empty log")


def iter_records(path: Union[str, Path]) -> Iterator[StepRecord]:
    """Step records of a log file, header skipped."""
    path = Path(path)
    read_header(path)
    for line_no, obj in _json_lines(path):
        if line_no == 1 or "schema_version" in obj:
            continue
        try:
            yield StepRecord.model_validate(obj)
        except ValidationError as e:
            raise LogFormatError(str(path), line_no, f"bad step record: {e}") from e


def iter_events(path: Union[str, Path]) -> Iterator[Dict[str, Any]]:
    for _, obj in _json_lines(Path(path)):
        yield obj


def read_payloads(path: Union[str, Path]) -> Dict[str, str]:
    path = Path(path)
    if not path.exists():
        return {}
    return {row["hash"]: row["payload"] for _, row in _json_lines(path)}


@dataclass
class RunLog:
    """A run directory loaded into memory."""

    run_dir: Path
    header: LogHeader
    records: List[StepRecord] = field(default_factory=list)
    summary: RunSummary = None

    @property
    def run_id(self) -> str:
        return self.header.run_id

    @property
    def seed(self) -> int:
        return int(self.header.config.get("seed", 0))

    @property
    def preset(self) -> str:
        return str(self.header.config.get("preset", "core"))

    @property
    def analysis_dir(self) -> Path:
        return self.run_dir / "analysis"

    def events(self) -> Iterator[Dict[str, Any]]:
        return iter_events(self.run_dir / EVENTS_FILE)

    def payloads(self) -> Dict[str, str]:
        return read_payloads(self.run_dir / ARTIFACTS_FILE)


def load_run(run_dir: Union[str, Path]) -> RunLog:
    run_dir = Path(run_dir)
    log_path = run_dir / LOG_FILE
    if not log_path.exists():
        raise FileNotFoundError(f"No {LOG_FILE} in {run_dir}")
    summary = None
    summary_path = run_dir / SUMMARY_FILE
    if summary_path.exists():
        summary = RunSummary.model_validate_json(summary_path.read_text(encoding="utf-8"))
    return RunLog(
        run_dir=run_dir,
        header=read_header(log_path),
        records=list(iter_records(log_path)),
        summary=summary,
    )


def find_runs(root: Union[str, Path]) -> List[Path]:
    """Run directories under ``root`` (or ``root`` itself), sorted by path."""
    root = Path(root)
    if (root / LOG_FILE).exists():
        return [root]
    return sorted(p.parent for p in root.glob(f"*/{LOG_FILE}"))
