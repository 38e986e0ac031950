"""
Command implementations behind ``main.py``: run, analyze and report.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from src.cli import stages
from src.engine.config import load_config
from src.engine.log_reader import RunLog, find_runs, load_run
from src.engine.summary import action_counts, action_means, summarize
from src.errors import (
    ConfigError,
    DependencyMissing,
    JudgeFailure,
    SchemaMismatch,
    UsageError,
)
from src.minds.policies import SCRIPTED_POLICIES, Policy
from src.models import RunSummary
from src.run_manager import run_manager
from src.textmetrics.composite import complexity_over_time, run_composite

logger = logging.getLogger(__name__)

FORMATS = ("csv", "jsonl")
POLICIES = tuple(SCRIPTED_POLICIES) + ("remote",)
META_COLUMNS = ["run_id", "seed", "preset", "schema_version"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_DEPENDENCY = 4
EXIT_JUDGE = 5


def exit_code(error: BaseException) -> int:
    if isinstance(error, UsageError):
        return EXIT_USAGE
    if isinstance(error, ConfigError):
        return EXIT_CONFIG
    if isinstance(error, DependencyMissing):
        return EXIT_DEPENDENCY
    if isinstance(error, JudgeFailure):
        return EXIT_JUDGE
    return EXIT_ERROR


def make_policy(name: str, archive: bool = False) -> Policy:
    if name == "remote":
        from src.minds.remote import RemotePolicy
        return RemotePolicy(archive=archive)
    if name not in SCRIPTED_POLICIES:
        raise UsageError(f"Unknown policy '{name}'. Known policies: {', '.join(POLICIES)}")
    return SCRIPTED_POLICIES[name]()


# run


def cmd_run(
    config_path: Optional[str] = None,
    seed: Optional[int] = None,
    seeds: int = 1,
    policy: str = "forager",
    out: str = "runs",
    overrides: Optional[Dict[str, Any]] = None,
    workers: int = 1,
) -> List[RunSummary]:
    """Run ``seeds`` consecutive seeds, each into ``<out>/run-<seed>``."""
    if seeds < 1:
        raise UsageError("--seeds must be at least 1")
    make_policy(policy)
    overrides = dict(overrides or {})
    base = load_config(config_path, overrides)
    first = base.seed if seed is None else seed
    if policy == "remote" and "decision_workers" not in overrides:
        overrides["decision_workers"] = 8

    try:
        for s in range(first, first + seeds):
            config = load_config(config_path, {**overrides, "seed": s})
            run_manager.register_run(
                str(Path(out) / f"run-{s}"), config, lambda: make_policy(policy, base.archive_llm)
            )
        summaries = run_manager.run_all(workers)
    finally:
        run_manager.cleanup_all()

    for summary in summaries:
        print(
            f"{summary.run_id}: longevity={summary.longevity} extinct={summary.extinct} "
            f"artifacts={summary.total_artifacts} agents={summary.total_agents} "
            f"mean_population={summary.mean_population:.2f}"
        )
    return summaries


# analyze


def cmd_analyze(logs: str, stage: str = "all", options: Optional[stages.AnalyzeOptions] = None) -> List[Path]:
    """Run one analysis stage (or ``all``) over every run under ``logs``."""
    if stage != "all" and stage not in stages.STAGES:
        raise UsageError(f"Unknown stage '{stage}'. Known stages: {', '.join(stages.STAGES)}, all")
    options = options or stages.AnalyzeOptions()
    run_dirs = find_runs(logs)
    if not run_dirs:
        raise FileNotFoundError(f"No run logs under {logs}")
    for run_dir in run_dirs:
        stages.run_stage(load_run(run_dir), stage, options)
        print(f"{run_dir}: {stage} done")
    return run_dirs


# report


def _meta(run: RunLog) -> Dict[str, Any]:
    return {
        "run_id": run.run_id,
        "seed": run.seed,
        "preset": run.preset,
        "schema_version": run.header.schema_version,
    }


def _with_meta(frame: pd.DataFrame, meta: Dict[str, Any]) -> pd.DataFrame:
    frame = frame.copy()
    for key in reversed(META_COLUMNS):
        frame.insert(0, key, meta[key])
    return frame


def pareto_front(points: Sequence[Sequence[float]]) -> List[bool]:
    """True for points no other point matches or beats on every axis while beating on one."""
    flags = []
    for i, p in enumerate(points):
        dominated = any(
            all(q[k] >= p[k] for k in range(len(p))) and any(q[k] > p[k] for k in range(len(p)))
            for j, q in enumerate(points)
            if j != i
        )
        flags.append(not dominated)
    return flags


def conditions_table(runs: Sequence[RunLog]) -> pd.DataFrame:
    summaries = [r.summary for r in runs if r.summary is not None]
    if not summaries:
        return pd.DataFrame(columns=["preset", "n_runs", "schema_version"])
    table = summarize(summaries)
    table.insert(1, "run_ids", [
        ";".join(s.run_id for s in summaries if s.preset == p) for p in table["preset"]
    ])
    table.insert(2, "seeds", [
        ";".join(str(s.seed) for s in summaries if s.preset == p) for p in table["preset"]
    ])
    table["pareto"] = pareto_front(
        list(zip(table["longevity_mean"], table["artifacts_per_agent_mean"]))
    )
    return table


def _tag_rows(annotations: List[dict], level: str) -> List[dict]:
    subjects = max(1, len(annotations))
    counts: Dict[tuple, int] = {}
    for annotation in annotations:
        for item in annotation.get("events", []):
            counts[("events", item["event"])] = counts.get(("events", item["event"]), 0) + 1
        for item in annotation.get("behaviors", []):
            counts[("behaviors", item["behavior"])] = counts.get(("behaviors", item["behavior"]), 0) + 1
        for word in annotation.get("emergence", {}).get("keywords", []):
            counts[("emergence", word)] = counts.get(("emergence", word), 0) + 1
    return [
        {"level": level, "section": section, "tag": tag, "count": n, "subjects": len(annotations),
         "per_subject": n / subjects}
        for (section, tag), n in sorted(counts.items())
    ]


def _read_optional(path: Path, reader) -> Optional[Any]:
    if not path.exists():
        logger.info(f"Report: {path} not found, skipping")
        return None
    return reader(path)


def _json(path: Path) -> Any:
    return json.loads(path.read_text(encoding="utf-8"))


def run_tables(run: RunLog) -> Dict[str, pd.DataFrame]:
    """Every per-run table the analyses left behind, each prefixed with the run columns."""
    meta = _meta(run)
    root = run.analysis_dir
    tables: Dict[str, pd.DataFrame] = {}

    tables["action_counts"] = _with_meta(action_means(action_counts(run.records)), meta)

    behavior = root / "behavior"
    rows = []
    for name, level in ((stages.AGENT_ANNOTATIONS_FILE, "agent"), (stages.GROUP_ANNOTATIONS_FILE, "group")):
        annotations = _read_optional(behavior / name, stages.read_jsonl)
        if annotations is not None:
            rows.extend(_tag_rows(annotations, level))
    if rows:
        tables["behavior_tags"] = _with_meta(pd.DataFrame(rows), meta)

    phylo = root / "phylo"
    bins = _read_optional(phylo / stages.BINS_FILE, _json)
    if bins is not None:
        tables["novelty_bins"] = _with_meta(pd.DataFrame([bins["bins"]]), meta)
    for table, name in (
        ("depth_curves", stages.DEPTH_FILE),
        ("phylo_density", stages.DENSITY_FILE),
        ("phylo_degrees", stages.DEGREES_FILE),
    ):
        frame = _read_optional(phylo / name, pd.read_csv)
        if frame is not None:
            tables[table] = _with_meta(frame, meta)
    hub_report = _read_optional(phylo / stages.HUBS_FILE, _json)
    if hub_report is not None:
        tables["phylo_hubs"] = _with_meta(pd.DataFrame([{
            "n_hubs": len(hub_report["nodes"]),
            "hubs": ";".join(hub_report["nodes"]),
            "mean_in": hub_report["mean_in"],
            "mean_out": hub_report["mean_out"],
        }]), meta)

    complexity = _read_optional(root / "text" / stages.COMPLEXITY_FILE, pd.read_csv)
    if complexity is not None:
        tables["complexity"] = _with_meta(complexity, meta)
        tables["complexity_over_time"] = _with_meta(complexity_over_time(complexity), meta)
        tables["complexity_runs"] = _with_meta(pd.DataFrame([run_composite(complexity)]), meta)
    return tables


REPORT_TABLES = (
    "conditions", "behavior_tags", "novelty_bins", "depth_curves", "complexity",
    "complexity_over_time", "complexity_runs",
    "action_counts", "phylo_density", "phylo_degrees", "phylo_hubs",
)


def write_table(frame: pd.DataFrame, path: Path, fmt: str) -> None:
    if fmt == "csv":
        frame.to_csv(path, index=False)
    else:
        frame.to_json(path, orient="records", lines=True, double_precision=15, force_ascii=False)
        if frame.empty:
            path.write_text("", encoding="utf-8")


def cmd_report(analysis_dirs: Iterable[str], fmt: str = "csv", out: str = "report") -> Dict[str, Path]:
    """Aggregate analysed runs into one file per report table."""
    if fmt not in FORMATS:
        raise UsageError(f"Unknown format '{fmt}', expected one of {FORMATS}")
    run_dirs: List[Path] = []
    for folder in analysis_dirs:
        run_dirs.extend(find_runs(folder))
    if not run_dirs:
        raise UsageError("report needs at least one analysed run")
    runs = [load_run(d) for d in sorted(set(run_dirs))]

    versions = sorted({r.header.schema_version for r in runs})
    if len(versions) > 1:
        raise SchemaMismatch(f"Runs mix schema versions {', '.join(versions)}")

    collected: Dict[str, List[pd.DataFrame]] = {name: [] for name in REPORT_TABLES}
    for run in runs:
        for name, frame in run_tables(run).items():
            collected[name].append(frame)

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    for name in REPORT_TABLES:
        if name == "conditions":
            frame = conditions_table(runs)
        elif collected[name]:
            frame = pd.concat(collected[name], ignore_index=True)
        else:
            frame = pd.DataFrame(columns=META_COLUMNS)
        path = out_dir / f"{name}.{fmt}"
        write_table(frame, path, fmt)
        written[name] = path
    print(f"Report for {len(runs)} runs written to {out_dir}")
    return written


__all__ = [
    'cmd_run', 'cmd_analyze', 'cmd_report', 'exit_code', 'make_policy', 'pareto_front',
    'EXIT_OK', 'EXIT_ERROR', 'EXIT_USAGE', 'EXIT_CONFIG', 'EXIT_DEPENDENCY', 'EXIT_JUDGE',
]
