"""
Condition summaries across runs and per-run action counts.
"""

from collections import Counter
from typing import Iterable, List, Sequence

import pandas as pd

from src.acts.requests import ActionKind
from src.models import RunSummary, StepRecord

METRICS = ("longevity", "total_artifacts", "artifacts_per_agent", "mean_population")


def runs_frame(summaries: Sequence[RunSummary]) -> pd.DataFrame:
    return pd.DataFrame([s.model_dump() for s in summaries])


def summarize(summaries: Sequence[RunSummary]) -> pd.DataFrame:
    """
    One row per preset with mean, first and third quartile of each metric.

    Columns are ``<metric>_mean``, ``<metric>_q1`` and ``<metric>_q3`` plus
    ``n_runs``; quartiles use linear interpolation.
    """
    if not summaries:
        raise ValueError("summarize needs at least one run")
    frame = runs_frame(summaries)
    rows = []
    for preset, group in frame.groupby("preset", sort=True):
        row = {"preset": preset, "n_runs": len(group), "schema_version": group["schema_version"].iloc[0]}
        for metric in METRICS:
            values = group[metric].astype(float)
            row[f"{metric}_mean"] = values.mean()
            row[f"{metric}_q1"] = values.quantile(0.25)
            row[f"{metric}_q3"] = values.quantile(0.75)
        rows.append(row)
    return pd.DataFrame(rows)


def action_counts(records: Iterable[StepRecord]) -> pd.DataFrame:
    """
    Attempted actions of each kind per agent.

    One row per agent and kind, with columns agent_id, kind, count, applied.
    Move is kept as its own kind so callers can report it separately.
    """
    attempted: Counter = Counter()
    applied: Counter = Counter()
    agents = set()
    for record in records:
        key = (record.agent_id, record.action.kind)
        agents.add(record.agent_id)
        attempted[key] += 1
        if record.action.status == "applied":
            applied[key] += 1
    rows: List[dict] = []
    for agent_id in sorted(agents):
        for kind in ActionKind:
            key = (agent_id, kind.value)
            rows.append({"agent_id": agent_id, "kind": kind.value,
                         "count": attempted.get(key, 0), "applied": applied.get(key, 0)})
    return pd.DataFrame(rows, columns=["agent_id", "kind", "count", "applied"])


def action_means(counts: pd.DataFrame) -> pd.DataFrame:
    """Mean attempts per agent for each action kind."""
    if counts.empty:
        return pd.DataFrame(columns=["kind", "mean_per_agent"])
    means = counts.groupby("kind", sort=True)["count"].mean().reset_index()
    return means.rename(columns={"count": "mean_per_agent"})
