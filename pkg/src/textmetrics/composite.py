"""
Per-artifact complexity table and the composite score.
"""

import logging
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
import pandas as pd

from src.errors import EmptyText
from src.textmetrics.compression import compressed_size
from src.textmetrics.idf import IdfTable, lexical_sophistication
from src.textmetrics.surprisal import DEFAULT_WINDOW, LogprobProvider, lm_surprisal
from src.textmetrics.syntax import DependencyParse, syntactic_depth
from src.textmetrics.tokenize import tokenize

logger = logging.getLogger(__name__)

METRIC_COLUMNS = ("compression", "lexical", "surprisal", "syntax")


def score_text(
    text: str,
    idf: Optional[IdfTable] = None,
    provider: Optional[LogprobProvider] = None,
    parse: Optional[DependencyParse] = None,
    window: int = DEFAULT_WINDOW,
) -> Dict[str, float]:
    """The four metrics for one text; metrics without inputs come back as NaN."""
    tokens = tokenize(text)
    row = {name: np.nan for name in METRIC_COLUMNS}
    row["compression"] = float(compressed_size(text))
    if idf is not None and tokens:
        row["lexical"] = lexical_sophistication(tokens, idf)
    if provider is not None and len(tokens) >= 2:
        row["surprisal"] = lm_surprisal(tokens, provider, window)
    if parse is not None:
        try:
            row["syntax"] = syntactic_depth(parse)
        except EmptyText:
            pass
    return row


def complexity_table(
    texts: Mapping[str, str],
    idf: Optional[IdfTable] = None,
    provider: Optional[LogprobProvider] = None,
    parses: Optional[Mapping[str, DependencyParse]] = None,
    window: int = DEFAULT_WINDOW,
    created_at: Optional[Mapping[str, int]] = None,
) -> pd.DataFrame:
    parses = parses or {}
    created_at = created_at or {}
    rows = []
    for artifact_id in sorted(texts):
        row = {"artifact": artifact_id, "created_at": created_at.get(artifact_id)}
        row.update(score_text(texts[artifact_id], idf, provider, parses.get(artifact_id), window))
        rows.append(row)
    table = pd.DataFrame(rows, columns=["artifact", "created_at", *METRIC_COLUMNS])
    if not table.empty:
        table["composite"] = composite(table[list(METRIC_COLUMNS)])
    else:
        table["composite"] = pd.Series(dtype=float)
    return table


def composite(metrics: pd.DataFrame) -> pd.Series:
    """
    Sum of min-max normalised metrics, each in [0, 1].

    A metric with zero spread normalises to 0 everywhere. Missing values
    contribute 0, and a metric missing for every artifact drops out.
    """
    lo = metrics.min()
    spread = metrics.max() - lo
    normalised = pd.DataFrame(0.0, index=metrics.index, columns=metrics.columns)
    for column in metrics.columns:
        if spread[column] > 0:
            normalised[column] = ((metrics[column] - lo[column]) / spread[column]).fillna(0.0)
    return normalised.sum(axis=1)


def composite_scores(quadruples: Mapping[str, Tuple[float, float, float, float]]) -> Tuple[Dict[str, float], float]:
    """Composite per artifact plus the mean over the set."""
    if not quadruples:
        raise ValueError("composite needs at least one artifact")
    frame = pd.DataFrame.from_dict(quadruples, orient="index", columns=list(METRIC_COLUMNS))
    scores = composite(frame)
    return {k: float(v) for k, v in scores.items()}, float(scores.mean())


def run_composite(table: pd.DataFrame) -> Dict[str, float]:
    """Artifact count and composite mean of one run's complexity table."""
    if table.empty:
        return {"n_artifacts": 0, "composite_mean": np.nan}
    quadruples = {
        row["artifact"]: tuple(row[name] for name in METRIC_COLUMNS)
        for row in table.to_dict(orient="records")
    }
    _, mean = composite_scores(quadruples)
    return {"n_artifacts": len(quadruples), "composite_mean": mean}


OVER_TIME_STATS = ("min", "mean", "median", "max")


def complexity_over_time(table: pd.DataFrame) -> pd.DataFrame:
    """Min, mean, median and max of every metric and the composite per creation step."""
    values = [*METRIC_COLUMNS, "composite"]
    columns = ["created_at", "n_artifacts"] + [f"{v}_{s}" for v in values for s in OVER_TIME_STATS]
    timed = table.dropna(subset=["created_at"]) if "created_at" in table.columns else table.iloc[0:0]
    if timed.empty:
        return pd.DataFrame(columns=columns)
    timed = timed.astype({"created_at": int})
    grouped = timed.groupby("created_at", sort=True)
    stats = grouped[values].agg(list(OVER_TIME_STATS))
    stats.columns = [f"{v}_{s}" for v, s in stats.columns]
    stats.insert(0, "n_artifacts", grouped.size())
    return stats.reset_index()[columns]
