from collections import defaultdict
from typing import Dict, Iterable, Mapping

from src.errors import ScoreRangeError

BINS = ("zero", "low", "medium", "high")
LOW_MAX = 3.0
MEDIUM_MAX = 4.2


def novelty_bin(score: float) -> str:
    if not 0.0 <= score <= 5.0:
        raise ScoreRangeError(f"Novelty score {score} outside [0, 5]")
    if score == 0:
        return "zero"
    if score <= LOW_MAX:
        return "low"
    if score <= MEDIUM_MAX:
        return "medium"
    return "high"


def novelty_bins(scores: Iterable[float]) -> Dict[str, float]:
    """Fraction of scores in each bin; bins are closed on the right."""
    counts = dict.fromkeys(BINS, 0)
    total = 0
    for score in scores:
        counts[novelty_bin(score)] += 1
        total += 1
    if total == 0:
        return {name: 0.0 for name in BINS}
    return {name: counts[name] / total for name in BINS}


def novelty_over_time(scores: Mapping[str, float], created_at: Mapping[str, int]) -> Dict[int, float]:
    """Mean novelty of the artifacts created at each timestep."""
    by_t = defaultdict(list)
    for artifact_id, score in scores.items():
        if artifact_id in created_at:
            by_t[created_at[artifact_id]].append(score)
    return {t: sum(v) / len(v) for t, v in sorted(by_t.items())}
