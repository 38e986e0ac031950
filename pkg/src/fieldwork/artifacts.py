"""
Artifact-level judging: novelty scores, ancestry links and role categories.
"""

import json
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.errors import JudgeFailure
from src.fieldwork.annotate import ask_judge
from src.fieldwork.judge import Judge
from src.fieldwork.prompts import render
from src.llm.json_extract import extract_json_object
from src.models import StepRecord

logger = logging.getLogger(__name__)

NOVELTY_SAMPLES = 5
MAX_NOVELTY = 5.0
CATEGORIES = (1, 2, 3, 4, -1)
UNCLASSIFIED = -1
HIGH_NOVELTY = 4.0


@dataclass
class ArtifactText:
    id: str
    name: str
    content: str
    created_at: int = 0
    score: Optional[float] = None


@dataclass
class NoveltyBatch:
    prior: List[ArtifactText]
    fresh: List[ArtifactText]
    samples: int = NOVELTY_SAMPLES


@dataclass
class ArtifactEvent:
    """A create or modify action as the acting agent saw it."""

    t: int
    op: str
    artifact_id: str
    name: str
    content: str
    agent_id: str
    thoughts: str = ""
    observation: List[str] = field(default_factory=list)
    memory: str = ""


def artifact_events(records: Iterable[StepRecord]) -> List[ArtifactEvent]:
    """Creation and modification events in log order, each with the agent's context."""
    memory: Dict[str, str] = {}
    found = []
    for record in sorted(records, key=lambda r: (r.t, r.agent_id)):
        for effect in record.events:
            if effect.get("type") == "artifact" and effect.get("op") in ("create", "modify"):
                inbox = [f"{m.sender}: {m.text}" for m in record.observation.inbox]
                found.append(ArtifactEvent(
                    t=record.t,
                    op=effect["op"],
                    artifact_id=effect["artifact"],
                    name=effect["name"],
                    content=effect.get("payload", ""),
                    agent_id=record.agent_id,
                    thoughts=record.thoughts,
                    observation=record.observation.cells + inbox,
                    memory=memory.get(record.agent_id, ""),
                ))
        memory[record.agent_id] = record.memory_after
    return found


def window_priors(prior: Sequence[ArtifactText], recent: Optional[int]) -> List[ArtifactText]:
    """Most recent ``recent`` priors plus every prior scored at least 4; all priors when ``recent`` is None."""
    if recent is None:
        return list(prior)
    ordered = sorted(prior, key=lambda a: (a.created_at, a.id))
    keep = {a.id for a in ordered[-recent:]} if recent > 0 else set()
    keep.update(a.id for a in ordered if a.score is not None and a.score >= HIGH_NOVELTY)
    return [a for a in ordered if a.id in keep]


def _as_score(value) -> Optional[float]:
    try:
        score = float(value)
    except (TypeError, ValueError):
        return None
    if math.isnan(score):
        return None
    return min(MAX_NOVELTY, max(0.0, score))


def score_novelty(
    batch: NoveltyBatch,
    judge: Judge,
    rng: Optional[np.random.Generator] = None,
    prior_window: Optional[int] = None,
) -> Dict[str, float]:
    """
    Mean novelty per fresh artifact over ``batch.samples`` judge calls.

    Fresh artifacts are only ever compared with the priors. Each sample
    shows priors and fresh artifacts in an order drawn from ``rng``. A
    sample that lacks an id is skipped for that id.
    """
    if not batch.fresh:
        raise ValueError("score_novelty needs at least one fresh artifact")
    rng = rng if rng is not None else np.random.default_rng(0)
    prior = window_priors(batch.prior, prior_window)
    samples: Dict[str, List[float]] = defaultdict(list)
    for sample in range(batch.samples):
        shown_prior = [prior[i] for i in rng.permutation(len(prior))]
        shown_fresh = [batch.fresh[i] for i in rng.permutation(len(batch.fresh))]
        system, user = render(
            "novelty",
            previous_artifacts=json.dumps(
                [{"id": a.id, "name": a.name, "content": a.content, "score": a.score} for a in shown_prior],
                ensure_ascii=False,
            ),
            new_artifacts=json.dumps(
                [{"id": a.id, "name": a.name, "content": a.content} for a in shown_fresh], ensure_ascii=False
            ),
        )
        try:
            reply = extract_json_object(judge.complete(system, user, "novelty"))
        except JudgeFailure as e:
            logger.warning(f"Novelty sample {sample + 1} failed: {e}")
            continue
        if reply is None:
            logger.warning(f"Novelty sample {sample + 1} holds no JSON object")
            continue
        for artifact in batch.fresh:
            score = _as_score(reply.get(artifact.id))
            if score is None:
                logger.warning(f"Novelty sample {sample + 1} has no score for {artifact.id}")
                continue
            samples[artifact.id].append(score)

    missing = [a.id for a in batch.fresh if not samples[a.id]]
    if missing:
        raise JudgeFailure(f"No novelty score in any sample for {', '.join(missing)}")
    return {a.id: float(np.mean(samples[a.id])) for a in batch.fresh}


def score_run_novelty(
    events: Sequence[ArtifactEvent],
    judge: Judge,
    rng: Optional[np.random.Generator] = None,
    samples: int = NOVELTY_SAMPLES,
    prior_window: Optional[int] = None,
) -> Dict[str, float]:
    """Score every created artifact against all artifacts created at earlier timesteps."""
    by_t: Dict[int, List[ArtifactText]] = defaultdict(list)
    for event in events:
        if event.op == "create":
            by_t[event.t].append(ArtifactText(event.artifact_id, event.name, event.content, event.t))
    prior: List[ArtifactText] = []
    scores: Dict[str, float] = {}
    for t in sorted(by_t):
        fresh = by_t[t]
        scores.update(score_novelty(NoveltyBatch(list(prior), fresh, samples), judge, rng, prior_window))
        for artifact in fresh:
            artifact.score = scores[artifact.id]
        prior.extend(fresh)
    return scores


def infer_ancestors(
    event: ArtifactEvent,
    candidates: Sequence[ArtifactText],
    judge: Judge,
    retries: int = 2,
) -> Dict[str, float]:
    """Candidate id -> link confidence for one create or modify event."""
    candidates = [c for c in candidates if c.id != event.artifact_id]
    if not candidates:
        return {}
    allowed = {c.id for c in candidates}
    system, user = render(
        "ancestry",
        artifact_id=event.artifact_id,
        artifact_name=event.name,
        artifact_content=event.content,
        agent_thoughts=event.thoughts or "none",
        agent_observations="\n".join(event.observation) or "none",
        agent_memory=event.memory or "none",
        artifact_candidates=json.dumps(
            {c.id: {"name": c.name, "content": c.content} for c in candidates}, ensure_ascii=False
        ),
    )

    def build(reply: Dict) -> Dict[str, float]:
        links = {}
        for key, value in reply.items():
            if key not in allowed:
                logger.warning(f"Discarding ancestor {key!r} of {event.artifact_id}: not a candidate")
                continue
            try:
                confidence = float(value)
            except (TypeError, ValueError):
                logger.warning(f"Discarding ancestor {key} of {event.artifact_id}: confidence {value!r}")
                continue
            links[key] = min(1.0, max(0.0, confidence))
        return links

    return ask_judge(judge, "ancestry", system, user, build, retries)


def _category(reply: Dict) -> int:
    value = reply.get("category")
    try:
        category = int(str(value).strip())
    except (TypeError, ValueError):
        raise ValueError(f"category {value!r} is not a number")
    if category not in CATEGORIES:
        raise ValueError(f"category {category} outside {CATEGORIES}")
    return category


def classify_artifact(name: str, content: str, judge: Judge) -> int:
    """Role category 1-4, or -1 when the judge gives no conforming answer after one retry."""
    system, user = render("classification", artifact_name=name, artifact_content=content)
    try:
        return ask_judge(judge, "classification", system, user, _category, retries=1)
    except JudgeFailure as e:
        logger.warning(f"Classification of {name!r} fell back to {UNCLASSIFIED}: {e}")
        return UNCLASSIFIED
