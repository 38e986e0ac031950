"""
Agent- and group-level behavior annotation with a judge, plus the audit pass.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from src.errors import JudgeFailure
from src.fieldwork.annotation import (
    NONE_KEYWORD,
    Annotation,
    Emergence,
    annotation_payload,
    build_annotation,
    validate_item,
)
from src.fieldwork.judge import Judge
from src.fieldwork.logtext import SourceText, render_agent_log, render_group_log
from src.fieldwork.prompts import render
from src.fieldwork.tags import render_tags, vocabulary
from src.llm.json_extract import extract_json_object
from src.models import StepRecord

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 2
SEGMENT_RECORDS = 1000
SEGMENT_OVERLAP = 100
VERDICTS = ("pass", "fail", "revise")


def ask_judge(judge: Judge, task: str, system: str, user: str, build: Callable[[Dict[str, Any]], Any],
              retries: int = DEFAULT_RETRIES) -> Any:
    """
    Send one prompt pair, retrying on unusable replies.

    ``build`` turns the parsed reply into a result and raises ValueError
    when the reply does not fit; after ``retries`` extra attempts the
    judge is declared failed.
    """
    last_error = "no attempt made"
    for attempt in range(1 + retries):
        try:
            reply = judge.complete(system, user, task)
        except JudgeFailure as e:
            last_error = str(e)
            logger.warning(f"Judge call for {task} failed (attempt {attempt + 1}): {e}")
            continue
        parsed = extract_json_object(reply)
        if parsed is None:
            last_error = "reply holds no JSON object"
            logger.warning(f"Unparseable {task} reply (attempt {attempt + 1}): {reply[:120]!r}")
            continue
        try:
            return build(parsed)
        except (ValueError, TypeError, KeyError) as e:
            last_error = str(e)
            logger.warning(f"Malformed {task} reply (attempt {attempt + 1}): {e}")
    raise JudgeFailure(f"Judge gave no usable {task} reply after {1 + retries} attempts: {last_error}")


def _tag_block(level: str) -> Dict[str, str]:
    return {
        "event_tags": render_tags(vocabulary(level, "events")),
        "behavioral_tags": render_tags(vocabulary(level, "behaviors")),
        "emergent_tags": ", ".join(vocabulary(level, "emergence")),
    }


def _agent_name(records: Sequence[StepRecord]) -> str:
    return records[-1].agent_name


def annotate_agent(records: Sequence[StepRecord], judge: Judge, retries: int = DEFAULT_RETRIES) -> Annotation:
    if not records:
        raise ValueError("annotate_agent needs a non-empty agent log")
    records = sorted(records, key=lambda r: r.t)
    rendered = render_agent_log(records)
    source = SourceText(rendered, records)
    system, user = render(
        "agent_annotation",
        agent_name=_agent_name(records),
        agent_summary=rendered,
        **_tag_block("agent"),
    )
    subject = records[0].agent_id
    annotation = ask_judge(
        judge, "agent_annotation", system, user,
        lambda reply: build_annotation(reply, source, "agent", subject, [subject]),
        retries,
    )
    annotation.judge = judge.identity
    return annotation


def _group_context(members: Sequence[str], records: Sequence[StepRecord]) -> Dict[str, str]:
    names = {}
    for record in records:
        names[record.agent_id] = record.agent_name
    return {
        "community_tags": ", ".join(members),
        "agent_names": "\n".join(f"{m}:{names.get(m, m)}" for m in members),
    }


def _audit_prompts(annotation: Annotation, records: Sequence[StepRecord]) -> tuple:
    level = annotation.level
    tags = {
        "event_tags": render_tags(vocabulary(level, "events")),
        "behavior_tags": render_tags(vocabulary(level, "behaviors")),
        "annotations": json.dumps(annotation_payload(annotation), ensure_ascii=False),
    }
    if level == "agent":
        rendered = render_agent_log(records)
        prompts = render("agent_audit", agent_name=_agent_name(records), agent_logs=rendered, **tags)
    else:
        rendered = render_group_log(records)
        prompts = render("group_audit", community_data=rendered, **_group_context(annotation.members, records), **tags)
    return rendered, prompts


def _revised(item, fix: Dict[str, Any], section: str) -> Dict[str, Any]:
    revised = item.model_dump(mode="json")
    field = "event" if section == "events" else "behavior"
    if fix.get(field):
        revised[field] = fix[field]
    if section == "events" and isinstance(fix.get("timesteps"), list):
        steps = [t for t in fix["timesteps"] if t is not None]
        if steps:
            revised["timesteps"] = steps
    if section == "behaviors" and isinstance(fix.get("time_span"), list) and len(fix["time_span"]) == 2:
        revised["time_span"] = [new if new is not None else old for new, old in zip(fix["time_span"], revised["time_span"])]
    if isinstance(fix.get("description"), str):
        revised["description"] = fix["description"]
    if isinstance(fix.get("reference"), list):
        revised["reference"] = fix["reference"]
    if isinstance(fix.get("confidence"), (int, float)):
        revised["confidence"] = fix["confidence"]
    return revised


def apply_verdicts(annotation: Annotation, verdicts: Dict[str, Any], source: SourceText) -> Annotation:
    """New annotation with pass/fail/revise verdicts applied; unusable verdicts are ignored."""
    audited = annotation.model_copy(deep=True)
    for section in ("events", "behaviors"):
        items = getattr(annotation, section)
        decided: Dict[int, Any] = {}
        for verdict in verdicts.get(f"{section}_audit") or []:
            index = verdict.get("index") if isinstance(verdict, dict) else None
            if not isinstance(index, int) or not 0 <= index < len(items):
                logger.warning(f"Ignoring audit verdict for {section} index {index!r} of {annotation.subject}")
                continue
            kind = verdict.get("verdict")
            if kind not in VERDICTS:
                logger.warning(f"Ignoring unknown audit verdict {kind!r} for {section}[{index}]")
                continue
            if kind == "fail":
                decided[index] = None
            elif kind == "revise":
                fix = verdict.get("proposed_fix")
                if isinstance(fix, dict):
                    decided[index] = validate_item(audited, section, _revised(items[index], fix, section), source)
        kept = []
        for index, item in enumerate(items):
            if index in decided:
                if decided[index] is not None:
                    kept.append(decided[index])
            else:
                kept.append(item.model_copy(deep=True))
        setattr(audited, section, kept)
    return audited


def audit(annotation: Annotation, records: Sequence[StepRecord], judge: Judge,
          retries: int = DEFAULT_RETRIES) -> Annotation:
    if not annotation.events and not annotation.behaviors:
        return annotation.model_copy(deep=True)
    records = sorted(records, key=lambda r: (r.t, r.agent_id))
    rendered, (system, user) = _audit_prompts(annotation, records)
    source = SourceText(rendered, records)
    task = f"{annotation.level}_audit"

    def build(reply: Dict[str, Any]) -> Dict[str, Any]:
        for key in ("events_audit", "behaviors_audit"):
            if not isinstance(reply.get(key, []), list):
                raise ValueError(f"'{key}' must be a list")
        return reply

    verdicts = ask_judge(judge, task, system, user, build, retries)
    return apply_verdicts(annotation, verdicts, source)


def segments(records: Sequence[StepRecord], size: int = SEGMENT_RECORDS, overlap: int = SEGMENT_OVERLAP) -> List[List[StepRecord]]:
    """Consecutive windows of ``size`` records, each sharing ``overlap`` records with the previous one."""
    if overlap >= size:
        raise ValueError("overlap must be smaller than the segment size")
    records = list(records)
    chunks = []
    start = 0
    while True:
        chunks.append(records[start:start + size])
        if start + size >= len(records):
            return chunks
        start += size - overlap


def merge_annotations(parts: Sequence[Annotation]) -> Annotation:
    """Union of item sets; items with the same tag and timesteps or span keep the highest confidence."""
    first = parts[0]
    merged = Annotation(subject=first.subject, level=first.level, members=list(first.members), judge=first.judge)
    for section in ("events", "behaviors"):
        best: Dict[tuple, Any] = {}
        for part in parts:
            for item in getattr(part, section):
                key = item.key()
                if key not in best or item.confidence > best[key].confidence:
                    best[key] = item.model_copy(deep=True)
        setattr(merged, section, list(best.values()))
    keywords = []
    for part in parts:
        for word in part.emergence.keywords:
            if word not in keywords:
                keywords.append(word)
    if len(keywords) > 1 and NONE_KEYWORD in keywords:
        keywords.remove(NONE_KEYWORD)
    comments = [p.emergence.comment for p in parts if p.emergence.comment != NONE_KEYWORD]
    merged.emergence = Emergence(keywords=keywords or [NONE_KEYWORD], comment=" ".join(comments) or NONE_KEYWORD)
    merged.comment = " ".join(p.comment for p in parts if p.comment)
    merged.dropped = [d for p in parts for d in p.dropped]
    return merged


def annotate_group(
    records: Iterable[StepRecord],
    members: Sequence[str],
    judge: Judge,
    community_id: str = "",
    segment_size: int = SEGMENT_RECORDS,
    overlap: int = SEGMENT_OVERLAP,
    audited: bool = True,
    retries: int = DEFAULT_RETRIES,
) -> Optional[Annotation]:
    """
    Annotate one community's merged log; None for singleton communities.

    Oversized logs are split into overlapping segments that are annotated
    (and audited) separately and then merged.
    """
    members = sorted(set(members))
    if len(members) < 2:
        logger.info(f"Skipping community {community_id or members}: fewer than two members")
        return None
    wanted = set(members)
    records = sorted((r for r in records if r.agent_id in wanted), key=lambda r: (r.t, r.agent_id))
    if not records:
        logger.info(f"Skipping community {community_id}: no logged steps")
        return None

    parts = []
    for chunk in segments(records, segment_size, overlap):
        rendered = render_group_log(chunk)
        source = SourceText(rendered, chunk)
        system, user = render(
            "group_annotation", community_data=rendered, **_group_context(members, chunk), **_tag_block("group")
        )
        part = ask_judge(
            judge, "group_annotation", system, user,
            lambda reply: build_annotation(reply, source, "group", community_id, members),
            retries,
        )
        part.judge = judge.identity
        if audited:
            part = audit(part, chunk, judge, retries)
        parts.append(part)
    return merge_annotations(parts)


def annotate_agents(
    logs: Dict[str, Sequence[StepRecord]],
    judge: Judge,
    workers: int = 4,
    audited: bool = True,
) -> Dict[str, Annotation]:
    """Annotate (and audit) every agent log, with at most ``workers`` judge calls in flight."""

    def one(agent_id: str) -> Annotation:
        annotation = annotate_agent(logs[agent_id], judge)
        return audit(annotation, logs[agent_id], judge) if audited else annotation

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = dict(zip(sorted(logs), pool.map(one, sorted(logs))))
    return results
