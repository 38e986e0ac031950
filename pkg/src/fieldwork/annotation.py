"""
Annotation schema and validation of judge replies against it.

Items failing validation are dropped, never repaired; every drop is logged
and recorded on the annotation's ``dropped`` list.
"""

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from src.fieldwork.logtext import SourceText
from src.fieldwork.tags import canonical_tag, vocabulary

logger = logging.getLogger(__name__)

GROUP_MIN_CONFIDENCE = 3
NONE_KEYWORD = "none"


class Reference(BaseModel):
    step: int
    snippet: str


class EventItem(BaseModel):
    event: str
    timesteps: List[int]
    confidence: float = Field(ge=0, le=10)
    description: str = ""
    reference: List[Reference] = Field(default_factory=list)
    agents: List[str] = Field(default_factory=list)

    def key(self) -> tuple:
        return ("event", self.event, tuple(sorted(set(self.timesteps))))


class BehaviorItem(BaseModel):
    behavior: str
    time_span: List[int]
    confidence: float = Field(ge=0, le=10)
    description: str = ""
    reference: List[Reference] = Field(default_factory=list)
    agents: List[str] = Field(default_factory=list)

    @field_validator("time_span")
    @classmethod
    def check_span(cls, v):
        if len(v) != 2:
            raise ValueError("time_span must be [start, end]")
        if v[0] > v[1]:
            raise ValueError("time_span start is after its end")
        return v

    def key(self) -> tuple:
        return ("behavior", self.behavior, tuple(self.time_span))


class Emergence(BaseModel):
    keywords: List[str] = Field(default_factory=lambda: [NONE_KEYWORD])
    comment: str = NONE_KEYWORD


class Annotation(BaseModel):
    subject: str = ""
    level: str = "agent"
    members: List[str] = Field(default_factory=list)
    events: List[EventItem] = Field(default_factory=list)
    behaviors: List[BehaviorItem] = Field(default_factory=list)
    comment: str = ""
    emergence: Emergence = Field(default_factory=Emergence)
    dropped: List[Dict[str, Any]] = Field(default_factory=list)
    judge: Optional[str] = None


def _drop(annotation: Annotation, section: str, item: Any, reason: str) -> None:
    logger.warning(f"Dropping {section[:-1]} from annotation of {annotation.subject or 'subject'}: {reason}")
    annotation.dropped.append({"section": section, "item": item, "reason": reason})


def _check_item(item, section: str, level: str, source: SourceText) -> Optional[str]:
    """Reason the validated item is unusable, or None."""
    tags = vocabulary(level, section)
    field = "event" if section == "events" else "behavior"
    tag = canonical_tag(getattr(item, field), tags)
    if tag is None:
        return f"tag '{getattr(item, field)}' is not in the {level} {section} vocabulary"
    setattr(item, field, tag)
    if section == "events" and not item.timesteps:
        return "event without timesteps"
    if not item.reference:
        return "no references"
    for ref in item.reference:
        if not source.contains(ref.snippet):
            return f"snippet {ref.snippet!r} does not occur in the log"
    if level == "group":
        if item.confidence < GROUP_MIN_CONFIDENCE:
            return f"confidence {item.confidence:g} below {GROUP_MIN_CONFIDENCE}"
        if section == "behaviors" and len({ref.step for ref in item.reference}) < 2:
            return "group behavior needs references from two distinct timesteps"
    return None


def validate_item(annotation: Annotation, section: str, raw: Any, source: SourceText) -> Optional[BaseModel]:
    model = EventItem if section == "events" else BehaviorItem
    try:
        item = model.model_validate(raw)
    except ValidationError as e:
        _drop(annotation, section, raw, f"schema: {e.errors()[0]['msg']}")
        return None
    reason = _check_item(item, section, annotation.level, source)
    if reason:
        _drop(annotation, section, raw, reason)
        return None
    return item


def _keywords(raw: Any, level: str) -> List[str]:
    tags = vocabulary(level, "emergence")
    keywords = []
    for word in raw if isinstance(raw, list) else []:
        tag = canonical_tag(word, tags)
        if tag is None:
            logger.warning(f"Ignoring emergence keyword outside the {level} vocabulary: {word!r}")
            continue
        tag = NONE_KEYWORD if tag == "None" else tag
        if tag not in keywords:
            keywords.append(tag)
    if len(keywords) > 1 and NONE_KEYWORD in keywords:
        keywords.remove(NONE_KEYWORD)
    return keywords or [NONE_KEYWORD]


def build_annotation(
    reply: Dict[str, Any],
    source: SourceText,
    level: str = "agent",
    subject: str = "",
    members: Optional[List[str]] = None,
) -> Annotation:
    """
    Annotation from a parsed judge reply.

    Raises ValueError when the reply is not shaped like an annotation at
    all, which callers treat as a parse failure worth retrying.
    """
    if not isinstance(reply, dict):
        raise ValueError("Annotation reply must be a JSON object")
    for section in ("events", "behaviors"):
        if not isinstance(reply.get(section, []), list):
            raise ValueError(f"'{section}' must be a list")

    annotation = Annotation(subject=subject, level=level, members=list(members or []))
    for section in ("events", "behaviors"):
        for raw in reply.get(section) or []:
            item = validate_item(annotation, section, raw, source)
            if item is not None:
                getattr(annotation, section).append(item)

    annotation.comment = str(reply.get("comment") or "")
    emergence = reply.get("emergence")
    if isinstance(emergence, dict):
        annotation.emergence = Emergence(
            keywords=_keywords(emergence.get("keywords"), level),
            comment=str(emergence.get("comment") or NONE_KEYWORD),
        )
    return annotation


def annotation_payload(annotation: Annotation) -> Dict[str, Any]:
    """The reply-shaped view of an annotation, as shown to an auditor."""
    return annotation.model_dump(mode="json", include={"events", "behaviors", "comment"})
