"""
Interaction events extracted from a step log.
"""

from collections import defaultdict
from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Set

from src.models import StepRecord


class InteractionKind(str, Enum):
    COPRESENCE = "copresence"
    MESSAGE = "message"
    ENERGY_GIFT = "energy_gift"
    ENERGY_THEFT = "energy_theft"
    PARENT_LINK = "parent_link"
    ARTIFACT_EXCHANGE = "artifact_exchange"


WEIGHTS: Dict[InteractionKind, float] = {
    InteractionKind.COPRESENCE: 0.1,
    InteractionKind.MESSAGE: 0.5,
    InteractionKind.ENERGY_GIFT: 1.0,
    InteractionKind.ENERGY_THEFT: -1.0,
    InteractionKind.PARENT_LINK: 10.0,
    InteractionKind.ARTIFACT_EXCHANGE: 5.0,
}


class InteractionEvent(NamedTuple):
    kind: InteractionKind
    src: str
    dst: str
    t: int

    @property
    def weight(self) -> float:
        return WEIGHTS[self.kind]


def _copresence(by_step: Dict[int, Dict[str, Set[str]]]) -> List[InteractionEvent]:
    events = []
    for t in sorted(by_step):
        seen = by_step[t]
        for a in sorted(seen):
            for b in sorted(seen[a]):
                if a < b and a in seen.get(b, ()):
                    events.append(InteractionEvent(InteractionKind.COPRESENCE, a, b, t))
    return events


def extract_events(records: Iterable[StepRecord]) -> List[InteractionEvent]:
    """
    Pairwise interactions in a run.

    Co-presence counts once per unordered pair per step, and only when both
    agents saw each other. Only explicit give_artifact counts as an artifact
    exchange; picking up someone else's dropped artifact does not.
    """
    events: List[InteractionEvent] = []
    visible: Dict[int, Dict[str, Set[str]]] = defaultdict(dict)
    for record in records:
        visible[record.t][record.agent_id] = set(record.observation.visible_agents)
        for msg in record.observation.inbox:
            if msg.sender_id != record.agent_id:
                events.append(InteractionEvent(InteractionKind.MESSAGE, msg.sender_id, record.agent_id, record.t - 1))
        for effect in record.events:
            kind = effect.get("type")
            if kind == "transfer":
                if effect["kind"] == "gift":
                    events.append(InteractionEvent(InteractionKind.ENERGY_GIFT, effect["src"], effect["dst"], record.t))
                else:
                    events.append(InteractionEvent(InteractionKind.ENERGY_THEFT, effect["dst"], effect["src"], record.t))
            elif kind == "birth":
                events.append(InteractionEvent(InteractionKind.PARENT_LINK, effect["parent"], effect["child"], record.t))
            elif kind == "artifact" and effect.get("op") == "give":
                events.append(
                    InteractionEvent(InteractionKind.ARTIFACT_EXCHANGE, effect["agent"], effect["target"], record.t)
                )
    events.extend(_copresence(visible))
    return [e for e in events if e.src != e.dst]
