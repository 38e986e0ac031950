"""
Action vocabulary, requests and outcomes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class ActionKind(str, Enum):
    MOVE = "move"
    GIVE_ENERGY = "give_energy"
    TAKE_ENERGY = "take_energy"
    REPRODUCE = "reproduce"
    CREATE_ARTIFACT = "create_artifact"
    PICKUP_ARTIFACT = "pickup_artifact"
    DROP_ARTIFACT = "drop_artifact"
    GIVE_ARTIFACT = "give_artifact"
    MODIFY_ARTIFACT = "modify_artifact"
    DESTROY_ARTIFACT = "destroy_artifact"


ARTIFACT_OPS = (
    ActionKind.CREATE_ARTIFACT,
    ActionKind.PICKUP_ARTIFACT,
    ActionKind.DROP_ARTIFACT,
    ActionKind.GIVE_ARTIFACT,
    ActionKind.MODIFY_ARTIFACT,
    ActionKind.DESTROY_ARTIFACT,
)

# Keys the agents see in their prompt. Everything else uses the canonical name.
PROMPT_KEYS: Dict[ActionKind, str] = {
    ActionKind.GIVE_ENERGY: "give",
    ActionKind.TAKE_ENERGY: "take",
}

ALIASES: Dict[str, ActionKind] = {kind.value: kind for kind in ActionKind}
ALIASES.update({key: kind for kind, key in PROMPT_KEYS.items()})

DIRECTIONS: Dict[str, tuple] = {
    "right": (1, 0),
    "left": (-1, 0),
    "up": (0, 1),
    "down": (0, -1),
    "stay": (0, 0),
}

APPLIED = "applied"
REJECTED = "rejected"


class RejectReason(str, Enum):
    NOT_AFFORDED = "NotAfforded"
    DUPLICATE_NAME = "DuplicateName"
    PAYLOAD_TOO_LONG = "PayloadTooLong"
    BAD_AMOUNT = "BadAmount"
    NO_SUCH_TARGET = "NoSuchTarget"
    BAD_PARAMS = "BadParams"
    OCCUPIED = "Occupied"
    NO_SPACE = "NoSpace"


def prompt_key(kind: ActionKind) -> str:
    return PROMPT_KEYS.get(kind, kind.value)


def parse_kind(name: str) -> Optional[ActionKind]:
    """Canonical kind for a canonical or prompt-side action name."""
    if not isinstance(name, str):
        return None
    return ALIASES.get(name.strip().lower())


@dataclass
class ActionRequest:
    agent: str
    kind: ActionKind
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ActionOutcome:
    request: ActionRequest
    status: str
    reason: Optional[RejectReason] = None
    effects: List[Dict[str, Any]] = field(default_factory=list)
    seq: int = -1

    @property
    def applied(self) -> bool:
        return self.status == APPLIED

    @classmethod
    def rejected(cls, request: ActionRequest, reason: RejectReason, seq: int = -1) -> "ActionOutcome":
        return cls(request=request, status=REJECTED, reason=reason, effects=[], seq=seq)
