"""
Artifacts: named, persistent text objects lying on a cell or held by an agent.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from src.world.grid import Position
from src.world.state import World

logger = logging.getLogger(__name__)

INFINITE = -1
PAYLOAD_CAP = 500


def payload_hash(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class Artifact:
    id: str
    name: str
    payload: str
    lifespan: int
    creator: str
    created_at: int
    pos: Optional[Position] = None
    holder: Optional[str] = None
    kind: str = "text"
    modified_at: List[int] = field(default_factory=list)

    def __post_init__(self):
        if (self.pos is None) == (self.holder is None):
            raise ValueError(f"Artifact {self.name} must be either on a cell or held, not both or neither")

    @property
    def infinite(self) -> bool:
        return self.lifespan == INFINITE


def age_artifacts(world: World) -> List[Artifact]:
    """Decrement finite lifespans; remove and return the artifacts that expire."""
    expired = []
    for name in sorted(world.artifacts):
        artifact = world.artifacts[name]
        if artifact.infinite:
            continue
        artifact.lifespan -= 1
        if artifact.lifespan <= 0:
            expired.append(remove_artifact(world, name))
    return expired


def remove_artifact(world: World, name: str) -> Artifact:
    artifact = world.artifacts.pop(name)
    if artifact.holder is not None:
        holder = world.agents.get(artifact.holder)
        if holder is not None and name in holder.inventory:
            holder.inventory.remove(name)
    return artifact
