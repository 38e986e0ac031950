"""
Egocentric observation of the cells around an agent.

Rendering follows the prompt convention: one line per non-empty cell,
``(dx, dy): entry | entry``, where food shows its value, beings their name
and artifacts ``A(<name>)``.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Tuple

from src.world.grid import offsets, wrap
from src.world.state import World

FOOD = "food"
BEING = "being"
ARTIFACT = "artifact"


class CellEntry(NamedTuple):
    kind: str
    label: str
    value: float = 0.0
    ref: str = ""

    def render(self) -> str:
        if self.kind == ARTIFACT:
            return f"A({self.label})"
        return self.label


@dataclass
class CellView:
    rel: Tuple[int, int]
    entries: List[CellEntry] = field(default_factory=list)

    def render(self) -> str:
        return f"({self.rel[0]}, {self.rel[1]}): " + " | ".join(e.render() for e in self.entries)


def format_food_value(value) -> str:
    """Integer food renders bare ("4"), float food keeps its decimal ("10.0")."""
    return str(value)


def observe(agent_id: str, world: World, show_artifacts: bool = True) -> Tuple[List[CellView], str]:
    """Non-empty cells within the perception radius, relative to the agent."""
    agent = world.get_agent(agent_id)
    g = world.grid
    views: List[CellView] = []
    for dx, dy in offsets(g.perception_radius):
        pos = wrap((agent.pos.x + dx, agent.pos.y + dy), g)
        entries: List[CellEntry] = []
        food = world.food.get(pos)
        if food is not None:
            entries.append(CellEntry(FOOD, format_food_value(food.value), value=food.value))
        other = world.agent_at(pos)
        if other is not None and other.id != agent.id:
            entries.append(CellEntry(BEING, other.name, value=other.energy, ref=other.id))
        if show_artifacts:
            for artifact in world.artifacts_at(pos):
                entries.append(CellEntry(ARTIFACT, artifact.name, ref=artifact.id))
        if entries:
            views.append(CellView(rel=(dx, dy), entries=entries))
    return views, render_observation(views)


def render_observation(views: List[CellView]) -> str:
    return "\n".join(v.render() for v in views)
