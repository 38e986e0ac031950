"""
Mutable world state. The engine is its only writer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional

from src.errors import NoSuchAgent
from src.world.grid import GridConfig, Position, distance

if TYPE_CHECKING:
    from src.acts.artifact import Artifact
    from src.beings.agent import AgentState
    from src.world.food import FoodItem


@dataclass
class World:
    grid: GridConfig
    t: int = 0
    food: Dict[Position, "FoodItem"] = field(default_factory=dict)
    agents: Dict[str, "AgentState"] = field(default_factory=dict)
    artifacts: Dict[str, "Artifact"] = field(default_factory=dict)
    cluster_centers: List[Position] = field(default_factory=list)
    _occupancy: Dict[Position, str] = field(default_factory=dict, repr=False)
    _names: Dict[str, str] = field(default_factory=dict, repr=False)
    _agent_seq: int = 0
    _artifact_seq: int = 0

    # agents

    def get_agent(self, agent_id: str) -> "AgentState":
        agent = self.agents.get(agent_id)
        if agent is None or not agent.alive:
            raise NoSuchAgent(agent_id)
        return agent

    def agent_at(self, pos: Position) -> Optional["AgentState"]:
        agent_id = self._occupancy.get(pos)
        return self.agents.get(agent_id) if agent_id else None

    def agent_by_name(self, name: str) -> Optional["AgentState"]:
        agent_id = self._names.get(name)
        return self.agents.get(agent_id) if agent_id else None

    def place_agent(self, agent: "AgentState") -> None:
        if agent.pos in self._occupancy:
            raise ValueError(f"Cell {tuple(agent.pos)} is already occupied")
        self.agents[agent.id] = agent
        self._occupancy[agent.pos] = agent.id
        self._names[agent.name] = agent.id

    def move_agent(self, agent: "AgentState", pos: Position) -> None:
        del self._occupancy[agent.pos]
        agent.pos = pos
        self._occupancy[pos] = agent.id

    def remove_agent(self, agent_id: str) -> "AgentState":
        agent = self.agents.pop(agent_id)
        self._occupancy.pop(agent.pos, None)
        if self._names.get(agent.name) == agent_id:
            del self._names[agent.name]
        return agent

    def neighbors_of(self, agent: "AgentState", radius: Optional[int] = None) -> List["AgentState"]:
        """Other living agents within the perception radius, ordered by id."""
        r = self.grid.perception_radius if radius is None else radius
        return [
            other
            for other_id, other in sorted(self.agents.items())
            if other_id != agent.id and distance(agent.pos, other.pos, self.grid) <= r
        ]

    def next_agent_id(self) -> str:
        self._agent_seq += 1
        return f"ag-{self._agent_seq:05d}"

    @property
    def agents_ever(self) -> int:
        return self._agent_seq

    # artifacts

    def next_artifact_id(self) -> str:
        self._artifact_seq += 1
        return f"art-{self._artifact_seq:05d}"

    @property
    def artifacts_ever(self) -> int:
        return self._artifact_seq

    def artifacts_at(self, pos: Position) -> List["Artifact"]:
        return [a for _, a in sorted(self.artifacts.items()) if a.holder is None and a.pos == pos]

    def occupied_cells(self) -> List[Position]:
        return list(self._occupancy)
