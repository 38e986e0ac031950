import os
import sys
from typing import List, Optional

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.acts.artifact import Artifact
from src.acts.rules import ActRules
from src.beings.agent import AgentState
from src.models import ActionRecord, InboxMessage, ObservationRecord, StepRecord
from src.world.grid import GridConfig, Position
from src.world.state import World

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def small_grid(**kwargs) -> GridConfig:
    values = dict(width=11, height=11, perception_radius=2, initial_food=0, food_spawn_rate=0.0, food_decay_prob=0.0)
    values.update(kwargs)
    return GridConfig(**values)


def make_world(*agents: AgentState, grid: Optional[GridConfig] = None) -> World:
    world = World(grid=grid or small_grid())
    for agent in agents:
        world.place_agent(agent)
    world._agent_seq = len(agents)
    return world


def make_agent(agent_id: str, name: str, x: int, y: int, energy: float = 50, time_left: int = 100) -> AgentState:
    return AgentState(id=agent_id, name=name, pos=Position(x, y), energy=energy, time_left=time_left)


def put_artifact(world: World, name: str, pos=None, holder: Optional[str] = None, payload: str = "note") -> Artifact:
    artifact = Artifact(
        id=world.next_artifact_id(), name=name, payload=payload, lifespan=-1,
        creator="ag-00001", created_at=world.t, pos=Position(*pos) if pos is not None else None, holder=holder,
    )
    world.artifacts[name] = artifact
    if holder is not None:
        world.agents[holder].inventory.append(name)
    return artifact


def make_record(
    t: int,
    agent_id: str,
    kind: str = "move",
    params: Optional[dict] = None,
    status: str = "applied",
    name: Optional[str] = None,
    message: str = "",
    memory: str = "",
    events: Optional[List[dict]] = None,
    inbox: Optional[List[InboxMessage]] = None,
    visible: Optional[List[str]] = None,
    energy: float = 50,
    thoughts: str = "",
) -> StepRecord:
    return StepRecord(
        t=t,
        agent_id=agent_id,
        agent_name=name or f"being-{agent_id}",
        action=ActionRecord(kind=kind, params=params or {}, status=status),
        message=message,
        memory_after=memory,
        observation=ObservationRecord(
            visible_agents=visible or [],
            inbox=inbox or [],
            energy=energy,
            time_left=100 - t,
        ),
        events=[dict(e, t=t) for e in (events or [])],
        thoughts=thoughts,
    )


@pytest.fixture
def rules() -> ActRules:
    return ActRules()


@pytest.fixture
def fixtures_dir() -> str:
    return FIXTURES
