"""
Rebuild a world by folding the events sidecar of a run.

The fold reproduces positions, vitals, inventories, artifacts and food;
agent memories live only in the step log and are not part of a snapshot.
"""

import logging
from typing import Any, Dict, Iterable, Mapping, Optional

from src.acts.artifact import Artifact, age_artifacts, remove_artifact
from src.beings.agent import AgentState
from src.beings.genome import Genome
from src.world.food import FoodItem
from src.world.grid import GridConfig, Position
from src.world.state import World

logger = logging.getLogger(__name__)


def agent_to_dict(agent: AgentState) -> Dict[str, Any]:
    return {
        "id": agent.id,
        "name": agent.name,
        "pos": list(agent.pos),
        "energy": agent.energy,
        "time_left": agent.time_left,
        "genome": agent.genome.as_dict() if agent.genome else None,
        "inventory": list(agent.inventory),
        "parent": agent.parent,
        "born_at": agent.born_at,
    }


def agent_from_dict(data: Mapping[str, Any]) -> AgentState:
    return AgentState(
        id=data["id"],
        name=data["name"],
        pos=Position(*data["pos"]),
        energy=data["energy"],
        time_left=data["time_left"],
        genome=Genome(**data["genome"]) if data.get("genome") else None,
        inventory=list(data.get("inventory", [])),
        parent=data.get("parent"),
        born_at=data.get("born_at", 0),
    )


def artifact_to_dict(artifact: Artifact) -> Dict[str, Any]:
    return {
        "id": artifact.id,
        "name": artifact.name,
        "payload": artifact.payload,
        "lifespan": artifact.lifespan,
        "creator": artifact.creator,
        "created_at": artifact.created_at,
        "pos": list(artifact.pos) if artifact.pos is not None else None,
        "holder": artifact.holder,
        "modified_at": list(artifact.modified_at),
    }


def world_init_event(world: World) -> Dict[str, Any]:
    return {
        "type": "world_init",
        "t": world.t,
        "grid": world.grid.model_dump(mode="json"),
        "cluster_centers": [list(c) for c in world.cluster_centers],
        "food": [[item.pos.x, item.pos.y, item.value, item.born_at] for item in world.food.values()],
        "agents": [agent_to_dict(world.agents[k]) for k in sorted(world.agents)],
        "agent_seq": world.agents_ever,
    }


def snapshot(world: World) -> Dict[str, Any]:
    """Structural summary of a world, comparable with ``==``."""
    return {
        "t": world.t,
        "food": {(p.x, p.y): (item.value, item.born_at) for p, item in world.food.items()},
        "agents": {k: agent_to_dict(a) for k, a in world.agents.items()},
        "artifacts": {name: artifact_to_dict(a) for name, a in world.artifacts.items()},
        "agents_ever": world.agents_ever,
        "artifacts_ever": world.artifacts_ever,
    }


class Replayer:
    """Applies events one at a time to a world built from the init event."""

    def __init__(self, payloads: Optional[Mapping[str, str]] = None):
        self.payloads = payloads or {}
        self.world: Optional[World] = None

    def apply(self, event: Dict[str, Any]) -> None:
        kind = event["type"]
        if kind != "world_init" and self.world is None:
            raise ValueError("Event stream does not start with a world_init event")
        handler = getattr(self, f"_on_{kind}", None)
        if handler is None:
            logger.warning(f"Skipping unknown event type '{kind}'")
            return
        handler(event)

    def _agent(self, agent_id: str) -> AgentState:
        return self.world.agents[agent_id]

    def _on_world_init(self, e):
        world = World(grid=GridConfig.model_validate(e["grid"]), t=e["t"])
        world.cluster_centers = [Position(*c) for c in e["cluster_centers"]]
        for x, y, value, born_at in e["food"]:
            world.food[Position(x, y)] = FoodItem(pos=Position(x, y), value=value, born_at=born_at)
        for data in e["agents"]:
            world.place_agent(agent_from_dict(data))
        world._agent_seq = e["agent_seq"]
        self.world = world

    def _on_tick(self, e):
        self.world.t = e["t"]
        for agent in self.world.agents.values():
            agent.energy -= 1
            agent.time_left -= 1

    def _on_death(self, e):
        agent = self.world.remove_agent(e["agent"])
        for name in agent.inventory:
            artifact = self.world.artifacts[name]
            artifact.holder = None
            artifact.pos = Position(*e["pos"])

    def _on_move(self, e):
        self.world.move_agent(self._agent(e["agent"]), Position(*e["to"]))

    def _on_eat(self, e):
        self.world.food.pop(Position(*e["pos"]))
        self._agent(e["agent"]).energy += e["value"]

    def _on_transfer(self, e):
        self._agent(e["src"]).energy -= e["amount"]
        self._agent(e["dst"]).energy += e["amount"]

    def _on_cost(self, e):
        self._agent(e["agent"]).energy -= e["amount"]

    def _on_birth(self, e):
        self.world._agent_seq += 1
        self.world.place_agent(
            AgentState(
                id=e["child"],
                name=e["name"],
                pos=Position(*e["pos"]),
                energy=e["energy"],
                time_left=e["time_left"],
                genome=Genome(**e["genome"]) if e.get("genome") else None,
                parent=e["parent"],
                born_at=e["t"],
            )
        )

    def _on_artifact(self, e):
        world = self.world
        op = e["op"]
        if op == "create":
            world._artifact_seq += 1
            world.artifacts[e["name"]] = Artifact(
                id=e["artifact"],
                name=e["name"],
                payload=self.payloads.get(e["payload_hash"], e.get("payload", "")),
                lifespan=e["lifespan"],
                creator=e["agent"],
                created_at=e["t"],
                pos=Position(*e["pos"]),
            )
        elif op == "modify":
            artifact = world.artifacts[e["name"]]
            artifact.payload = self.payloads.get(e["payload_hash"], e.get("payload", ""))
            artifact.lifespan = e["lifespan"]
            artifact.modified_at.append(e["t"])
        elif op == "pickup":
            artifact = world.artifacts[e["name"]]
            artifact.pos = None
            artifact.holder = e["agent"]
            self._agent(e["agent"]).inventory.append(artifact.name)
        elif op == "drop":
            artifact = world.artifacts[e["name"]]
            self._agent(e["agent"]).inventory.remove(artifact.name)
            artifact.holder = None
            artifact.pos = Position(*e["pos"])
        elif op == "give":
            artifact = world.artifacts[e["name"]]
            self._agent(e["agent"]).inventory.remove(artifact.name)
            self._agent(e["target"]).inventory.append(artifact.name)
            artifact.holder = e["target"]
        elif op == "destroy":
            remove_artifact(world, e["name"])
        elif op == "expire":
            # already removed by the preceding age event
            world.artifacts.pop(e["name"], None)

    def _on_age(self, e):
        age_artifacts(self.world)

    def _on_food_decay(self, e):
        self.world.food.pop(Position(*e["pos"]), None)

    def _on_food_spawn(self, e):
        pos = Position(*e["pos"])
        self.world.food[pos] = FoodItem(pos=pos, value=e["value"], born_at=e["t"])


def replay(events: Iterable[Dict[str, Any]], payloads: Optional[Mapping[str, str]] = None) -> World:
    """Final world state reconstructed from an event stream."""
    replayer = Replayer(payloads)
    for event in events:
        replayer.apply(event)
    if replayer.world is None:
        raise ValueError("Empty event stream")
    return replayer.world
