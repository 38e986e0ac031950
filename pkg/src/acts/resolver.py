"""
Synchronous action resolution.

All requests of a step are shuffled with the step generator and applied one
after the other; each is re-validated against the world left by the ones
before it. Effects are recorded in the order they mutate the world so that
an event log can be replayed.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from src.acts.artifact import Artifact, payload_hash, remove_artifact
from src.acts.requests import (
    APPLIED,
    ActionKind,
    ActionOutcome,
    ActionRequest,
    DIRECTIONS,
    RejectReason,
)
from src.acts.rules import ActRules
from src.acts.validator import ActionValidator, as_int
from src.beings.agent import AgentState
from src.beings.genome import mutate
from src.world.grid import adjacent, wrap
from src.world.state import World

logger = logging.getLogger(__name__)


def eat_at(world: World, agent: AgentState) -> Optional[dict]:
    """Consume the food item under the agent, if any."""
    food = world.food.pop(agent.pos, None)
    if food is None:
        return None
    agent.energy += food.value
    return {"type": "eat", "agent": agent.id, "pos": list(agent.pos), "value": food.value}


def artifact_event(op: str, artifact: Artifact, agent_id: Optional[str], **extra) -> dict:
    event = {
        "type": "artifact",
        "op": op,
        "artifact": artifact.id,
        "name": artifact.name,
        "agent": agent_id,
    }
    event.update(extra)
    return event


class StepResolver:
    """Applies one step of requests to the world."""

    def __init__(self, rules: ActRules):
        self.rules = rules
        self.validator = ActionValidator(rules)

    def resolve(self, requests: List[ActionRequest], world: World, rng: np.random.Generator) -> List[ActionOutcome]:
        order = rng.permutation(len(requests)) if requests else []
        outcomes: Dict[int, ActionOutcome] = {}
        for seq, idx in enumerate(order):
            req = requests[int(idx)]
            agent = world.agents.get(req.agent)
            if agent is None:
                logger.warning(f"Dropping request from unknown or dead agent {req.agent} at t={world.t}")
                continue
            ok, reason = self.validator.validate(req, agent, world)
            if not ok:
                outcomes[int(idx)] = ActionOutcome.rejected(req, reason, seq=seq)
                continue
            handler = getattr(self, f"_apply_{req.kind.value}")
            outcome = handler(req, agent, world, rng)
            outcome.seq = seq
            outcomes[int(idx)] = outcome
        return [outcomes[i] for i in range(len(requests)) if i in outcomes]

    def _applied(self, req: ActionRequest, effects: List[dict]) -> ActionOutcome:
        return ActionOutcome(request=req, status=APPLIED, effects=effects)

    def _apply_move(self, req, agent, world, rng):
        dx, dy = DIRECTIONS[req.params["direction"]]
        if (dx, dy) == (0, 0):
            return self._applied(req, [])
        dest = wrap((agent.pos.x + dx, agent.pos.y + dy), world.grid)
        if world.agent_at(dest) is not None:
            return ActionOutcome.rejected(req, RejectReason.OCCUPIED)
        origin = agent.pos
        world.move_agent(agent, dest)
        effects = [{"type": "move", "agent": agent.id, "from": list(origin), "to": list(dest)}]
        meal = eat_at(world, agent)
        if meal:
            effects.append(meal)
        return self._applied(req, effects)

    def _transfer(self, req, src: AgentState, dst: AgentState, amount: int, kind: str):
        if amount < 1:
            return ActionOutcome.rejected(req, RejectReason.BAD_AMOUNT)
        src.energy -= amount
        dst.energy += amount
        return self._applied(
            req, [{"type": "transfer", "kind": kind, "src": src.id, "dst": dst.id, "amount": amount}]
        )

    def _apply_give_energy(self, req, agent, world, rng):
        target = world.agent_by_name(req.params["target"])
        amount = min(as_int(req.params["amount"]), int(max(agent.energy, 0)))
        return self._transfer(req, agent, target, amount, "gift")

    def _apply_take_energy(self, req, agent, world, rng):
        target = world.agent_by_name(req.params["target"])
        amount = min(as_int(req.params["amount"]), int(max(target.energy, 0)))
        return self._transfer(req, target, agent, amount, "theft")

    def _apply_reproduce(self, req, agent, world, rng):
        free = [p for p in adjacent(agent.pos, world.grid) if world.agent_at(p) is None]
        if not free:
            return ActionOutcome.rejected(req, RejectReason.NO_SPACE)
        gift = as_int(req.params.get("energy", 0))
        cell = free[int(rng.integers(len(free)))]
        endowment = self.rules.reproduce_cost + gift
        agent.energy -= endowment
        child = AgentState(
            id=world.next_agent_id(),
            name=req.params["name"].strip(),
            pos=cell,
            energy=endowment,
            time_left=self.rules.lifespan,
            genome=mutate(agent.genome, self.rules.mutation, rng) if agent.genome else None,
            parent=agent.id,
            born_at=world.t,
        )
        world.place_agent(child)
        return self._applied(
            req,
            [
                {"type": "cost", "agent": agent.id, "amount": endowment, "reason": "reproduce"},
                {
                    "type": "birth",
                    "child": child.id,
                    "parent": agent.id,
                    "name": child.name,
                    "pos": list(cell),
                    "energy": endowment,
                    "time_left": child.time_left,
                    "genome": child.genome.as_dict() if child.genome else None,
                },
            ],
        )

    def _apply_create_artifact(self, req, agent, world, rng):
        effects = []
        if self.rules.artifact_cost > 0:
            agent.energy -= self.rules.artifact_cost
            effects.append({"type": "cost", "agent": agent.id, "amount": self.rules.artifact_cost, "reason": "artifact"})
        artifact = Artifact(
            id=world.next_artifact_id(),
            name=req.params["name"].strip(),
            payload=req.params["payload"],
            lifespan=as_int(req.params["lifespan"]),
            creator=agent.id,
            created_at=world.t,
            pos=agent.pos,
        )
        world.artifacts[artifact.name] = artifact
        effects.append(
            artifact_event(
                "create",
                artifact,
                agent.id,
                pos=list(agent.pos),
                lifespan=artifact.lifespan,
                payload_hash=payload_hash(artifact.payload),
                payload=artifact.payload,
            )
        )
        return self._applied(req, effects)

    def _apply_pickup_artifact(self, req, agent, world, rng):
        artifact = world.artifacts[req.params["name"]]
        artifact.pos = None
        artifact.holder = agent.id
        agent.inventory.append(artifact.name)
        return self._applied(req, [artifact_event("pickup", artifact, agent.id)])

    def _apply_drop_artifact(self, req, agent, world, rng):
        artifact = world.artifacts[req.params["name"]]
        agent.inventory.remove(artifact.name)
        artifact.holder = None
        artifact.pos = agent.pos
        return self._applied(req, [artifact_event("drop", artifact, agent.id, pos=list(agent.pos))])

    def _apply_give_artifact(self, req, agent, world, rng):
        artifact = world.artifacts[req.params["artifact_name"]]
        target = world.agent_by_name(req.params["target_agent"])
        agent.inventory.remove(artifact.name)
        target.inventory.append(artifact.name)
        artifact.holder = target.id
        return self._applied(req, [artifact_event("give", artifact, agent.id, target=target.id)])

    def _apply_modify_artifact(self, req, agent, world, rng):
        artifact = world.artifacts[req.params["artifact_name"]]
        artifact.payload = req.params["payload"]
        artifact.lifespan = as_int(req.params["lifespan"])
        artifact.modified_at.append(world.t)
        return self._applied(
            req,
            [
                artifact_event(
                    "modify",
                    artifact,
                    agent.id,
                    lifespan=artifact.lifespan,
                    payload_hash=payload_hash(artifact.payload),
                    payload=artifact.payload,
                )
            ],
        )

    def _apply_destroy_artifact(self, req, agent, world, rng):
        artifact = remove_artifact(world, req.params["artifact_name"])
        return self._applied(req, [artifact_event("destroy", artifact, agent.id)])


def resolve_step(
    requests: List[ActionRequest], world: World, rng: np.random.Generator, rules: Optional[ActRules] = None
) -> List[ActionOutcome]:
    """Apply one request per living agent in random order; outcomes come back in request order."""
    return StepResolver(rules or ActRules()).resolve(requests, world, rng)
