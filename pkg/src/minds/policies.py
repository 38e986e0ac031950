"""
Decision policies.

Scripted policies are pure functions of the prompt context and the agent's
decision generator, so a run driven by them is reproducible bit for bit.
Each one returns a short rationale that stands in for a model's reasoning
when artifact ancestry is inferred later.
"""

import re
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Type

import numpy as np

from src.acts.requests import ActionKind, ActionRequest, DIRECTIONS
from src.minds.prompts import PromptContext
from src.minds.reply_parser import PolicyDecision
from src.rng import agent_rng

# Tie-break order among equally good moves.
DIRECTION_ORDER = ("right", "left", "up", "down")

REPRODUCE_WINDOW = 25
REPRODUCE_MARGIN = 20
SHARE_THRESHOLD = 60
NOTE_LIFESPAN = 50

_OFFSPRING = re.compile(r"offspring=(\d+)")


class Policy(ABC):
    """Maps a prompt context to a decision."""

    name = "policy"

    @abstractmethod
    def decide(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        ...

    def _decision(self, ctx: PromptContext, kind: ActionKind, params: dict, rationale: str,
                  memory: Optional[str] = None, message: str = "") -> PolicyDecision:
        return PolicyDecision(
            request=ActionRequest(agent=ctx.agent.id, kind=kind, params=params),
            message=message,
            new_memory=ctx.memory if memory is None else memory,
            rationale=rationale,
        )


def stay(ctx: PromptContext, rationale: str = "staying put") -> PolicyDecision:
    return PolicyDecision(
        request=ActionRequest(agent=ctx.agent.id, kind=ActionKind.MOVE, params={"direction": "stay"}),
        new_memory=ctx.memory,
        rationale=rationale,
    )


class GreedyForager(Policy):
    """Walks toward the nearest visible food; wanders at random when none is in view."""

    name = "forager"

    def decide(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        return self._reproduce(ctx) or self._forage(ctx, rng)

    def _offspring(self, ctx: PromptContext) -> int:
        found = _OFFSPRING.search(ctx.memory or "")
        return int(found.group(1)) if found else 0

    def _memory(self, ctx: PromptContext, offspring: Optional[int] = None) -> str:
        count = self._offspring(ctx) if offspring is None else offspring
        return f"t={ctx.t} energy={ctx.agent.energy} offspring={count}"

    def _reproduce(self, ctx: PromptContext) -> Optional[PolicyDecision]:
        if ActionKind.REPRODUCE not in ctx.actions or self._offspring(ctx) > 0:
            return None
        if ctx.agent.time_left > REPRODUCE_WINDOW:
            return None
        if ctx.agent.energy < ctx.reproduce_cost + REPRODUCE_MARGIN:
            return None
        return self._decision(
            ctx,
            ActionKind.REPRODUCE,
            {"energy": 0, "name": f"{ctx.agent.name}-{ctx.t}"},
            "life is running out and energy is plentiful, so leaving an offspring",
            memory=self._memory(ctx, offspring=1),
        )

    def _forage(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        occupied = {n.rel for n in ctx.neighbors}
        foods = ctx.food
        if foods:
            best = min(abs(dx) + abs(dy) for (dx, dy), _ in foods)
            wanted = set()
            for (dx, dy), _ in foods:
                if abs(dx) + abs(dy) != best:
                    continue
                if dx > 0:
                    wanted.add("right")
                if dx < 0:
                    wanted.add("left")
                if dy > 0:
                    wanted.add("up")
                if dy < 0:
                    wanted.add("down")
            for direction in DIRECTION_ORDER:
                if direction in wanted and DIRECTIONS[direction] not in occupied:
                    return self._decision(
                        ctx, ActionKind.MOVE, {"direction": direction},
                        f"food {best} cells away, moving {direction}", memory=self._memory(ctx),
                    )
        free = [d for d in DIRECTION_ORDER if DIRECTIONS[d] not in occupied]
        if not free:
            return stay(ctx, "boxed in by neighbours")
        direction = free[int(rng.integers(len(free)))]
        return self._decision(
            ctx, ActionKind.MOVE, {"direction": direction},
            "no food in view, wandering", memory=self._memory(ctx),
        )


class Sharer(GreedyForager):
    """Forager that hands a quarter of its energy to the weakest neighbour when well fed."""

    name = "sharer"

    def decide(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        energy = ctx.agent.energy
        neighbors = ctx.neighbors
        if energy > SHARE_THRESHOLD and neighbors and ActionKind.GIVE_ENERGY in ctx.actions:
            target = min(neighbors, key=lambda n: (n.energy, n.name))
            amount = int(energy // 4)
            return self._decision(
                ctx,
                ActionKind.GIVE_ENERGY,
                {"target": target.name, "amount": amount},
                f"well fed, sharing {amount} energy with {target.name}",
                memory=self._memory(ctx),
                message=f"{target.name}, take some of my energy.",
            )
        return super().decide(ctx, rng)


class Scribe(GreedyForager):
    """Forager that leaves a note wherever it has just eaten."""

    name = "scribe"

    def decide(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        if ctx.ate_last_step and ActionKind.CREATE_ARTIFACT in ctx.actions:
            seen = "; ".join(f"({dx}, {dy})={value}" for (dx, dy), value in ctx.food) or "none"
            payload = f"Food was found here at step {ctx.t - 1}. Food in view: {seen}."
            return self._decision(
                ctx,
                ActionKind.CREATE_ARTIFACT,
                {
                    "name": f"note-{ctx.agent.name}-{ctx.t}",
                    "type": "text",
                    "payload": payload,
                    "lifespan": NOTE_LIFESPAN,
                },
                "just ate here, marking the spot for others",
                memory=self._memory(ctx),
            )
        return super().decide(ctx, rng)


class UniformRandom(Policy):
    """Picks uniformly among afforded actions and draws parameters at random."""

    name = "random"

    def decide(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        kinds: List[ActionKind] = list(ctx.actions) or [ActionKind.MOVE]
        kind = kinds[int(rng.integers(len(kinds)))]
        return self._decision(ctx, kind, self._params(kind, ctx, rng), f"picked {kind.value} at random")

    @staticmethod
    def _pick(items: list, rng: np.random.Generator):
        return items[int(rng.integers(len(items)))]

    def _params(self, kind: ActionKind, ctx: PromptContext, rng: np.random.Generator) -> dict:
        agent = ctx.agent
        neighbors = [n.name for n in ctx.neighbors]
        here = [name for name, _ in ctx.artifacts_here]
        held = [name for name, _ in ctx.inventory]
        if kind == ActionKind.MOVE:
            return {"direction": self._pick(list(DIRECTIONS), rng)}
        if kind in (ActionKind.GIVE_ENERGY, ActionKind.TAKE_ENERGY):
            ceiling = max(1, int(agent.energy // 4))
            return {"target": self._pick(neighbors, rng), "amount": int(rng.integers(1, ceiling + 1))}
        if kind == ActionKind.CREATE_ARTIFACT:
            return {
                "name": f"mark-{agent.name}-{ctx.t}",
                "type": "text",
                "payload": f"{agent.name} passed here at step {ctx.t}.",
                "lifespan": int(rng.integers(1, NOTE_LIFESPAN + 1)),
            }
        if kind == ActionKind.PICKUP_ARTIFACT:
            return {"name": self._pick(here, rng)}
        if kind == ActionKind.DROP_ARTIFACT:
            return {"name": self._pick(held, rng)}
        if kind == ActionKind.GIVE_ARTIFACT:
            return {"artifact_name": self._pick(held, rng), "target_agent": self._pick(neighbors, rng)}
        if kind == ActionKind.MODIFY_ARTIFACT:
            return {
                "artifact_name": self._pick(here + held, rng),
                "payload": f"{agent.name} rewrote this at step {ctx.t}.",
                "lifespan": int(rng.integers(1, NOTE_LIFESPAN + 1)),
            }
        if kind == ActionKind.DESTROY_ARTIFACT:
            return {"artifact_name": self._pick(here + held, rng)}
        return {"energy": 0, "name": f"{agent.name}-{ctx.t}"}


SCRIPTED_POLICIES: Dict[str, Type[Policy]] = {
    GreedyForager.name: GreedyForager,
    Sharer.name: Sharer,
    Scribe.name: Scribe,
    UniformRandom.name: UniformRandom,
}


def decide(policy: Policy, ctx: PromptContext, rng: Optional[np.random.Generator] = None) -> PolicyDecision:
    """Run ``policy`` on ``ctx`` with the agent's own decision stream."""
    if rng is None:
        rng = agent_rng(ctx.seed, ctx.agent.id, ctx.t)
    return policy.decide(ctx, rng)
