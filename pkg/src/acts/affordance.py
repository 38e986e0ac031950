"""
State-dependent action sets.

Each step an agent is offered only the actions whose preconditions hold,
together with a parameter schema written for the prompt.
"""

from typing import Any, Dict, List

from src.acts.requests import ActionKind
from src.acts.rules import ActRules
from src.beings.agent import AgentState
from src.world.state import World


def _num(value: float) -> str:
    return f"{value:g}"


def _names(names: List[str]) -> str:
    return "[" + ", ".join(names) + "]"


def accessible_artifacts(agent: AgentState, world: World) -> List[str]:
    """Names of artifacts in the agent's cell or inventory."""
    here = [a.name for a in world.artifacts_at(agent.pos)]
    return here + [name for name in agent.inventory if name not in here]


def schema_for(kind: ActionKind, agent: AgentState, world: World, rules: ActRules) -> Dict[str, Any]:
    if kind == ActionKind.MOVE:
        return {
            "description": "Move of one cell in the specified direction, or stay in the current position",
            "params": {"direction": "One among [right, left, up, down, stay]."},
        }
    if kind == ActionKind.GIVE_ENERGY:
        return {
            "description": "Transfer some of your energy to another nearby being.",
            "params": {
                "target": "Name of a being in your field of view to give energy to.",
                "amount": "Integer amount of energy to transfer (1 up to your current energy).",
            },
        }
    if kind == ActionKind.TAKE_ENERGY:
        return {
            "description": "Steal energy from another nearby being.",
            "params": {
                "target": "Name of a being in your field of view to steal energy from.",
                "amount": "Integer amount of energy to steal (1 up to target's current energy).",
            },
        }
    if kind == ActionKind.CREATE_ARTIFACT:
        description = "Creates a new artifact at the being's location."
        if rules.artifact_cost > 0:
            description += f" It costs {_num(rules.artifact_cost)} energy."
        return {
            "description": description,
            "params": {
                "name": "The name of the artifact (use **unique** names)",
                "type": "Type of the artifact to create. One among: ['text']",
                "payload": (
                    "Content of the artifact (e.g. a message, a code snippet, etc.). It depends on the "
                    "artifact type: {'text': 'Any alfanumeric data stored in a physical marker. "
                    f"Maximum size is {rules.payload_cap} tokens.'}}"
                ),
                "lifespan": (
                    "How many time steps the artifact will last (in number of steps, integer > 0. "
                    "If -1 the artifact will never disappear)"
                ),
            },
        }
    if kind == ActionKind.PICKUP_ARTIFACT:
        here = [a.name for a in world.artifacts_at(agent.pos)]
        return {
            "description": "Pick up an artifact lying in your cell and put it in your inventory.",
            "params": {"name": f"Name of the artifact to pick up. One among: {_names(here)}"},
        }
    if kind == ActionKind.DROP_ARTIFACT:
        return {
            "description": "Drop an artifact from your inventory into your current cell.",
            "params": {"name": f"Name of the artifact to drop. One among: {_names(agent.inventory)}"},
        }
    if kind == ActionKind.GIVE_ARTIFACT:
        return {
            "description": "Give an artifact from your inventory to another nearby being.",
            "params": {
                "artifact_name": f"Name of the artifact to give. One among: {_names(agent.inventory)}",
                "target_agent": "Name of a being in your field of view to receive the artifact.",
            },
        }
    if kind == ActionKind.MODIFY_ARTIFACT:
        return {
            "description": "Rewrite the content and lifespan of an artifact in your cell or inventory.",
            "params": {
                "artifact_name": f"Name of the artifact to modify. One among: {_names(accessible_artifacts(agent, world))}",
                "payload": f"New content of the artifact. Maximum size is {rules.payload_cap} tokens.",
                "lifespan": (
                    "New duration of the artifact (in number of steps, integer > 0. "
                    "If -1 the artifact will never disappear)"
                ),
            },
        }
    if kind == ActionKind.DESTROY_ARTIFACT:
        return {
            "description": "Destroy an artifact in your cell or inventory.",
            "params": {
                "artifact_name": f"Name of the artifact to destroy. One among: {_names(accessible_artifacts(agent, world))}",
            },
        }
    if kind == ActionKind.REPRODUCE:
        cost = _num(rules.reproduce_cost)
        return {
            "description": f"Asexually generate an offspring. It costs {cost} energy.",
            "params": {
                "energy": (
                    "Integer amount of **additional** energy the parent gifts the child "
                    f"(0 up to <parent_current_energy - {cost}>)"
                ),
                "name": "Name of the offspring (use **unique** names)",
            },
        }
    raise ValueError(f"Unknown action kind {kind}")


def afford(agent: AgentState, world: World, rules: ActRules) -> Dict[ActionKind, Dict[str, Any]]:
    """Actions whose preconditions hold for ``agent`` now, in prompt order."""
    has_neighbor = bool(world.neighbors_of(agent))
    interactive = rules.artifacts_interactive
    here = bool(world.artifacts_at(agent.pos)) if interactive else False
    held = bool(agent.inventory) if interactive else False

    kinds = [ActionKind.MOVE]
    if has_neighbor:
        kinds += [ActionKind.GIVE_ENERGY, ActionKind.TAKE_ENERGY]
    if agent.energy > rules.artifact_cost:
        kinds.append(ActionKind.CREATE_ARTIFACT)
    if here:
        kinds.append(ActionKind.PICKUP_ARTIFACT)
    if held:
        kinds.append(ActionKind.DROP_ARTIFACT)
    if held and has_neighbor:
        kinds.append(ActionKind.GIVE_ARTIFACT)
    if here or held:
        kinds += [ActionKind.MODIFY_ARTIFACT, ActionKind.DESTROY_ARTIFACT]
    if agent.energy > rules.reproduce_cost:
        kinds.append(ActionKind.REPRODUCE)
    return {kind: schema_for(kind, agent, world, rules) for kind in kinds}
