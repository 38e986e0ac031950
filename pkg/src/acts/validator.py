from typing import Any, Optional, Tuple

from src.acts.affordance import afford
from src.acts.artifact import INFINITE
from src.acts.requests import ActionKind, ActionRequest, DIRECTIONS, RejectReason
from src.acts.rules import ActRules
from src.beings.agent import AgentState
from src.beings.memory import count_tokens
from src.world.grid import distance
from src.world.state import World


def as_int(value: Any) -> Optional[int]:
    """Integer value of an int, an integral float or a numeric string; None otherwise."""
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return as_int(float(value.strip()))
        except ValueError:
            return None
    return None


def _valid_name(value: Any) -> bool:
    return isinstance(value, str) and bool(value.strip())


def _valid_lifespan(value: Any) -> bool:
    lifespan = as_int(value)
    return lifespan is not None and (lifespan > 0 or lifespan == INFINITE)


class ActionValidator:
    """Checks a request against the world as it is at resolution time."""

    def __init__(self, rules: ActRules):
        self.rules = rules

    def validate(self, req: ActionRequest, agent: AgentState, world: World) -> Tuple[bool, Optional[RejectReason]]:
        if req.kind not in afford(agent, world, self.rules):
            return False, RejectReason.NOT_AFFORDED
        check = getattr(self, f"_check_{req.kind.value}")
        reason = check(req.params, agent, world)
        return (reason is None), reason

    def _target(self, name: Any, agent: AgentState, world: World) -> Tuple[Optional[AgentState], Optional[RejectReason]]:
        if not _valid_name(name):
            return None, RejectReason.BAD_PARAMS
        target = world.agent_by_name(name)
        if target is None or target.id == agent.id:
            return None, RejectReason.NO_SUCH_TARGET
        if distance(agent.pos, target.pos, world.grid) > world.grid.perception_radius:
            return None, RejectReason.NOT_AFFORDED
        return target, None

    def _payload(self, params: dict) -> Optional[RejectReason]:
        payload = params.get("payload")
        if not isinstance(payload, str):
            return RejectReason.BAD_PARAMS
        if count_tokens(payload) > self.rules.payload_cap:
            return RejectReason.PAYLOAD_TOO_LONG
        if not _valid_lifespan(params.get("lifespan")):
            return RejectReason.BAD_PARAMS
        return None

    def _accessible(self, name: Any, agent: AgentState, world: World) -> Optional[RejectReason]:
        if not _valid_name(name):
            return RejectReason.BAD_PARAMS
        artifact = world.artifacts.get(name)
        if artifact is None:
            return RejectReason.NO_SUCH_TARGET
        if artifact.holder == agent.id or (artifact.holder is None and artifact.pos == agent.pos):
            return None
        return RejectReason.NO_SUCH_TARGET

    def _check_move(self, params, agent, world):
        if params.get("direction") not in DIRECTIONS:
            return RejectReason.BAD_PARAMS
        return None

    def _check_give_energy(self, params, agent, world):
        _, reason = self._target(params.get("target"), agent, world)
        if reason:
            return reason
        amount = as_int(params.get("amount"))
        if amount is None or amount < 1:
            return RejectReason.BAD_AMOUNT
        return None

    _check_take_energy = _check_give_energy

    def _check_reproduce(self, params, agent, world):
        name = params.get("name")
        if not _valid_name(name):
            return RejectReason.BAD_PARAMS
        if world.agent_by_name(name) is not None:
            return RejectReason.DUPLICATE_NAME
        gift = as_int(params.get("energy", 0))
        if gift is None or gift < 0 or gift > agent.energy - self.rules.reproduce_cost:
            return RejectReason.BAD_AMOUNT
        return None

    def _check_create_artifact(self, params, agent, world):
        name = params.get("name")
        if not _valid_name(name):
            return RejectReason.BAD_PARAMS
        if name in world.artifacts:
            return RejectReason.DUPLICATE_NAME
        if params.get("type", "text") != "text":
            return RejectReason.BAD_PARAMS
        return self._payload(params)

    def _check_pickup_artifact(self, params, agent, world):
        name = params.get("name")
        if not _valid_name(name):
            return RejectReason.BAD_PARAMS
        artifact = world.artifacts.get(name)
        if artifact is None or artifact.holder is not None or artifact.pos != agent.pos:
            return RejectReason.NO_SUCH_TARGET
        return None

    def _check_drop_artifact(self, params, agent, world):
        name = params.get("name")
        if not _valid_name(name):
            return RejectReason.BAD_PARAMS
        if name not in agent.inventory:
            return RejectReason.NO_SUCH_TARGET
        return None

    def _check_give_artifact(self, params, agent, world):
        name = params.get("artifact_name")
        if not _valid_name(name):
            return RejectReason.BAD_PARAMS
        if name not in agent.inventory:
            return RejectReason.NO_SUCH_TARGET
        _, reason = self._target(params.get("target_agent"), agent, world)
        return reason

    def _check_modify_artifact(self, params, agent, world):
        reason = self._accessible(params.get("artifact_name"), agent, world)
        if reason:
            return reason
        return self._payload(params)

    def _check_destroy_artifact(self, params, agent, world):
        return self._accessible(params.get("artifact_name"), agent, world)


def validate(req: ActionRequest, agent: AgentState, world: World, rules: ActRules) -> Optional[RejectReason]:
    """None when the request may be applied, otherwise the rejection reason."""
    _, reason = ActionValidator(rules).validate(req, agent, world)
    return reason
