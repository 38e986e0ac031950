import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from src.acts.requests import ActionRequest, parse_kind
from src.llm.json_extract import extract_json_object

REQUIRED_KEYS = ("action", "params", "internal_memory")


@dataclass
class PolicyDecision:
    request: ActionRequest
    message: str = ""
    new_memory: str = ""
    rationale: str = field(default="", compare=False)
    exchange: Optional[Dict[str, Any]] = field(default=None, compare=False)


@dataclass
class ParseFailure:
    raw: str
    error: str


def _as_text(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return json.dumps(value, ensure_ascii=False)


def parse_reply(text: str, agent_id: str = "") -> Union[PolicyDecision, ParseFailure]:
    """Decision encoded in a model reply, or a ParseFailure carrying the raw text."""
    obj = extract_json_object(text)
    if obj is None:
        return ParseFailure(raw=text, error="no JSON object found")
    missing = [key for key in REQUIRED_KEYS if key not in obj]
    if missing:
        return ParseFailure(raw=text, error=f"missing keys: {', '.join(missing)}")
    kind = parse_kind(obj["action"])
    if kind is None:
        return ParseFailure(raw=text, error=f"unknown action '{obj['action']}'")
    params = obj["params"]
    if params is None:
        params = {}
    if not isinstance(params, dict):
        return ParseFailure(raw=text, error="params is not an object")
    return PolicyDecision(
        request=ActionRequest(agent=agent_id, kind=kind, params=params),
        message=_as_text(obj.get("message")),
        new_memory=_as_text(obj["internal_memory"]),
    )


def render_reply(decision: PolicyDecision) -> str:
    """The reply a model would give for ``decision``."""
    return json.dumps(
        {
            "action": decision.request.kind.value,
            "message": decision.message,
            "params": decision.request.params,
            "internal_memory": decision.new_memory,
        },
        indent=4,
        ensure_ascii=False,
    )
