"""
Rendering completed step logs into the text a judge reads.

An agent log is one JSON object per line. A group log is a JSON object
keyed by timestep, one timestep per line, each holding the entries of the
community members active at that step.
"""

import json
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Set

from src.models import StepRecord


def log_entry(record: StepRecord) -> Dict[str, Any]:
    obs = record.observation
    return {
        "step": record.t,
        "name": record.agent_name,
        "tag": record.agent_id,
        "action": record.action.kind,
        "params": record.action.params,
        "status": record.action.status,
        "message": record.message,
        "memory": record.memory_after,
        "observation": {
            "messages": [{"from": m.sender_id, "text": m.text} for m in obs.inbox],
            "time_left": obs.time_left,
            "energy": obs.energy,
            "inventory": obs.inventory,
        },
    }


def _dumps(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, sort_keys=True)


def render_agent_log(records: Iterable[StepRecord]) -> str:
    return "\n".join(_dumps(log_entry(r)) for r in sorted(records, key=lambda r: r.t))


def render_group_log(records: Iterable[StepRecord]) -> str:
    by_step: Dict[int, List[Dict[str, Any]]] = defaultdict(list)
    for record in sorted(records, key=lambda r: (r.t, r.agent_id)):
        by_step[record.t].append(log_entry(record))
    lines = [f"{_dumps(str(t))}: {_dumps(entries)}" for t, entries in sorted(by_step.items())]
    return "{\n" + ",\n".join(lines) + "\n}"


def parse_agent_log(text: str) -> List[Dict[str, Any]]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def parse_group_log(text: str) -> List[Dict[str, Any]]:
    """Flattened entries of a rendered group log, in step order."""
    steps = json.loads(text)
    return [entry for t in sorted(steps, key=int) for entry in steps[t]]


def _strings(value: Any) -> Iterable[str]:
    if isinstance(value, str):
        yield value
    elif isinstance(value, dict):
        for item in value.values():
            yield from _strings(item)
    elif isinstance(value, (list, tuple)):
        for item in value:
            yield from _strings(item)


class SourceText:
    """
    Everything a reference snippet may quote verbatim.

    Snippets are matched against the rendered log and against the raw
    strings behind it (messages, memories, params, artifact payloads), so
    quotes containing characters that JSON escapes still verify.
    """

    def __init__(self, rendered: str, records: Iterable[StepRecord] = ()):
        self.rendered = rendered
        self.fragments: List[str] = []
        self.steps: Set[int] = set()
        for record in records:
            self.steps.add(record.t)
            self.fragments.append(record.message)
            self.fragments.append(record.memory_after)
            self.fragments.extend(m.text for m in record.observation.inbox)
            self.fragments.extend(_strings(record.action.params))
            self.fragments.extend(e["payload"] for e in record.events if isinstance(e.get("payload"), str))

    def contains(self, snippet: str) -> bool:
        if not snippet:
            return False
        return snippet in self.rendered or any(snippet in fragment for fragment in self.fragments)
