"""
Deterministic rule-based judge.

Reads the data blocks back out of the rendered prompts and answers with
fixed rules, so the whole analysis pipeline runs offline and reproducibly.
The rules are test scaffolding; they make no claim about how a language
model would judge the same material.
"""

import json
import logging
from collections import defaultdict
from typing import Any, Dict, List, Optional, Set

from src.fieldwork.judge import Judge
from src.fieldwork.logtext import SourceText, parse_agent_log, parse_group_log
from src.textmetrics.tokenize import tokenize

logger = logging.getLogger(__name__)

APPLIED = "applied"

EVENT_RULES = {
    "reproduce": "Reproduction",
    "create_artifact": "Artifact Created",
    "pickup_artifact": "Artifact Use",
    "drop_artifact": "Artifact Use",
    "modify_artifact": "Artifact Use",
    "destroy_artifact": "Artifact Use",
    "give_energy": "Exchange",
    "give_artifact": "Exchange",
    "take_energy": "Conflict",
}

CATEGORY_KEYWORDS = {
    4: {"must", "rule", "rules", "manifesto", "directive", "directives", "mandate", "constitution", "charter"},
    3: {"hub", "wiki", "portal", "template", "templates"},
    2: {"plan", "plans", "strategy", "coordinate", "assign", "explore", "meet", "gather", "follow", "let"},
}

NAME_MENTION_CONFIDENCE = 0.9
OVERLAP_CONFIDENCE = 0.6
OVERLAP_THRESHOLD = 0.5


def jaccard(a: str, b: str) -> float:
    left, right = set(tokenize(a)), set(tokenize(b))
    if not left and not right:
        return 1.0
    return len(left & right) / len(left | right)


def _after(text: str, marker: str) -> str:
    idx = text.find(marker)
    if idx == -1:
        raise ValueError(f"Prompt has no '{marker.strip()}' block")
    return text[idx + len(marker):]


def _between(text: str, start: str, end: str) -> str:
    rest = _after(text, start)
    idx = rest.find(end)
    return rest if idx == -1 else rest[:idx]


def _ref(entry: Dict[str, Any]) -> Dict[str, Any]:
    return {"step": entry["step"], "snippet": entry["action"]}


def _applied(entries: List[Dict[str, Any]], kind: str) -> List[Dict[str, Any]]:
    return [e for e in entries if e["action"] == kind and e.get("status") == APPLIED]


class MockJudge(Judge):
    """Rule-based judge with no network access"""

    model = "mock"
    version = "rules/1"

    def complete(self, system: str, user: str, task: str = "annotation") -> str:
        handler = getattr(self, f"_{task}", None)
        if handler is None:
            raise ValueError(f"Mock judge has no rule for task '{task}'")
        return json.dumps(handler(user), ensure_ascii=False, sort_keys=True)

    # behavior annotation

    @staticmethod
    def _events(entries: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
        grouped: Dict[str, List[Dict[str, Any]]] = defaultdict(list)
        for entry in entries:
            tag = EVENT_RULES.get(entry["action"])
            if tag and entry.get("status") == APPLIED:
                grouped[tag].append(entry)
        events = []
        for tag in sorted(grouped):
            hits = grouped[tag]
            events.append({
                "event": tag,
                "timesteps": sorted({e["step"] for e in hits}),
                "confidence": 10,
                "description": f"{tag} at {len(hits)} step(s)",
                "reference": [_ref(hits[0])],
                "agents": sorted({e["tag"] for e in hits}),
            })
        return events

    @staticmethod
    def _span(tag: str, hits: List[Dict[str, Any]], description: str, confidence: int = 8) -> Dict[str, Any]:
        steps = sorted({e["step"] for e in hits})
        first = next(e for e in hits if e["step"] == steps[0])
        last = next(e for e in hits if e["step"] == steps[-1])
        return {
            "behavior": tag,
            "time_span": [steps[0], steps[-1]],
            "confidence": confidence,
            "description": description,
            "reference": [_ref(first), _ref(last)],
            "agents": sorted({e["tag"] for e in hits}),
        }

    def _agent_annotation(self, user: str) -> Dict[str, Any]:
        entries = parse_agent_log(_after(user, "Agent Life Log\n"))
        behaviors = []
        moves = [e for e in _applied(entries, "move") if e["params"].get("direction") != "stay"]
        if len({e["step"] for e in moves}) >= 2:
            behaviors.append(self._span("Foraging", moves, "Keeps moving around the grid looking for food"))
        gifts = _applied(entries, "give_energy")
        if len({e["step"] for e in gifts}) >= 2:
            behaviors.append(self._span("Altruism", gifts, "Repeatedly gives energy away"))
        created = _applied(entries, "create_artifact")
        keywords = ["Record Keeping"] if len(created) >= 2 else ["none"]
        name = entries[0]["name"] if entries else "agent"
        return {
            "events": self._events(entries),
            "behaviors": behaviors,
            "comment": f"{name} acted over {len(entries)} logged steps.",
            "emergence": {
                "keywords": keywords,
                "comment": "repeated artifact creation" if created and len(created) >= 2 else "none",
            },
        }

    def _group_annotation(self, user: str) -> Dict[str, Any]:
        entries = parse_group_log(_after(user, "Group Log\n"))
        tag_of = {e["name"]: e["tag"] for e in entries}
        gifts = _applied(entries, "give_energy")
        flows: Dict[tuple, List[Dict[str, Any]]] = defaultdict(list)
        for gift in gifts:
            target = tag_of.get(gift["params"].get("target"))
            if target is not None:
                flows[(gift["tag"], target)].append(gift)

        behaviors = []
        seen: Set[tuple] = set()
        for (src, dst) in sorted(flows):
            pair = tuple(sorted((src, dst)))
            if pair in seen or (dst, src) not in flows:
                continue
            seen.add(pair)
            hits = flows[(src, dst)] + flows[(dst, src)]
            if len({e["step"] for e in hits}) >= 2:
                behaviors.append(self._span("Reciprocity", hits, f"{pair[0]} and {pair[1]} trade energy both ways"))
        if len({e["step"] for e in gifts}) >= 3:
            behaviors.append(self._span("Resource Flow", gifts, "Energy circulates among members"))

        events = []
        by_step: Dict[int, Dict[str, List[Dict[str, Any]]]] = defaultdict(lambda: defaultdict(list))
        for entry in entries:
            if entry["message"].strip():
                by_step[entry["step"]][entry["message"]].append(entry)
        aligned = [hits for t in sorted(by_step) for _, hits in sorted(by_step[t].items()) if len(hits) >= 2]
        if aligned:
            events.append({
                "event": "Signal Alignment",
                "timesteps": sorted({hits[0]["step"] for hits in aligned}),
                "confidence": 8,
                "description": "Members broadcast the same message in one step",
                "reference": [{"step": aligned[0][0]["step"], "snippet": aligned[0][0]["message"]}],
                "agents": sorted({e["tag"] for hits in aligned for e in hits}),
            })

        keywords = ["Resource Network"] if any(b["behavior"] == "Reciprocity" for b in behaviors) else ["none"]
        return {
            "events": events,
            "behaviors": behaviors,
            "comment": f"Group of {len(tag_of)} members over {len({e['step'] for e in entries})} steps.",
            "emergence": {"keywords": keywords, "comment": "reciprocal energy exchange" if keywords != ["none"] else "none"},
        }

    # audit

    @staticmethod
    def _verdicts(items: List[Dict[str, Any]], source: SourceText) -> List[Dict[str, Any]]:
        verdicts = []
        for index, item in enumerate(items):
            refs = item.get("reference") or []
            supported = bool(refs) and all(
                r.get("step") in source.steps and source.contains(r.get("snippet", "")) for r in refs
            )
            if supported:
                verdicts.append({"index": index, "verdict": "pass", "issues": [], "confidence": 9})
            else:
                verdicts.append({"index": index, "verdict": "fail", "issues": ["reference not found"], "confidence": 9})
        return verdicts

    def _audit(self, logs: str, entries: List[Dict[str, Any]], annotations: Dict[str, Any]) -> Dict[str, Any]:
        source = SourceText(logs)
        source.steps = {e["step"] for e in entries}
        return {
            "events_audit": self._verdicts(annotations.get("events", []), source),
            "behaviors_audit": self._verdicts(annotations.get("behaviors", []), source),
            "summary": "References checked against the log.",
        }

    def _agent_audit(self, user: str) -> Dict[str, Any]:
        logs = _between(user, "Agent logs:\n", "\n\nAnnotations:\n")
        annotations = json.loads(_after(user, "\n\nAnnotations:\n"))
        return self._audit(logs, parse_agent_log(logs), annotations)

    def _group_audit(self, user: str) -> Dict[str, Any]:
        logs = _between(user, "Group Log\n", "\n\nAnnotations:\n")
        annotations = json.loads(_after(user, "\n\nAnnotations:\n"))
        return self._audit(logs, parse_group_log(logs), annotations)

    # artifacts

    def _novelty(self, user: str) -> Dict[str, float]:
        previous = json.loads(_between(user, "Previous artifacts: ", "\nNew artifacts: "))
        fresh = json.loads(_after(user, "\nNew artifacts: "))
        scores = {}
        for item in fresh:
            scores[item["id"]] = self.novelty(item, previous)
        return scores

    @staticmethod
    def novelty(item: Dict[str, Any], previous: List[Dict[str, Any]]) -> float:
        if not previous:
            return 5.0
        if any(p["content"] == item["content"] for p in previous):
            return 0.0
        text = f"{item['name']} {item['content']}"
        overlap = max(jaccard(text, f"{p['name']} {p['content']}") for p in previous)
        return round(5.0 - min(5.0, overlap * 5.0), 4)

    def _ancestry(self, user: str) -> Dict[str, float]:
        name = _between(user, "- name: ", "\n- content: ").strip()
        content = _between(user, "\n- content: ", "\n\nAgent reasoning:")
        candidates = json.loads(_after(user, "(ONLY choose from these IDs):\n"))
        links = {}
        for artifact_id in sorted(candidates):
            candidate = candidates[artifact_id]
            confidence = self.ancestry(name, content, candidate["name"], candidate["content"])
            if confidence is not None:
                links[artifact_id] = confidence
        return links

    @staticmethod
    def ancestry(name: str, content: str, candidate_name: str, candidate_content: str) -> Optional[float]:
        if candidate_name and candidate_name != name and candidate_name in content:
            return NAME_MENTION_CONFIDENCE
        if jaccard(content, candidate_content) > OVERLAP_THRESHOLD:
            return OVERLAP_CONFIDENCE
        return None

    def _classification(self, user: str) -> Dict[str, str]:
        name = _between(user, "Name: ", "\nContent: ")
        content = _after(user, "\nContent: ")
        return {"category": str(self.category(name, content))}

    @staticmethod
    def category(name: str, content: str) -> int:
        words = set(tokenize(f"{name} {content}"))
        for category in (4, 3, 2):
            if words & CATEGORY_KEYWORDS[category]:
                return category
        return 1
