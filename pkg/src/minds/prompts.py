"""
Prompt assembly for language-model agents.

Prompt text lives in versioned template files next to this module; their
checksums are written into every run log header so a log can be tied to
the exact wording its agents saw.
"""

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from string import Template
from typing import Any, Dict, List, Optional, Tuple

from src.acts.requests import ActionKind, prompt_key
from src.beings.agent import AgentState
from src.beings.genome import render_traits
from src.models import InboxMessage
from src.world.observation import BEING, FOOD, CellView

TEMPLATE_NAMES = ("system", "user", "artifact_rules", "motivation_minimal", "motivation_creative")
MOTIVATIONS = ("minimal", "none", "creative")


@lru_cache(maxsize=None)
def template_text(name: str) -> str:
    return resources.files(__package__).joinpath("templates", f"{name}.txt").read_text(encoding="utf-8")


def template_checksums() -> Dict[str, str]:
    return {name: hashlib.sha256(template_text(name).encode("utf-8")).hexdigest() for name in TEMPLATE_NAMES}


@dataclass
class HistoryEntry:
    t: int
    energy: float
    inbox: List[InboxMessage]
    observation: List[str]
    action: str
    params: Dict[str, Any]
    message: str = ""


@dataclass
class Neighbor:
    id: str
    name: str
    rel: Tuple[int, int]
    energy: float


@dataclass
class PromptContext:
    agent: AgentState
    t: int
    cells: List[CellView] = field(default_factory=list)
    inbox: List[InboxMessage] = field(default_factory=list)
    history: List[HistoryEntry] = field(default_factory=list)
    history_len: int = 1
    inventory: List[Tuple[str, str]] = field(default_factory=list)
    artifacts_here: List[Tuple[str, str]] = field(default_factory=list)
    actions: Dict[ActionKind, Dict[str, Any]] = field(default_factory=dict)
    motivation: str = "minimal"
    show_genome: bool = True
    memory_limit: int = 150
    last_rejection: Optional[str] = None
    ate_last_step: bool = False
    reproduce_cost: float = 50
    seed: int = 0

    def __post_init__(self):
        if len(self.history) > self.history_len:
            self.history = self.history[-self.history_len:]
        if self.motivation not in MOTIVATIONS:
            raise ValueError(f"Unknown motivation variant '{self.motivation}'")

    @property
    def memory(self) -> str:
        return self.agent.memory

    @property
    def observation_lines(self) -> List[str]:
        return [cell.render() for cell in self.cells]

    @property
    def food(self) -> List[Tuple[Tuple[int, int], float]]:
        return [(c.rel, e.value) for c in self.cells for e in c.entries if e.kind == FOOD]

    @property
    def neighbors(self) -> List[Neighbor]:
        return [
            Neighbor(id=e.ref, name=e.label, rel=c.rel, energy=e.value)
            for c in self.cells
            for e in c.entries
            if e.kind == BEING
        ]


def _or(text: str, placeholder: str) -> str:
    return text if text.strip() else placeholder


def render_history(entries: List[HistoryEntry], h: int) -> str:
    if not entries:
        return ""
    lines = [f"=== History (last {h} steps) ==="]
    for entry in entries[-h:]:
        heard = " | ".join(f"{m.sender}: {m.text}" for m in entry.inbox) or "<none>"
        lines += [
            f"Step {entry.t}:",
            f"  Energy: {entry.energy}",
            f"  Incoming msgs: {heard}",
            "  Observation:",
        ]
        lines += [f"    {line}" for line in entry.observation]
        lines += [
            " ",
            f"  Action taken: {entry.action}",
            f"  Action parameters: {entry.params!r}",
            f"  Sent message: {_or(entry.message, '<none>')}",
            "",
        ]
    return "\n".join(lines).rstrip("\n")


def render_additional_info(ctx: PromptContext) -> str:
    lines = []
    if ctx.artifacts_here:
        lines.append("Artifacts in your cell:")
        lines += [f"  A({name}): {payload}" for name, payload in ctx.artifacts_here]
    if ctx.last_rejection:
        lines.append(f"Your previous action was rejected: {ctx.last_rejection}")
    return "\n".join(lines)


def render_actions(actions: Dict[ActionKind, Dict[str, Any]]) -> Tuple[str, str]:
    keyed = {prompt_key(kind): schema for kind, schema in actions.items()}
    return json.dumps(keyed, indent=4, ensure_ascii=False), ", ".join(keyed)


def motivation_text(variant: str) -> str:
    if variant == "none":
        return ""
    return template_text(f"motivation_{variant}").rstrip("\n")


def assemble_prompts(ctx: PromptContext) -> Tuple[str, str]:
    """System and user prompt for one agent at one step."""
    system = Template(template_text("system")).substitute(
        agent_name=ctx.agent.name,
        memory_limit=ctx.memory_limit,
        artifact_rules=template_text("artifact_rules"),
        motivation=motivation_text(ctx.motivation),
    )

    actions, action_keys = render_actions(ctx.actions)
    genome = render_traits(ctx.agent.genome) if ctx.show_genome and ctx.agent.genome else ""
    user = Template(template_text("user")).substitute(
        history=render_history(ctx.history, ctx.history_len),
        genome=genome,
        observation=_or("\n".join(f" {line}" for line in ctx.observation_lines), "<nothing in view>"),
        messages=_or("\n".join(f"{m.sender}: {m.text} " for m in ctx.inbox), "<none>"),
        energy=ctx.agent.energy,
        time_left=ctx.agent.time_left,
        inventory=_or("\n".join(f"{name}: {payload}" for name, payload in ctx.inventory), "<empty>"),
        memory=_or(ctx.memory, "<empty>"),
        additional_info=render_additional_info(ctx),
        actions=actions,
        action_keys=action_keys,
    )
    return system, user
