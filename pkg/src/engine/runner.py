"""
The timestep loop.

Phase order within a step is fixed: vitals, message hand-out, contexts,
decisions, resolution, artifact ageing, food decay, food spawn, records.
The engine is the only code that mutates the world during a run.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Deque, Dict, List, Optional, Set, Tuple, Union

from src.acts.affordance import afford
from src.acts.artifact import age_artifacts
from src.acts.requests import ActionOutcome, prompt_key
from src.acts.resolver import artifact_event, resolve_step
from src.beings.agent import AgentState, init_population, tick_vitals
from src.beings.memory import truncate_memory
from src.engine.config import RunConfig
from src.engine.log_writer import RunWriter
from src.engine.replay import world_init_event
from src.minds.inbox import deliver_messages
from src.minds.policies import Policy, decide
from src.minds.prompts import HistoryEntry, PromptContext, template_checksums
from src.minds.reply_parser import PolicyDecision
from src.models import (
    ActionRecord,
    InboxMessage,
    LogHeader,
    ObservationRecord,
    RunSummary,
    StepRecord,
)
from src.rng import substream
from src.world.food import decay_food, draw_cluster_centers, place_initial_food, spawn_food
from src.world.observation import BEING, observe
from src.world.state import World

logger = logging.getLogger(__name__)


@dataclass
class StepResult:
    t: int
    records: List[StepRecord]
    events: List[dict]
    extinct: bool


class Engine:
    """Runs one simulation from a RunConfig and a decision policy"""

    def __init__(self, config: RunConfig, policy: Policy):
        self.config = config
        self.policy = policy
        self.rules = config.act_rules()
        self.rng = substream(config.seed, "world")
        self.world = self._init_world()
        self.init_event = world_init_event(self.world)

        self._history: Dict[str, Deque[HistoryEntry]] = {}
        self._pending: Dict[str, List[InboxMessage]] = {}
        self._rejections: Dict[str, str] = {}
        self._ate: Set[str] = set()
        self.population: List[int] = []
        self.extinct_at: Optional[int] = None

    def _init_world(self) -> World:
        cfg = self.config
        world = World(grid=cfg.grid)
        world.cluster_centers = draw_cluster_centers(cfg.grid, self.rng)
        place_initial_food(world, self.rng)
        agents = init_population(
            cfg.n_agents,
            cfg.grid,
            self.rng,
            initial_energy=cfg.initial_energy,
            lifespan=cfg.lifespan,
            with_genome=cfg.personality,
            occupied=list(world.food),
            id_factory=world.next_agent_id,
        )
        for agent in agents:
            world.place_agent(agent)
        return world

    # phases

    def _tick(self, t: int) -> List[dict]:
        world = self.world
        events = [{"type": "tick", "t": t}]
        for agent_id in sorted(world.agents):
            ticked, cause = tick_vitals(world.agents[agent_id])
            world.agents[agent_id] = ticked
            if cause:
                events.append(self._kill(ticked, cause, t))
        return events

    def _kill(self, agent: AgentState, cause: str, t: int) -> dict:
        world = self.world
        dropped = list(agent.inventory)
        for name in dropped:
            artifact = world.artifacts[name]
            artifact.holder = None
            artifact.pos = agent.pos
        agent.inventory = []
        world.remove_agent(agent.id)
        self._history.pop(agent.id, None)
        self._rejections.pop(agent.id, None)
        return {"type": "death", "t": t, "agent": agent.id, "name": agent.name, "cause": cause,
                "pos": list(agent.pos), "dropped": dropped}

    def build_context(self, agent: AgentState, inbox: List[InboxMessage]) -> PromptContext:
        cfg = self.config
        world = self.world
        cells, _ = observe(agent.id, world, show_artifacts=cfg.artifacts_interactive)
        here = world.artifacts_at(agent.pos) if cfg.artifacts_interactive else []
        return PromptContext(
            agent=agent,
            t=world.t,
            cells=cells,
            inbox=inbox,
            history=list(self._history.get(agent.id, ())),
            history_len=cfg.history_len,
            inventory=[(name, world.artifacts[name].payload) for name in agent.inventory],
            artifacts_here=[(a.name, a.payload) for a in here],
            actions=afford(agent, world, self.rules),
            motivation=cfg.motivation,
            show_genome=cfg.personality,
            memory_limit=cfg.memory_soft,
            last_rejection=self._rejections.get(agent.id),
            ate_last_step=agent.id in self._ate,
            reproduce_cost=cfg.reproduce_cost,
            seed=cfg.seed,
        )

    def _gather(self, contexts: Dict[str, PromptContext]) -> Dict[str, PolicyDecision]:
        order = sorted(contexts)
        workers = self.config.decision_workers
        if workers <= 1 or len(order) <= 1:
            results = [decide(self.policy, contexts[k]) for k in order]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda k: decide(self.policy, contexts[k]), order))
        decisions = {}
        for agent_id, decision in zip(order, results):
            if decision.request.agent != agent_id:
                decision.request = replace(decision.request, agent=agent_id)
            decisions[agent_id] = decision
        return decisions

    def _food(self, t: int) -> List[dict]:
        world = self.world
        events = []
        before = dict(world.food)
        decay_food(world, self.rng)
        for pos in sorted(p for p in before if p not in world.food):
            events.append({"type": "food_decay", "t": t, "pos": list(pos), "value": before[pos].value})
        present = set(world.food)
        spawn_food(world, self.rng)
        for pos, item in world.food.items():
            if pos not in present:
                events.append({"type": "food_spawn", "t": t, "pos": list(pos), "value": item.value})
        return events

    def _record(
        self,
        ctx: PromptContext,
        energy: float,
        decision: PolicyDecision,
        outcome: ActionOutcome,
    ) -> StepRecord:
        agent = self.world.agents.get(ctx.agent.id, ctx.agent)
        req = outcome.request
        return StepRecord(
            t=ctx.t,
            agent_id=agent.id,
            agent_name=agent.name,
            action=ActionRecord(
                kind=req.kind.value,
                params=req.params,
                status=outcome.status,
                reason=outcome.reason.value if outcome.reason else None,
            ),
            message=decision.message,
            memory_after=agent.memory,
            observation=ObservationRecord(
                cells=ctx.observation_lines,
                visible_agents=[e.ref for c in ctx.cells for e in c.entries if e.kind == BEING],
                inbox=ctx.inbox,
                energy=energy,
                time_left=ctx.agent.time_left,
                inventory=[name for name, _ in ctx.inventory],
            ),
            events=[dict(e, t=ctx.t) for e in outcome.effects],
            thoughts=decision.rationale,
            llm=decision.exchange if self.config.archive_llm else None,
        )

    def step(self) -> StepResult:
        """Advance the world by one timestep."""
        world = self.world
        world.t += 1
        t = world.t
        events = self._tick(t)
        if not world.agents:
            self.extinct_at = t
            return StepResult(t=t, records=[], events=events, extinct=True)

        inboxes, self._pending = self._pending, {}
        contexts: Dict[str, PromptContext] = {}
        energies: Dict[str, float] = {}
        for agent_id in sorted(world.agents):
            agent = world.agents[agent_id]
            contexts[agent_id] = self.build_context(agent, inboxes.get(agent_id, []))
            energies[agent_id] = agent.energy
        self.population.append(len(contexts))

        decisions = self._gather(contexts)
        positions = {agent_id: world.agents[agent_id].pos for agent_id in contexts}
        for agent_id, decision in decisions.items():
            world.agents[agent_id].memory = truncate_memory(
                decision.new_memory, self.config.memory_soft, self.config.memory_hard
            )
        self._pending = deliver_messages(decisions, world, positions)

        order = sorted(contexts)
        outcomes = resolve_step([decisions[k].request for k in order], world, self.rng, self.rules)
        by_agent = {o.request.agent: o for o in outcomes}
        for outcome in sorted(outcomes, key=lambda o: o.seq):
            events.extend(dict(e, t=t) for e in outcome.effects)

        events.append({"type": "age", "t": t})
        for artifact in age_artifacts(world):
            events.append(dict(artifact_event("expire", artifact, None), t=t))
        events.extend(self._food(t))

        records = []
        self._ate = set()
        for agent_id in order:
            ctx, decision, outcome = contexts[agent_id], decisions[agent_id], by_agent[agent_id]
            records.append(self._record(ctx, energies[agent_id], decision, outcome))
            if outcome.applied:
                self._rejections.pop(agent_id, None)
                if any(e["type"] == "eat" and e["agent"] == agent_id for e in outcome.effects):
                    self._ate.add(agent_id)
            else:
                self._rejections[agent_id] = outcome.reason.value
            self._history.setdefault(agent_id, deque(maxlen=self.config.history_len)).append(
                HistoryEntry(
                    t=t,
                    energy=energies[agent_id],
                    inbox=ctx.inbox,
                    observation=ctx.observation_lines,
                    action=prompt_key(outcome.request.kind),
                    params=outcome.request.params,
                    message=decision.message,
                )
            )
        return StepResult(t=t, records=records, events=events, extinct=False)

    def header(self) -> LogHeader:
        return LogHeader(
            run_id=self.config.run_id,
            config=self.config.model_dump(mode="json"),
            templates=template_checksums(),
        )

    def run(self, writer: Optional[RunWriter] = None) -> RunSummary:
        """Step until extinction or max_steps, streaming to ``writer`` if given."""
        cfg = self.config
        if writer:
            writer.write_header(self.header())
            writer.write_events([self.init_event])
        logger.info(f"Starting run {cfg.run_id}: {len(self.world.agents)} agents, {cfg.max_steps} steps max")
        for _ in range(cfg.max_steps):
            result = self.step()
            if writer:
                writer.write_records(result.records)
                writer.write_events(result.events)
            if result.extinct:
                logger.info(f"Run {cfg.run_id}: population extinct at t={result.t}")
                break
            if cfg.progress_every and result.t % cfg.progress_every == 0:
                logger.info(
                    f"Run {cfg.run_id}: t={result.t} population={len(self.world.agents)} "
                    f"artifacts={len(self.world.artifacts)}"
                )
        summary = self.summary()
        if writer:
            writer.write_summary(summary)
        return summary

    def summary(self) -> RunSummary:
        world = self.world
        total_agents = world.agents_ever
        longevity = self.extinct_at if self.extinct_at is not None else world.t
        return RunSummary(
            run_id=self.config.run_id,
            seed=self.config.seed,
            preset=self.config.preset.value,
            longevity=longevity,
            steps=world.t,
            extinct=self.extinct_at is not None,
            total_artifacts=world.artifacts_ever,
            total_agents=total_agents,
            artifacts_per_agent=world.artifacts_ever / total_agents if total_agents else 0.0,
            mean_population=sum(self.population) / len(self.population) if self.population else 0.0,
        )


def run(config: RunConfig, policy: Policy, out_dir: Optional[Union[str, Path]] = None) -> RunSummary:
    """Run one simulation; writes the run directory when ``out_dir`` is given."""
    engine = Engine(config, policy)
    if out_dir is None:
        return engine.run()
    with RunWriter(out_dir) as writer:
        return engine.run(writer)
