"""
Agent state, population seeding and the per-step vitals tick.
"""

from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Tuple

import numpy as np

from src.beings.genome import Genome, sample_genome
from src.errors import WorldFull
from src.world.grid import GridConfig, Position

STARVATION = "starvation"
AGE = "age"


@dataclass
class AgentState:
    id: str
    name: str
    pos: Position
    energy: float
    time_left: int
    genome: Optional[Genome] = None
    inventory: List[str] = field(default_factory=list)
    memory: str = ""
    parent: Optional[str] = None
    born_at: int = 0
    alive: bool = True


def init_population(
    n: int,
    grid: GridConfig,
    rng: np.random.Generator,
    initial_energy: float = 50,
    lifespan: int = 100,
    with_genome: bool = True,
    occupied: Iterable[Position] = (),
    id_factory=None,
) -> List[AgentState]:
    """``n`` agents on distinct random free cells, named being0 .. being{n-1}."""
    if n < 1:
        raise ValueError("Population size must be at least 1")
    taken = {(p.x, p.y) for p in occupied}
    free = [i for i in range(grid.cells) if (i % grid.width, i // grid.width) not in taken]
    if n > len(free):
        raise WorldFull(f"Cannot place {n} agents on {len(free)} free cells")
    chosen = rng.choice(len(free), size=n, replace=False)
    agents = []
    for k, idx in enumerate(chosen):
        cell = free[int(idx)]
        agent_id = id_factory() if id_factory else f"ag-{k + 1:05d}"
        agents.append(
            AgentState(
                id=agent_id,
                name=f"being{k}",
                pos=Position(cell % grid.width, cell // grid.width),
                energy=initial_energy,
                time_left=lifespan,
                genome=sample_genome(rng) if with_genome else None,
            )
        )
    return agents


def death_cause(a: AgentState) -> Optional[str]:
    if a.energy <= 0:
        return STARVATION
    if a.time_left <= 0:
        return AGE
    return None


def tick_vitals(a: AgentState) -> Tuple[AgentState, Optional[str]]:
    """One turn of metabolism and ageing. Returns the new state and a death cause, if any."""
    if not a.alive:
        raise ValueError(f"Agent {a.id} is already dead")
    ticked = replace(a, energy=a.energy - 1, time_left=a.time_left - 1)
    cause = death_cause(ticked)
    if cause:
        ticked.alive = False
    return ticked, cause
