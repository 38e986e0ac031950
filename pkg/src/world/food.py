"""
Food field dynamics: initial placement, stochastic spawning and decay.

Regeneration is not part of the original world description; the spawn
process here (Poisson arrivals, uniform or clustered placement) is this
project's own choice and its rates live in the preset table.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.world.grid import FoodMode, GridConfig, Position, wrap

logger = logging.getLogger(__name__)

# Extra draws allowed when a spawn lands on a cell that already holds food.
MAX_RESAMPLES = 8


@dataclass(frozen=True)
class FoodItem:
    pos: Position
    value: float
    born_at: int

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError(f"Food value must be positive, got {self.value}")


def draw_cluster_centers(g: GridConfig, rng: np.random.Generator) -> List[Position]:
    """Fixed cluster centres, drawn once per world."""
    if g.food_mode != FoodMode.CLUSTERED:
        return []
    return [
        Position(int(rng.integers(g.width)), int(rng.integers(g.height)))
        for _ in range(g.cluster_count)
    ]


def cluster_sigma(g: GridConfig) -> float:
    return g.perception_radius / 2.0


def sample_food_cell(g: GridConfig, centers: List[Position], rng: np.random.Generator) -> Position:
    """One candidate cell for a new food item."""
    if g.food_mode == FoodMode.UNIFORM or not centers:
        return Position(int(rng.integers(g.width)), int(rng.integers(g.height)))
    center = centers[int(rng.integers(len(centers)))]
    sigma = cluster_sigma(g)
    dx = int(np.rint(rng.normal(0.0, sigma)))
    dy = int(np.rint(rng.normal(0.0, sigma)))
    return wrap((center.x + dx, center.y + dy), g)


def sample_food_value(g: GridConfig, rng: np.random.Generator) -> float:
    if g.food_integer_values:
        return int(rng.integers(int(np.ceil(g.food_value_min)), int(np.floor(g.food_value_max)) + 1))
    if g.food_value_min == g.food_value_max:
        return float(g.food_value_min)
    return float(rng.uniform(g.food_value_min, g.food_value_max))


def _place_one(world, rng: np.random.Generator) -> Optional[FoodItem]:
    g = world.grid
    for _ in range(MAX_RESAMPLES + 1):
        pos = sample_food_cell(g, world.cluster_centers, rng)
        if pos not in world.food:
            item = FoodItem(pos=pos, value=sample_food_value(g, rng), born_at=world.t)
            world.food[pos] = item
            return item
    return None


def place_initial_food(world, rng: np.random.Generator):
    """Seed the world with ``initial_food`` items using the spawn sampler."""
    for _ in range(world.grid.initial_food):
        _place_one(world, rng)
    return world


def spawn_food(world, rng: np.random.Generator):
    """Poisson(food_spawn_rate) new items, at most one item per cell."""
    rate = world.grid.food_spawn_rate
    if rate <= 0:
        return world
    skipped = 0
    for _ in range(int(rng.poisson(rate))):
        if _place_one(world, rng) is None:
            skipped += 1
    if skipped:
        logger.debug(f"Skipped {skipped} food spawns at t={world.t}: no free cell after resampling")
    return world


def decay_food(world, rng: np.random.Generator):
    """Remove each item independently with probability food_decay_prob."""
    p = world.grid.food_decay_prob
    if p <= 0:
        return world
    for pos in sorted(world.food):
        if rng.random() < p:
            del world.food[pos]
    return world
