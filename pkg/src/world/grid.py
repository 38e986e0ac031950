"""
Toroidal grid geometry.

Coordinates follow the agents' frame: x grows to the East (right), y grows
to the North (up). Every position is kept wrapped into [0, width) x [0, height).
"""

from enum import Enum
from typing import Iterable, List, NamedTuple, Set, Tuple

from pydantic import BaseModel, Field, model_validator


class FoodMode(str, Enum):
    UNIFORM = "uniform"
    CLUSTERED = "clustered"


class GridConfig(BaseModel):
    """Grid size, perception and food dynamics."""

    width: int = Field(50, gt=0)
    height: int = Field(50, gt=0)
    perception_radius: int = Field(6, ge=0)
    food_mode: FoodMode = FoodMode.CLUSTERED
    cluster_count: int = Field(3, ge=1)
    food_decay_prob: float = Field(0.02, ge=0.0, le=1.0)
    food_spawn_rate: float = Field(1.0, ge=0.0)
    food_value_min: float = Field(10.0, gt=0.0)
    food_value_max: float = Field(10.0, gt=0.0)
    initial_food: int = Field(60, ge=0)
    food_integer_values: bool = False

    @model_validator(mode="after")
    def _check_shape(self):
        span = 2 * self.perception_radius + 1
        if self.width < span or self.height < span:
            raise ValueError(
                f"Grid {self.width}x{self.height} is smaller than the perception window {span}x{span}"
            )
        if self.food_value_min > self.food_value_max:
            raise ValueError("food_value_min must not exceed food_value_max")
        return self

    @property
    def cells(self) -> int:
        return self.width * self.height


class Position(NamedTuple):
    x: int
    y: int


def wrap(p: Tuple[int, int], g: GridConfig) -> Position:
    """Bring a raw integer pair back onto the torus."""
    return Position(int(p[0]) % g.width, int(p[1]) % g.height)


def _axis_delta(a: int, b: int, size: int) -> int:
    """Signed shortest displacement from a to b on a ring of the given size."""
    d = (b - a) % size
    if d > size // 2:
        d -= size
    return d


def relative(origin: Position, target: Position, g: GridConfig) -> Tuple[int, int]:
    """Shortest toroidal offset (dx, dy) from origin to target."""
    return _axis_delta(origin.x, target.x, g.width), _axis_delta(origin.y, target.y, g.height)


def distance(a: Position, b: Position, g: GridConfig) -> int:
    """Toroidal Chebyshev distance."""
    dx = abs(a.x - b.x) % g.width
    dy = abs(a.y - b.y) % g.height
    return max(min(dx, g.width - dx), min(dy, g.height - dy))


def offsets(r: int) -> Iterable[Tuple[int, int]]:
    """Square window offsets, rows from North to South, West to East in a row."""
    for dy in range(r, -r - 1, -1):
        for dx in range(-r, r + 1):
            yield dx, dy


def neighborhood(center: Position, r: int, g: GridConfig) -> Set[Position]:
    if r < 0:
        raise ValueError("radius must be non-negative")
    return {wrap((center.x + dx, center.y + dy), g) for dx, dy in offsets(r)}


def adjacent(center: Position, g: GridConfig) -> List[Position]:
    """Distinct neighbours of a cell (8 on grids of side 3 or more), in a fixed order."""
    cells = (wrap((center.x + dx, center.y + dy), g) for dx, dy in offsets(1))
    return [p for p in dict.fromkeys(cells) if p != center]
