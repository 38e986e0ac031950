from .grid import FoodMode, GridConfig, Position, wrap, distance, relative, neighborhood, adjacent
from .food import FoodItem, spawn_food, decay_food, place_initial_food, draw_cluster_centers
from .state import World
from .observation import CellEntry, CellView, observe

__all__ = [
    'FoodMode', 'GridConfig', 'Position', 'wrap', 'distance', 'relative', 'neighborhood', 'adjacent',
    'FoodItem', 'spawn_food', 'decay_food', 'place_initial_food', 'draw_cluster_centers',
    'World', 'CellEntry', 'CellView', 'observe',
]
