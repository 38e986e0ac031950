import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from src.errors import NoSuchAgent
from src.rng import substream
from src.world.food import (
    FoodItem,
    decay_food,
    draw_cluster_centers,
    place_initial_food,
    sample_food_cell,
    spawn_food,
)
from src.world.grid import FoodMode, GridConfig, Position, adjacent, distance, neighborhood, relative, wrap
from src.world.observation import observe
from tests.conftest import make_agent, make_world, put_artifact, small_grid


class TestGeometry:
    def test_wrap_brings_points_back_onto_torus(self):
        g = small_grid()
        assert wrap((-1, 11), g) == Position(10, 0)
        assert wrap((22, -12), g) == Position(0, 10)

    def test_distance_is_toroidal_chebyshev(self):
        g = small_grid()
        assert distance(Position(0, 0), Position(10, 10), g) == 1
        assert distance(Position(0, 0), Position(5, 2), g) == 5
        assert distance(Position(3, 3), Position(3, 3), g) == 0

    def test_relative_offset_takes_the_short_way(self):
        g = small_grid()
        assert relative(Position(0, 0), Position(10, 1), g) == (-1, 1)
        assert relative(Position(1, 1), Position(3, 0), g) == (2, -1)

    def test_neighborhood_size(self):
        g = small_grid()
        assert len(neighborhood(Position(0, 0), 2, g)) == 25
        assert len(neighborhood(Position(0, 0), 0, g)) == 1
        with pytest.raises(ValueError):
            neighborhood(Position(0, 0), -1, g)

    def test_adjacent_has_eight_distinct_cells(self):
        g = small_grid()
        cells = adjacent(Position(0, 0), g)
        assert len(cells) == 8
        assert Position(0, 0) not in cells
        assert Position(10, 10) in cells

    def test_grid_smaller_than_perception_window_is_rejected(self):
        with pytest.raises(ValidationError):
            GridConfig(width=5, height=50, perception_radius=6)

    def test_food_value_range_must_be_ordered(self):
        with pytest.raises(ValidationError):
            small_grid(food_value_min=12, food_value_max=10)


class TestFood:
    def test_food_item_value_must_be_positive(self):
        with pytest.raises(ValueError):
            FoodItem(pos=Position(0, 0), value=0, born_at=0)

    def test_initial_food_places_distinct_items(self):
        world = make_world(grid=small_grid(initial_food=20, food_mode=FoodMode.UNIFORM))
        place_initial_food(world, np.random.default_rng(1))
        assert 0 < len(world.food) <= 20
        assert all(item.value == 10.0 for item in world.food.values())

    def test_zero_spawn_rate_adds_nothing(self):
        world = make_world()
        spawn_food(world, np.random.default_rng(0))
        assert world.food == {}

    def test_spawn_is_deterministic_for_a_seed(self):
        def spawned(seed):
            world = make_world(grid=small_grid(food_spawn_rate=5.0, food_mode=FoodMode.UNIFORM))
            rng = np.random.default_rng(seed)
            for _ in range(10):
                spawn_food(world, rng)
            return sorted(world.food)

        assert spawned(3) == spawned(3)

    def test_decay_probability_one_clears_the_field(self):
        world = make_world(grid=small_grid(initial_food=15, food_decay_prob=1.0, food_mode=FoodMode.UNIFORM))
        rng = np.random.default_rng(2)
        place_initial_food(world, rng)
        decay_food(world, rng)
        assert world.food == {}

    def test_uniform_spawn_cells_pass_chi_square(self):
        grid = GridConfig(width=50, height=50, perception_radius=6, food_mode=FoodMode.UNIFORM)
        rng = np.random.default_rng(2024)
        counts = np.zeros(grid.width * grid.height)
        for _ in range(100_000):
            pos = sample_food_cell(grid, [], rng)
            counts[pos.y * grid.width + pos.x] += 1
        assert stats.chisquare(counts).pvalue > 0.01

    def test_clustered_spawns_stay_near_centers(self):
        grid = GridConfig(width=50, height=50, perception_radius=6, cluster_count=1)
        center = Position(25, 25)
        rng = np.random.default_rng(5)
        cells = [sample_food_cell(grid, [center], rng) for _ in range(2000)]
        assert np.mean([distance(c, center, grid) for c in cells]) < 6

    def test_cluster_centers_only_in_clustered_mode(self):
        rng = np.random.default_rng(0)
        assert draw_cluster_centers(small_grid(food_mode=FoodMode.UNIFORM), rng) == []
        assert len(draw_cluster_centers(small_grid(cluster_count=4), rng)) == 4

    def test_integer_food_values(self):
        grid = small_grid(initial_food=30, food_integer_values=True, food_value_min=5, food_value_max=9,
                          food_mode=FoodMode.UNIFORM)
        world = make_world(grid=grid)
        place_initial_food(world, substream(7, "world"))
        assert all(isinstance(item.value, int) and 5 <= item.value <= 9 for item in world.food.values())


class TestWorldState:
    def test_get_agent_raises_for_unknown_id(self):
        world = make_world(make_agent("ag-00001", "being0", 0, 0))
        with pytest.raises(NoSuchAgent):
            world.get_agent("ag-00099")

    def test_placing_on_occupied_cell_fails(self):
        world = make_world(make_agent("ag-00001", "being0", 0, 0))
        with pytest.raises(ValueError):
            world.place_agent(make_agent("ag-00002", "being1", 0, 0))

    def test_move_updates_occupancy(self):
        agent = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(agent)
        world.move_agent(agent, Position(1, 0))
        assert world.agent_at(Position(1, 0)) is agent
        assert world.agent_at(Position(0, 0)) is None

    def test_neighbors_within_perception_radius(self):
        a = make_agent("ag-00001", "being0", 0, 0)
        b = make_agent("ag-00002", "being1", 2, 2)
        c = make_agent("ag-00003", "being2", 5, 5)
        world = make_world(a, b, c)
        assert [n.id for n in world.neighbors_of(a)] == ["ag-00002"]


class TestObservation:
    def test_cells_rendered_north_to_south(self):
        me = make_agent("ag-00001", "being0", 5, 5)
        other = make_agent("ag-00002", "being1", 6, 7)
        world = make_world(me, other)
        world.food[Position(4, 4)] = FoodItem(pos=Position(4, 4), value=10.0, born_at=0)
        put_artifact(world, "sign", pos=(5, 5))
        views, text = observe("ag-00001", world)
        assert [v.rel for v in views] == [(1, 2), (0, 0), (-1, -1)]
        assert text.splitlines() == ["(1, 2): being1", "(0, 0): A(sign)", "(-1, -1): 10.0"]

    def test_inert_artifacts_are_hidden(self):
        me = make_agent("ag-00001", "being0", 5, 5)
        world = make_world(me)
        put_artifact(world, "sign", pos=(5, 5))
        views, text = observe("ag-00001", world, show_artifacts=False)
        assert views == []
        assert text == ""

    def test_observe_wraps_around_edges(self):
        me = make_agent("ag-00001", "being0", 0, 0)
        other = make_agent("ag-00002", "being1", 10, 10)
        world = make_world(me, other)
        views, _ = observe("ag-00001", world)
        assert [v.rel for v in views] == [(-1, -1)]

    def test_food_renders_by_value_type(self):
        me = make_agent("ag-00001", "being0", 5, 5)
        world = make_world(me)
        world.food[Position(5, 4)] = FoodItem(pos=Position(5, 4), value=4, born_at=0)
        world.food[Position(6, 6)] = FoodItem(pos=Position(6, 6), value=10.0, born_at=0)
        _, text = observe("ag-00001", world)
        assert text.splitlines() == ["(1, 1): 10.0", "(0, -1): 4"]
