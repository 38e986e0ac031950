import numpy as np
import pytest

from src.beings import (
    AGE,
    STARVATION,
    Genome,
    MutationConfig,
    PERSONALITY_TRAITS,
    init_population,
    mutate,
    render_traits,
    sample_genome,
    tick_vitals,
    truncate_memory,
)
from src.errors import WorldFull
from tests.conftest import make_agent, small_grid

NEUTRAL = dict(
    honesty=0.0, neuroticism=0.0, extraversion=0.0, agreeableness=0.0,
    conscientiousness=0.0, openness=0.0, dominance=0.0, fertility=0.75,
)


class TestGenome:
    def test_sampled_traits_stay_in_range(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            g = sample_genome(rng)
            assert all(-1.0 <= getattr(g, t) <= 1.0 for t in PERSONALITY_TRAITS)
            assert 0.5 <= g.fertility <= 1.0

    def test_sampled_trait_means(self):
        rng = np.random.default_rng(12)
        genomes = [sample_genome(rng) for _ in range(10_000)]
        for trait in PERSONALITY_TRAITS:
            assert abs(np.mean([getattr(g, trait) for g in genomes])) < 0.03
        assert np.mean([g.fertility for g in genomes]) == pytest.approx(0.75, abs=0.02)

    def test_out_of_range_trait_is_rejected(self):
        with pytest.raises(ValueError):
            Genome(**dict(NEUTRAL, openness=1.5))
        with pytest.raises(ValueError):
            Genome(**dict(NEUTRAL, fertility=0.2))

    def test_mutation_touches_about_half_the_traits(self):
        rng = np.random.default_rng(2024)
        parent = Genome(**NEUTRAL)
        cfg = MutationConfig(per_trait_prob=0.5, sigma=0.3)
        changed = 0
        draws = 0
        for _ in range(10_000):
            child = mutate(parent, cfg, rng)
            for name, value in child.as_dict().items():
                draws += 1
                changed += value != NEUTRAL[name]
        assert abs(changed / draws - 0.5) < 0.02

    def test_mutation_is_clipped(self):
        rng = np.random.default_rng(5)
        parent = Genome(**dict(NEUTRAL, openness=1.0, fertility=1.0))
        cfg = MutationConfig(per_trait_prob=1.0, sigma=5.0)
        for _ in range(100):
            child = mutate(parent, cfg, rng)
            assert -1.0 <= child.openness <= 1.0
            assert 0.5 <= child.fertility <= 1.0

    def test_zero_probability_returns_parent(self):
        parent = Genome(**NEUTRAL)
        assert mutate(parent, MutationConfig(per_trait_prob=0.0), np.random.default_rng(0)) is parent

    def test_render_traits_shows_three_decimals(self):
        text = render_traits(Genome(**dict(NEUTRAL, honesty=0.12345)))
        assert text.startswith("=== Your Traits ===")
        assert "honesty value: 0.123" in text
        assert "fertility value: 0.750" in text


class TestPopulation:
    def test_agents_get_distinct_cells_and_sequential_names(self):
        agents = init_population(10, small_grid(), np.random.default_rng(3))
        assert [a.name for a in agents] == [f"being{i}" for i in range(10)]
        assert len({a.pos for a in agents}) == 10
        assert all(a.energy == 50 and a.time_left == 100 for a in agents)

    def test_occupied_cells_are_avoided(self):
        grid = small_grid()
        occupied = [(x, y) for x in range(11) for y in range(11) if (x, y) != (4, 4)]
        from src.world.grid import Position
        agents = init_population(1, grid, np.random.default_rng(0), occupied=[Position(*p) for p in occupied])
        assert agents[0].pos == (4, 4)

    def test_too_many_agents_raise_world_full(self):
        with pytest.raises(WorldFull):
            init_population(122, small_grid(), np.random.default_rng(0))

    def test_genome_can_be_disabled(self):
        agents = init_population(3, small_grid(), np.random.default_rng(0), with_genome=False)
        assert all(a.genome is None for a in agents)


class TestVitals:
    def test_tick_costs_one_energy_and_one_step(self):
        agent, cause = tick_vitals(make_agent("ag-00001", "being0", 0, 0, energy=10, time_left=5))
        assert (agent.energy, agent.time_left, cause) == (9, 4, None)
        assert agent.alive

    def test_starvation_wins_over_age(self):
        agent, cause = tick_vitals(make_agent("ag-00001", "being0", 0, 0, energy=1, time_left=1))
        assert cause == STARVATION
        assert not agent.alive

    def test_old_age(self):
        _, cause = tick_vitals(make_agent("ag-00001", "being0", 0, 0, energy=30, time_left=1))
        assert cause == AGE

    def test_dead_agent_cannot_tick(self):
        agent = make_agent("ag-00001", "being0", 0, 0)
        agent.alive = False
        with pytest.raises(ValueError):
            tick_vitals(agent)


class TestMemory:
    def test_short_memory_is_untouched(self):
        assert truncate_memory("a  b c") == "a  b c"

    def test_long_memory_keeps_latest_tokens(self):
        text = " ".join(f"w{i}" for i in range(300))
        kept = truncate_memory(text).split()
        assert len(kept) == 250
        assert kept[0] == "w50"
        assert kept[-1] == "w299"
