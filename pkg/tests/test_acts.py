import numpy as np
import pytest

from src.acts import (
    ActionKind,
    ActionRequest,
    ActRules,
    RejectReason,
    afford,
    age_artifacts,
    parse_kind,
    prompt_key,
    resolve_step,
    validate,
)
from src.beings.genome import Genome
from src.world.food import FoodItem
from src.world.grid import Position
from tests.conftest import make_agent, make_world, put_artifact

K = ActionKind


def req(agent, kind, **params):
    return ActionRequest(agent=agent, kind=kind, params=params)


def pair(energy_a=50, energy_b=50, b_at=(1, 0)):
    a = make_agent("ag-00001", "being0", 0, 0, energy=energy_a)
    b = make_agent("ag-00002", "being1", *b_at, energy=energy_b)
    return a, b, make_world(a, b)


class TestVocabulary:
    def test_prompt_names_map_to_canonical_kinds(self):
        assert parse_kind("give") == K.GIVE_ENERGY
        assert parse_kind(" Take ") == K.TAKE_ENERGY
        assert parse_kind("create_artifact") == K.CREATE_ARTIFACT
        assert parse_kind("fly") is None
        assert parse_kind(3) is None

    def test_prompt_key_round_trip(self):
        for kind in ActionKind:
            assert parse_kind(prompt_key(kind)) == kind
        assert prompt_key(K.GIVE_ENERGY) == "give"
        assert prompt_key(K.MOVE) == "move"


class TestAffordance:
    def test_lonely_agent_with_low_energy_can_only_move_and_create(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0, energy=10)
        world = make_world(a)
        assert list(afford(a, world, rules)) == [K.MOVE, K.CREATE_ARTIFACT]

    def test_neighbor_unlocks_energy_exchange(self, rules):
        a, _, world = pair()
        assert list(afford(a, world, rules)) == [K.MOVE, K.GIVE_ENERGY, K.TAKE_ENERGY, K.CREATE_ARTIFACT]

    def test_neighbor_outside_radius_does_not_count(self, rules):
        a, _, world = pair(b_at=(3, 0))
        assert K.GIVE_ENERGY not in afford(a, world, rules)

    def test_reproduce_needs_strictly_more_than_cost(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0, energy=50)
        assert K.REPRODUCE not in afford(a, make_world(a), rules)
        a.energy = 50.5
        assert K.REPRODUCE in afford(a, make_world(a), rules)

    def test_artifact_cost_gates_creation(self):
        a = make_agent("ag-00001", "being0", 0, 0, energy=10)
        world = make_world(a)
        assert K.CREATE_ARTIFACT not in afford(a, world, ActRules(artifact_cost=10))
        assert K.CREATE_ARTIFACT in afford(a, world, ActRules(artifact_cost=9))

    def test_artifact_here_unlocks_pickup_modify_destroy(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        put_artifact(world, "sign", pos=(0, 0))
        kinds = list(afford(a, world, rules))
        assert kinds == [K.MOVE, K.CREATE_ARTIFACT, K.PICKUP_ARTIFACT, K.MODIFY_ARTIFACT, K.DESTROY_ARTIFACT]

    def test_held_artifact_with_neighbor(self, rules):
        a, _, world = pair()
        put_artifact(world, "sign", holder="ag-00001")
        kinds = list(afford(a, world, rules))
        assert kinds == [
            K.MOVE, K.GIVE_ENERGY, K.TAKE_ENERGY, K.CREATE_ARTIFACT, K.DROP_ARTIFACT,
            K.GIVE_ARTIFACT, K.MODIFY_ARTIFACT, K.DESTROY_ARTIFACT,
        ]

    def test_inert_artifacts_offer_nothing_but_creation(self):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        put_artifact(world, "sign", pos=(0, 0))
        put_artifact(world, "held", holder="ag-00001")
        kinds = list(afford(a, world, ActRules(artifacts_interactive=False)))
        assert kinds == [K.MOVE, K.CREATE_ARTIFACT]

    def test_schemas_list_accessible_artifact_names(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        put_artifact(world, "floor", pos=(0, 0))
        put_artifact(world, "pocket", holder="ag-00001")
        schema = afford(a, world, rules)[K.MODIFY_ARTIFACT]
        assert "[floor, pocket]" in schema["params"]["artifact_name"]

    def test_reproduce_schema_mentions_cost(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0, energy=80)
        schema = afford(a, make_world(a), rules)[K.REPRODUCE]
        assert "It costs 50 energy." in schema["description"]


class TestValidation:
    def test_unoffered_action_is_not_afforded(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        assert validate(req(a.id, K.GIVE_ENERGY, target="x", amount=1), a, world, rules) == RejectReason.NOT_AFFORDED

    def test_bad_direction(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        assert validate(req(a.id, K.MOVE, direction="north"), a, make_world(a), rules) == RejectReason.BAD_PARAMS

    @pytest.mark.parametrize("amount", [0, -3, "many", 2.5, None])
    def test_bad_amounts(self, rules, amount):
        a, _, world = pair()
        assert validate(req(a.id, K.GIVE_ENERGY, target="being1", amount=amount), a, world, rules) == RejectReason.BAD_AMOUNT

    def test_numeric_string_amount_is_accepted(self, rules):
        a, _, world = pair()
        assert validate(req(a.id, K.GIVE_ENERGY, target="being1", amount="10"), a, world, rules) is None

    def test_unknown_or_self_target(self, rules):
        a, _, world = pair()
        assert validate(req(a.id, K.TAKE_ENERGY, target="ghost", amount=1), a, world, rules) == RejectReason.NO_SUCH_TARGET
        assert validate(req(a.id, K.TAKE_ENERGY, target="being0", amount=1), a, world, rules) == RejectReason.NO_SUCH_TARGET

    def test_duplicate_artifact_name(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        put_artifact(world, "sign", pos=(3, 3))
        request = req(a.id, K.CREATE_ARTIFACT, name="sign", payload="hi", lifespan=5)
        assert validate(request, a, world, rules) == RejectReason.DUPLICATE_NAME

    def test_payload_cap(self):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        rules = ActRules(payload_cap=3)
        ok = req(a.id, K.CREATE_ARTIFACT, name="n", payload="one two three", lifespan=-1)
        long = req(a.id, K.CREATE_ARTIFACT, name="n", payload="one two three four", lifespan=-1)
        assert validate(ok, a, world, rules) is None
        assert validate(long, a, world, rules) == RejectReason.PAYLOAD_TOO_LONG

    @pytest.mark.parametrize("lifespan", [0, -2, "forever", None])
    def test_bad_lifespan(self, rules, lifespan):
        a = make_agent("ag-00001", "being0", 0, 0)
        request = req(a.id, K.CREATE_ARTIFACT, name="n", payload="x", lifespan=lifespan)
        assert validate(request, a, make_world(a), rules) == RejectReason.BAD_PARAMS

    def test_reproduce_name_must_be_unique_among_living(self, rules):
        a, _, world = pair(energy_a=80)
        request = req(a.id, K.REPRODUCE, name="being1", energy=0)
        assert validate(request, a, world, rules) == RejectReason.DUPLICATE_NAME

    def test_reproduce_gift_cannot_exceed_spare_energy(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0, energy=60)
        world = make_world(a)
        assert validate(req(a.id, K.REPRODUCE, name="kid", energy=10), a, world, rules) is None
        assert validate(req(a.id, K.REPRODUCE, name="kid", energy=11), a, world, rules) == RejectReason.BAD_AMOUNT

    def test_cannot_destroy_artifact_elsewhere(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        put_artifact(world, "here", pos=(0, 0))
        put_artifact(world, "there", pos=(4, 4))
        assert validate(req(a.id, K.DESTROY_ARTIFACT, artifact_name="there"), a, world, rules) == RejectReason.NO_SUCH_TARGET
        assert validate(req(a.id, K.DESTROY_ARTIFACT, artifact_name="here"), a, world, rules) is None


class TestResolution:
    def test_move_wraps_and_eats(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0, energy=20)
        world = make_world(a)
        world.food[Position(10, 0)] = FoodItem(pos=Position(10, 0), value=10.0, born_at=0)
        [outcome] = resolve_step([req(a.id, K.MOVE, direction="left")], world, np.random.default_rng(0), rules)
        assert outcome.applied
        assert a.pos == (10, 0)
        assert a.energy == 30
        assert [e["type"] for e in outcome.effects] == ["move", "eat"]
        assert Position(10, 0) not in world.food

    def test_stay_has_no_effects(self, rules):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        [outcome] = resolve_step([req(a.id, K.MOVE, direction="stay")], world, np.random.default_rng(0), rules)
        assert outcome.applied and outcome.effects == []

    def test_two_movers_into_one_cell(self, rules):
        a, b, world = pair(b_at=(2, 0))
        outcomes = resolve_step(
            [req(a.id, K.MOVE, direction="right"), req(b.id, K.MOVE, direction="left")],
            world, np.random.default_rng(4), rules,
        )
        statuses = sorted(o.status for o in outcomes)
        assert statuses == ["applied", "rejected"]
        assert [o.reason for o in outcomes if not o.applied] == [RejectReason.OCCUPIED]
        assert world.agent_at(Position(1, 0)) is not None

    def test_outcomes_come_back_in_request_order(self, rules):
        a, b, world = pair(b_at=(3, 3))
        requests = [req(a.id, K.MOVE, direction="up"), req(b.id, K.MOVE, direction="down")]
        outcomes = resolve_step(requests, world, np.random.default_rng(9), rules)
        assert [o.request.agent for o in outcomes] == [a.id, b.id]
        assert sorted(o.seq for o in outcomes) == [0, 1]

    def test_theft_is_capped_by_victim_energy(self, rules):
        a, b, world = pair(energy_a=10, energy_b=4)
        [outcome] = resolve_step([req(a.id, K.TAKE_ENERGY, target="being1", amount=20)], world, np.random.default_rng(0), rules)
        assert outcome.effects == [{"type": "transfer", "kind": "theft", "src": b.id, "dst": a.id, "amount": 4}]
        assert (a.energy, b.energy) == (14, 0)

    def test_gift_moves_energy(self, rules):
        a, b, world = pair()
        resolve_step([req(a.id, K.GIVE_ENERGY, target="being1", amount=15)], world, np.random.default_rng(0), rules)
        assert (a.energy, b.energy) == (35, 65)

    def test_reproduction_creates_child_next_to_parent(self, rules):
        genome = Genome(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
        a = make_agent("ag-00001", "being0", 5, 5, energy=80)
        a.genome = genome
        world = make_world(a)
        [outcome] = resolve_step([req(a.id, K.REPRODUCE, name="kid", energy=10)], world, np.random.default_rng(1), rules)
        cost, birth = outcome.effects
        assert cost == {"type": "cost", "agent": a.id, "amount": 60, "reason": "reproduce"}
        assert birth["child"] == "ag-00002"
        assert birth["parent"] == a.id
        assert a.energy == 20
        child = world.agent_by_name("kid")
        assert child.energy == 60 and child.time_left == 100 and child.parent == a.id
        assert max(abs(child.pos.x - 5), abs(child.pos.y - 5)) == 1

    def test_reproduction_without_room(self, rules):
        a = make_agent("ag-00001", "being0", 5, 5, energy=80)
        others = [
            make_agent(f"ag-{i + 2:05d}", f"n{i}", 5 + dx, 5 + dy)
            for i, (dx, dy) in enumerate((dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0))
        ]
        world = make_world(a, *others)
        [outcome] = resolve_step([req(a.id, K.REPRODUCE, name="kid", energy=0)], world, np.random.default_rng(1), rules)
        assert outcome.reason == RejectReason.NO_SPACE
        assert a.energy == 80

    def test_artifact_lifecycle(self, rules):
        a, b, world = pair()
        rng = np.random.default_rng(0)
        resolve_step([req(a.id, K.CREATE_ARTIFACT, name="map", payload="food north", lifespan=3)], world, rng, rules)
        assert world.artifacts["map"].pos == (0, 0)
        resolve_step([req(a.id, K.PICKUP_ARTIFACT, name="map")], world, rng, rules)
        assert a.inventory == ["map"]
        [out] = resolve_step([req(a.id, K.GIVE_ARTIFACT, artifact_name="map", target_agent="being1")], world, rng, rules)
        assert out.effects[0]["target"] == b.id
        assert b.inventory == ["map"] and a.inventory == []
        resolve_step([req(b.id, K.MODIFY_ARTIFACT, artifact_name="map", payload="food south", lifespan=-1)], world, rng, rules)
        assert world.artifacts["map"].payload == "food south"
        resolve_step([req(b.id, K.DESTROY_ARTIFACT, artifact_name="map")], world, rng, rules)
        assert "map" not in world.artifacts and b.inventory == []

    def test_second_creator_of_same_name_is_rejected(self, rules):
        a, b, world = pair()
        requests = [
            req(a.id, K.CREATE_ARTIFACT, name="sign", payload="a", lifespan=-1),
            req(b.id, K.CREATE_ARTIFACT, name="sign", payload="b", lifespan=-1),
        ]
        outcomes = resolve_step(requests, world, np.random.default_rng(2), rules)
        assert sorted(o.status for o in outcomes) == ["applied", "rejected"]
        assert [o.reason for o in outcomes if not o.applied] == [RejectReason.DUPLICATE_NAME]

    def test_finite_artifacts_expire(self):
        a = make_agent("ag-00001", "being0", 0, 0)
        world = make_world(a)
        short = put_artifact(world, "short", holder="ag-00001")
        short.lifespan = 1
        put_artifact(world, "forever", pos=(2, 2))
        expired = age_artifacts(world)
        assert [x.name for x in expired] == ["short"]
        assert list(world.artifacts) == ["forever"]
        assert a.inventory == []
