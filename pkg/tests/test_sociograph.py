from itertools import combinations

import numpy as np
import pytest

from src.models import InboxMessage
from src.sociograph import (
    CommunityCover,
    InteractionEvent,
    InteractionKind,
    build_graph,
    density,
    extract_events,
    graph_metrics,
    intra_share,
    overlap_pct,
    read_cover,
    read_edges,
    slpa,
    write_cover,
    write_edges,
)
from tests.conftest import make_record

IK = InteractionKind


def interaction_log():
    return [
        make_record(
            3, "a",
            kind="give_energy",
            inbox=[InboxMessage(sender="being-b", sender_id="b", text="hi")],
            visible=["b"],
            events=[{"type": "transfer", "kind": "gift", "src": "a", "dst": "b", "amount": 5}],
        ),
        make_record(
            3, "b",
            kind="take_energy",
            visible=["a"],
            events=[{"type": "transfer", "kind": "theft", "src": "a", "dst": "b", "amount": 2}],
        ),
        make_record(3, "c", visible=["a"]),
        make_record(
            4, "a",
            kind="reproduce",
            events=[
                {"type": "cost", "agent": "a", "amount": 50, "reason": "reproduce"},
                {"type": "birth", "child": "d", "parent": "a", "name": "kid", "pos": [0, 0],
                 "energy": 50, "time_left": 100, "genome": None},
            ],
        ),
        make_record(
            5, "c",
            kind="give_artifact",
            events=[{"type": "artifact", "op": "give", "artifact": "art-00001", "name": "map", "agent": "c", "target": "a"}],
        ),
        make_record(5, "d", kind="pickup_artifact",
                    events=[{"type": "artifact", "op": "pickup", "artifact": "art-00002", "name": "x", "agent": "d"}]),
    ]


def clique_events(members):
    return [InteractionEvent(IK.ENERGY_GIFT, a, b, 1) for a, b in combinations(members, 2)]


def two_cliques():
    left = ["a1", "a2", "a3", "a4"]
    right = ["b1", "b2", "b3", "b4"]
    events = clique_events(left) + clique_events(right) + [InteractionEvent(IK.COPRESENCE, "a4", "b1", 1)]
    return build_graph(events, left + right), frozenset(left), frozenset(right)


class TestEvents:
    def test_extracted_kinds(self):
        events = extract_events(interaction_log())
        assert sorted(events) == sorted([
            InteractionEvent(IK.MESSAGE, "b", "a", 2),
            InteractionEvent(IK.ENERGY_GIFT, "a", "b", 3),
            InteractionEvent(IK.ENERGY_THEFT, "b", "a", 3),
            InteractionEvent(IK.PARENT_LINK, "a", "d", 4),
            InteractionEvent(IK.ARTIFACT_EXCHANGE, "c", "a", 5),
            InteractionEvent(IK.COPRESENCE, "a", "b", 3),
        ])

    def test_one_sided_sighting_is_not_copresence(self):
        events = extract_events(interaction_log())
        assert not any(e.kind == IK.COPRESENCE and "c" in (e.src, e.dst) for e in events)

    def test_weights(self):
        assert [InteractionEvent(k, "x", "y", 0).weight for k in IK] == [0.1, 0.5, 1.0, -1.0, 10.0, 5.0]


class TestGraph:
    def test_time_collapsed_weights(self):
        graph = build_graph(extract_events(interaction_log()))
        assert graph.signed("a", "b") == pytest.approx(0.1 + 0.5 + 1.0 - 1.0)
        assert graph.weight("a", "b") == pytest.approx(0.1 + 0.5 + 1.0 + 1.0)
        assert graph.weight("a", "d") == 10.0
        assert graph.signed("a", "c") == 5.0
        edges = {(a, b): n for a, b, _, _, n in graph.edges()}
        assert edges == {("a", "b"): 4, ("a", "c"): 1, ("a", "d"): 1}

    def test_isolated_nodes_are_kept(self):
        graph = build_graph([], nodes=["x", "y"])
        assert len(graph) == 2
        assert graph.number_of_edges() == 0

    def test_edge_file_round_trip(self, tmp_path):
        graph = build_graph(extract_events(interaction_log()))
        write_edges(graph, tmp_path / "edges.txt")
        restored = read_edges(tmp_path / "edges.txt")
        for (a, b, signed, weight, n), (ra, rb, rsigned, rweight, rn) in zip(graph.edges(), restored.edges()):
            assert (a, b, n) == (ra, rb, rn)
            assert rsigned == pytest.approx(signed)
            assert rweight == pytest.approx(weight)
        assert restored.number_of_edges() == graph.number_of_edges()


class TestCommunities:
    def test_two_cliques_joined_by_a_weak_bridge(self):
        graph, left, right = two_cliques()
        cover = slpa(graph, rng=np.random.default_rng(42))
        assert set(cover.communities) == {left, right}

    def test_weak_bridge_never_merges_the_cliques(self):
        graph, left, right = two_cliques()
        for seed in range(50):
            assert set(slpa(graph, rng=np.random.default_rng(seed)).communities) == {left, right}, seed

    def test_disjoint_cliques_are_recovered_exactly(self):
        cliques = [frozenset(f"k{size}-{i}" for i in range(size)) for size in (3, 4, 5, 6)]
        events = [e for clique in cliques for e in clique_events(sorted(clique))]
        graph = build_graph(events)
        for seed in range(10):
            assert set(slpa(graph, rng=np.random.default_rng(seed)).communities) == set(cliques), seed

    def test_same_seed_same_cover(self):
        graph, _, _ = two_cliques()
        first = slpa(graph, iterations=20, rng=np.random.default_rng(7))
        second = slpa(graph, iterations=20, rng=np.random.default_rng(7))
        assert first.communities == second.communities

    def test_isolated_node_is_its_own_community(self):
        cover = slpa(build_graph([], nodes=["solo"]))
        assert cover.communities == [frozenset({"solo"})]
        assert cover.groups() == []

    def test_threshold_range(self):
        graph, _, _ = two_cliques()
        with pytest.raises(ValueError):
            slpa(graph, threshold=0)

    def test_cover_file_round_trip(self, tmp_path):
        cover = CommunityCover([frozenset({"a", "b"}), frozenset({"b", "c"})])
        write_cover(cover, tmp_path / "cover.txt")
        assert read_cover(tmp_path / "cover.txt").communities == cover.communities


class TestMetrics:
    def test_against_hand_counts(self):
        graph, left, right = two_cliques()
        cover = CommunityCover([left, right])
        assert density(graph) == pytest.approx(13 / 28)
        assert overlap_pct(graph, cover) == 0.0
        assert intra_share(graph, cover) == pytest.approx(12 / 12.1)

    def test_overlap_percent(self):
        graph, left, right = two_cliques()
        cover = CommunityCover([left | {"b1"}, right])
        assert overlap_pct(graph, cover) == pytest.approx(100 / 8)
        assert intra_share(graph, cover) == pytest.approx(1.0)

    def test_metric_table(self):
        graph, left, right = two_cliques()
        metrics = graph_metrics(graph, CommunityCover([left, right, frozenset({"a1"})]))
        assert metrics["n_nodes"] == 8
        assert metrics["n_edges"] == 13
        assert metrics["n_communities"] == 3
        assert metrics["n_groups"] == 2

    def test_empty_graph(self):
        graph = build_graph([])
        assert density(graph) == 0.0
        assert overlap_pct(graph, CommunityCover()) == 0.0
        assert intra_share(graph, CommunityCover()) == 0.0

    def test_metrics_against_brute_force_on_every_small_graph(self):
        nodes = ["a", "b", "c", "d"]
        pairs = list(combinations(nodes, 2))
        covers = [
            CommunityCover([frozenset("abc"), frozenset("cd")]),
            CommunityCover([frozenset("ab"), frozenset("c"), frozenset("d")]),
            CommunityCover([frozenset("abcd")]),
        ]
        kinds = list(IK)
        for mask in range(1 << len(pairs)):
            chosen = [pair for i, pair in enumerate(pairs) if mask >> i & 1]
            events = [InteractionEvent(kinds[i % len(kinds)], a, b, i) for i, (a, b) in enumerate(chosen)]
            graph = build_graph(events, nodes)
            assert density(graph) == pytest.approx(len(chosen) / 6)
            total = sum(abs(e.weight) for e in events)
            for cover in covers:
                inside = sum(
                    abs(e.weight) for e in events
                    if any(e.src in c and e.dst in c for c in cover.communities)
                )
                assert intra_share(graph, cover) == pytest.approx(inside / total if total else 0.0)
                shared = [n for n in nodes if sum(n in c for c in cover.communities) >= 2]
                assert overlap_pct(graph, cover) == pytest.approx(100 * len(shared) / 4)
