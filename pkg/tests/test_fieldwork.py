import json

import numpy as np
import pytest

from src.errors import JudgeFailure, LLMError
from src.fieldwork import (
    ARCHIVE_FILE,
    Annotation,
    ArchivingJudge,
    ArtifactEvent,
    ArtifactText,
    EventItem,
    Judge,
    MockJudge,
    NoveltyBatch,
    OpenAIJudge,
    Reference,
    annotate_agent,
    annotate_agents,
    annotate_group,
    artifact_events,
    audit,
    build_annotation,
    canonical_tag,
    classify_artifact,
    infer_ancestors,
    judge_from_uri,
    merge_annotations,
    render,
    score_novelty,
    score_run_novelty,
    segments,
    vocabulary,
    window_priors,
)
from src.fieldwork.annotate import apply_verdicts, ask_judge
from src.fieldwork.logtext import SourceText, parse_agent_log, parse_group_log, render_agent_log, render_group_log
from src.fieldwork.mock_judge import jaccard
from src.models import InboxMessage
from tests.conftest import make_record


def agent_log():
    return [
        make_record(1, "a", "move", {"direction": "right"}, memory="went east"),
        make_record(2, "a", "move", {"direction": "up"}),
        make_record(3, "a", "give_energy", {"target": "being-b", "amount": 5}),
        make_record(4, "a", "give_energy", {"target": "being-b", "amount": 5}),
        make_record(5, "a", "create_artifact", {"name": "map", "payload": "food north"}),
        make_record(6, "a", "create_artifact", {"name": "map2", "payload": "food south"}),
        make_record(7, "a", "take_energy", {"target": "being-b", "amount": 5}, status="rejected"),
    ]


def group_log():
    return [
        make_record(1, "a", "give_energy", {"target": "being-b", "amount": 5}),
        make_record(2, "b", "give_energy", {"target": "being-a", "amount": 3}),
        make_record(3, "a", "give_energy", {"target": "being-b", "amount": 5}),
        make_record(4, "a", "move", {"direction": "stay"}, message="meet at (2, 2)"),
        make_record(4, "b", "move", {"direction": "stay"}, message="meet at (2, 2)"),
    ]


def agent_source(records=None):
    records = records or agent_log()
    return SourceText(render_agent_log(records), records)


def ref(step, snippet="give_energy"):
    return [{"step": step, "snippet": snippet}]


class ScriptedJudge(Judge):
    model = "scripted"

    def __init__(self, *replies):
        self.replies = list(replies)
        self.calls = 0

    def complete(self, system, user, task="annotation"):
        self.calls += 1
        reply = self.replies.pop(0) if self.replies else "no json here"
        if isinstance(reply, Exception):
            raise reply
        return reply


class SilentJudge(Judge):
    def complete(self, system, user, task="annotation"):
        raise AssertionError("judge should not be called")


class FakeChat:
    model = "big"

    def __init__(self, fail=False):
        self.fail = fail
        self.models = []

    def submit_prompt(self, system, user, model=None):
        self.models.append(model)
        if self.fail:
            raise LLMError("endpoint down")
        return '{"category": "1"}'


class TestTags:
    def test_canonical_tag_ignores_case_and_spacing(self):
        tags = vocabulary("agent", "events")
        assert canonical_tag("artifact  CREATED", tags) == "Artifact Created"
        assert canonical_tag("Teleport", tags) is None

    def test_unknown_vocabulary(self):
        with pytest.raises(ValueError):
            vocabulary("planet", "events")


class TestLogText:
    def test_agent_log_lines(self):
        entries = parse_agent_log(render_agent_log(reversed(agent_log())))
        assert [e["step"] for e in entries] == list(range(1, 8))
        assert set(entries[0]) == {"step", "name", "tag", "action", "params", "status", "message", "memory", "observation"}
        assert entries[0]["memory"] == "went east"

    def test_group_log_is_keyed_by_step(self):
        text = render_group_log(group_log())
        assert list(json.loads(text)) == ["1", "2", "3", "4"]
        assert [(e["step"], e["tag"]) for e in parse_group_log(text)][-2:] == [(4, "a"), (4, "b")]

    def test_source_text_matches_raw_strings(self):
        records = [make_record(1, "a", "create_artifact", {"payload": 'say "hi"'},
                               inbox=[InboxMessage(sender="being-b", sender_id="b", text="line\nbreak")])]
        source = SourceText(render_agent_log(records), records)
        assert source.contains('say "hi"')
        assert source.contains("line\nbreak")
        assert not source.contains("")
        assert source.steps == {1}


class TestBuildAnnotation:
    def test_invalid_items_are_dropped(self):
        reply = {
            "events": [
                {"event": "exchange", "timesteps": [3], "confidence": 9, "reference": ref(3)},
                {"event": "Flying", "timesteps": [3], "confidence": 9, "reference": ref(3)},
                {"event": "Conflict", "timesteps": [], "confidence": 5, "reference": ref(3)},
                {"event": "Exchange", "timesteps": [3], "confidence": 5, "reference": []},
                {"event": "Exchange", "timesteps": [3], "confidence": 5, "reference": ref(3, "never said this")},
                {"event": "Exchange", "timesteps": [3], "confidence": 11, "reference": ref(3)},
            ],
            "behaviors": [
                {"behavior": "Foraging", "time_span": [4, 2], "confidence": 5, "reference": ref(2, "move")},
            ],
            "comment": "busy",
        }
        annotation = build_annotation(reply, agent_source(), "agent", "a", ["a"])
        assert [e.event for e in annotation.events] == ["Exchange"]
        assert annotation.behaviors == []
        assert len(annotation.dropped) == 6
        assert annotation.comment == "busy"
        assert any("vocabulary" in d["reason"] for d in annotation.dropped)
        assert any(d["reason"] == "event without timesteps" for d in annotation.dropped)
        assert any(d["reason"] == "no references" for d in annotation.dropped)

    def test_emergence_keywords(self):
        source = agent_source()
        reply = {"emergence": {"keywords": ["None", "record keeping", "Nonsense"], "comment": "notes"}}
        assert build_annotation(reply, source).emergence.keywords == ["Record Keeping"]
        assert build_annotation({"emergence": {"keywords": ["NONE"]}}, source).emergence.keywords == ["none"]
        assert build_annotation({}, source).emergence.keywords == ["none"]

    def test_group_level_floors(self):
        records = group_log()
        source = SourceText(render_group_log(records), records)
        reply = {
            "events": [
                {"event": "Signal Alignment", "timesteps": [4], "confidence": 2.5, "reference": ref(4, "meet at (2, 2)")},
                {"event": "Signal Alignment", "timesteps": [4], "confidence": 3, "reference": ref(4, "meet at (2, 2)")},
            ],
            "behaviors": [
                {"behavior": "Reciprocity", "time_span": [1, 3], "confidence": 8, "reference": ref(1) + ref(1)},
                {"behavior": "Reciprocity", "time_span": [1, 3], "confidence": 8, "reference": ref(1) + ref(3)},
            ],
        }
        annotation = build_annotation(reply, source, "group", "c0", ["a", "b"])
        assert [e.confidence for e in annotation.events] == [3]
        assert len(annotation.behaviors) == 1
        assert len(annotation.dropped) == 2

    def test_reply_shape(self):
        with pytest.raises(ValueError):
            build_annotation(["not", "a", "dict"], agent_source())
        with pytest.raises(ValueError):
            build_annotation({"events": "Exchange"}, agent_source())


class TestAskJudge:
    def test_retries_until_usable(self):
        judge = ScriptedJudge("sorry", JudgeFailure("timeout"), 'Here: {"ok": 1}')
        assert ask_judge(judge, "novelty", "s", "u", lambda reply: reply["ok"]) == 1
        assert judge.calls == 3

    def test_gives_up(self):
        judge = ScriptedJudge('{"wrong": 1}')
        with pytest.raises(JudgeFailure):
            ask_judge(judge, "novelty", "s", "u", lambda reply: reply["ok"], retries=2)
        assert judge.calls == 3


class TestAgentAnnotation:
    def test_mock_rules(self):
        annotation = annotate_agent(agent_log(), MockJudge())
        assert annotation.subject == "a"
        assert annotation.judge == "mock@rules/1"
        assert [(e.event, e.timesteps) for e in annotation.events] == [("Artifact Created", [5, 6]), ("Exchange", [3, 4])]
        assert [(b.behavior, b.time_span) for b in annotation.behaviors] == [("Foraging", [1, 2]), ("Altruism", [3, 4])]
        assert annotation.emergence.keywords == ["Record Keeping"]
        assert annotation.dropped == []

    def test_rejected_actions_make_no_events(self):
        annotation = annotate_agent(agent_log(), MockJudge())
        assert "Conflict" not in [e.event for e in annotation.events]

    def test_audit_passes_supported_items(self):
        annotation = annotate_agent(agent_log(), MockJudge())
        audited = audit(annotation, agent_log(), MockJudge())
        assert audited.events == annotation.events
        assert audited.behaviors == annotation.behaviors

    def test_empty_annotation_skips_the_audit(self):
        empty = Annotation(subject="a")
        assert audit(empty, agent_log(), SilentJudge()) == empty

    def test_empty_log(self):
        with pytest.raises(ValueError):
            annotate_agent([], MockJudge())

    def test_every_agent(self):
        logs = {"b": [make_record(1, "b")], "a": agent_log()}
        results = annotate_agents(logs, MockJudge(), workers=2)
        assert list(results) == ["a", "b"]
        assert results["b"].events == []


class TestVerdicts:
    def test_fail_revise_and_ignored(self):
        annotation = annotate_agent(agent_log(), MockJudge())
        verdicts = {
            "events_audit": [
                {"index": 0, "verdict": "fail"},
                {"index": 1, "verdict": "revise", "proposed_fix": {"confidence": 4}},
                {"index": 7, "verdict": "pass"},
            ],
            "behaviors_audit": [
                {"index": 0, "verdict": "maybe"},
                {"index": 1, "verdict": "revise", "proposed_fix": {"behavior": "Teleporting"}},
            ],
        }
        audited = apply_verdicts(annotation, verdicts, agent_source())
        assert [(e.event, e.confidence) for e in audited.events] == [("Exchange", 4)]
        assert [b.behavior for b in audited.behaviors] == ["Foraging"]
        assert len(annotation.events) == 2
        assert annotation.events[1].confidence == 10


class TestGroupAnnotation:
    def test_mock_rules(self):
        annotation = annotate_group(group_log(), ["b", "a"], MockJudge(), community_id="c0")
        assert annotation.subject == "c0"
        assert annotation.members == ["a", "b"]
        assert [b.behavior for b in annotation.behaviors] == ["Reciprocity", "Resource Flow"]
        assert [(e.event, e.timesteps) for e in annotation.events] == [("Signal Alignment", [4])]
        assert annotation.emergence.keywords == ["Resource Network"]

    def test_segmented_log_gives_the_same_items(self):
        whole = annotate_group(group_log(), ["a", "b"], MockJudge())
        split = annotate_group(group_log(), ["a", "b"], MockJudge(), segment_size=4, overlap=1)
        assert {b.key() for b in split.behaviors} >= {b.key() for b in whole.behaviors if b.behavior == "Reciprocity"}
        assert {e.key() for e in split.events} == {e.key() for e in whole.events}

    def test_singletons_are_skipped(self):
        assert annotate_group(group_log(), ["a"], SilentJudge()) is None
        assert annotate_group(group_log(), ["x", "y"], SilentJudge()) is None


class TestSegments:
    def test_overlapping_windows(self):
        chunks = segments(list(range(25)), size=10, overlap=3)
        assert [(c[0], c[-1]) for c in chunks] == [(0, 9), (7, 16), (14, 23), (21, 24)]

    def test_overlap_must_be_smaller(self):
        with pytest.raises(ValueError):
            segments(list(range(5)), size=3, overlap=3)

    def test_merge_keeps_highest_confidence(self):
        def part(confidence, keywords):
            item = EventItem(event="Voting", timesteps=[2], confidence=confidence, reference=[Reference(step=2, snippet="x")])
            annotation = Annotation(subject="c0", level="group", members=["a", "b"], events=[item])
            annotation.emergence.keywords = keywords
            return annotation

        merged = merge_annotations([part(4, ["none"]), part(7, ["Hierarchy"])])
        assert [e.confidence for e in merged.events] == [7]
        assert merged.emergence.keywords == ["Hierarchy"]


class TestNovelty:
    def test_mock_scores(self):
        prior = [ArtifactText("p1", "map", "food at north")]
        fresh = [ArtifactText("f1", "copy", "food at north"), ArtifactText("f2", "poem", "sun rises slowly")]
        scores = score_novelty(NoveltyBatch(prior, fresh), MockJudge(), np.random.default_rng(0))
        assert scores == {"f1": 0.0, "f2": 5.0}

    def test_first_artifacts_are_novel(self):
        scores = score_novelty(NoveltyBatch([], [ArtifactText("f1", "a", "b")]), MockJudge())
        assert scores == {"f1": 5.0}

    def test_run_scores_against_earlier_steps_only(self):
        events = [
            ArtifactEvent(1, "create", "a1", "x", "alpha beta", "ag-1"),
            ArtifactEvent(2, "create", "a2", "y", "alpha beta", "ag-2"),
            ArtifactEvent(2, "create", "a3", "z", "alpha beta", "ag-3"),
            ArtifactEvent(3, "modify", "a1", "x", "gamma", "ag-1"),
        ]
        assert score_run_novelty(events, MockJudge(), samples=2) == {"a1": 5.0, "a2": 0.0, "a3": 0.0}

    def test_missing_scores_fail(self):
        with pytest.raises(JudgeFailure):
            score_novelty(NoveltyBatch([], [ArtifactText("f1", "a", "b")], samples=2), ScriptedJudge("{}", "{}"))
        with pytest.raises(ValueError):
            score_novelty(NoveltyBatch([], []), MockJudge())

    def test_prior_window(self):
        prior = [ArtifactText(f"p{i}", "n", "c", created_at=i, score=s) for i, s in enumerate((4.5, 1.0, 2.0, 1.0, 0.5))]
        assert [a.id for a in window_priors(prior, 2)] == ["p0", "p3", "p4"]
        assert [a.id for a in window_priors(prior, 0)] == ["p0"]
        assert len(window_priors(prior, None)) == 5

    def test_jaccard(self):
        assert jaccard("", "") == 1.0
        assert jaccard("a b", "b c") == pytest.approx(1 / 3)


class TestAncestry:
    def event(self):
        return ArtifactEvent(5, "create", "a3", "guide", "see map for food", "ag-1", thoughts="copy the map")

    def test_mock_links(self):
        candidates = [
            ArtifactText("a1", "map", "food north"),
            ArtifactText("a2", "song", "la la"),
            ArtifactText("a3", "guide", "see map for food"),
        ]
        assert infer_ancestors(self.event(), candidates, MockJudge()) == {"a1": 0.9}

    def test_no_candidates_no_call(self):
        assert infer_ancestors(self.event(), [ArtifactText("a3", "guide", "x")], SilentJudge()) == {}

    def test_foreign_ids_and_bad_confidence_are_discarded(self):
        judge = ScriptedJudge('{"a1": 1.7, "zz": 0.5, "a2": "high"}')
        candidates = [ArtifactText("a1", "map", "x"), ArtifactText("a2", "song", "y")]
        assert infer_ancestors(self.event(), candidates, judge) == {"a1": 1.0}

    def test_events_carry_agent_context(self):
        records = [
            make_record(1, "a", memory="saw food"),
            make_record(2, "a", "create_artifact", thoughts="leave a note",
                        events=[{"type": "artifact", "op": "create", "artifact": "art-00001", "name": "note", "payload": "food here"}]),
            make_record(3, "a", "pickup_artifact",
                        events=[{"type": "artifact", "op": "pickup", "artifact": "art-00001", "name": "note"}]),
        ]
        events = artifact_events(records)
        assert len(events) == 1
        assert (events[0].t, events[0].content, events[0].memory, events[0].thoughts) == (2, "food here", "saw food", "leave a note")


class TestClassification:
    @pytest.mark.parametrize(
        "name,content,expected",
        [
            ("Rules", "Everyone must share", 4),
            ("wiki hub", "links to notes", 3),
            ("plan", "let us meet at dawn", 2),
            ("map", "food at north", 1),
        ],
    )
    def test_mock_categories(self, name, content, expected):
        assert classify_artifact(name, content, MockJudge()) == expected

    def test_unconforming_answer(self):
        judge = ScriptedJudge('{"category": "9"}', '{"category": "nine"}')
        assert classify_artifact("x", "y", judge) == -1
        assert judge.calls == 2


class TestJudges:
    def test_mock_rejects_unknown_task(self):
        with pytest.raises(ValueError):
            MockJudge().complete("s", "u", "poetry")

    def test_archive_rows(self, tmp_path):
        judge = ArchivingJudge(MockJudge(), tmp_path / "nested" / ARCHIVE_FILE)
        system, user = render("classification", artifact_name="Rules", artifact_content="all must share")
        reply = judge.complete(system, user, "classification")
        rows = [json.loads(line) for line in (tmp_path / "nested" / ARCHIVE_FILE).read_text().splitlines()]
        assert len(rows) == 1
        assert rows[0]["reply"] == reply
        assert rows[0]["model"] == "mock@rules/1"
        assert rows[0]["task"] == "classification"
        assert set(rows[0]) == {"request", "task", "model", "timestamp", "system", "user", "reply"}
        assert judge.identity == "mock@rules/1"

    def test_judge_uris(self, tmp_path):
        judge = judge_from_uri("mock", tmp_path)
        assert isinstance(judge, ArchivingJudge)
        assert judge.path == tmp_path / ARCHIVE_FILE
        assert isinstance(judge_from_uri("mock"), MockJudge)
        with pytest.raises(ValueError):
            judge_from_uri("oracle")

    def test_openai_judge_routes_classification(self):
        chat = FakeChat()
        judge = OpenAIJudge(classify_model="small", client=chat)
        judge.complete("s", "u", "classification")
        judge.complete("s", "u", "agent_annotation")
        assert chat.models == ["small", "big"]
        assert judge.identity == "big@openai/1"

    def test_openai_failure_becomes_judge_failure(self):
        judge = OpenAIJudge(classify_model="small", client=FakeChat(fail=True))
        with pytest.raises(JudgeFailure):
            judge.complete("s", "u", "novelty")
