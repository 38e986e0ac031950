from .tags import (
    AGENT_EVENT_TAGS, AGENT_BEHAVIOR_TAGS, AGENT_EMERGENT_TAGS,
    GROUP_EVENT_TAGS, GROUP_BEHAVIOR_TAGS, GROUP_EMERGENT_TAGS,
    canonical_tag, render_tags, vocabulary,
)
from .prompts import JUDGE_PROMPTS, render
from .annotation import Annotation, EventItem, BehaviorItem, Emergence, Reference, build_annotation
from .judge import Judge, OpenAIJudge, ArchivingJudge, judge_from_uri, ARCHIVE_FILE
from .mock_judge import MockJudge
from .annotate import annotate_agent, annotate_agents, annotate_group, audit, merge_annotations, segments
from .artifacts import (
    ArtifactEvent, ArtifactText, NoveltyBatch, artifact_events, classify_artifact, infer_ancestors,
    score_novelty, score_run_novelty, window_priors,
)

__all__ = [
    'AGENT_EVENT_TAGS', 'AGENT_BEHAVIOR_TAGS', 'AGENT_EMERGENT_TAGS',
    'GROUP_EVENT_TAGS', 'GROUP_BEHAVIOR_TAGS', 'GROUP_EMERGENT_TAGS',
    'canonical_tag', 'render_tags', 'vocabulary',
    'JUDGE_PROMPTS', 'render',
    'Annotation', 'EventItem', 'BehaviorItem', 'Emergence', 'Reference', 'build_annotation',
    'Judge', 'OpenAIJudge', 'ArchivingJudge', 'judge_from_uri', 'ARCHIVE_FILE', 'MockJudge',
    'annotate_agent', 'annotate_agents', 'annotate_group', 'audit', 'merge_annotations', 'segments',
    'ArtifactEvent', 'ArtifactText', 'NoveltyBatch', 'artifact_events', 'classify_artifact',
    'infer_ancestors', 'score_novelty', 'score_run_novelty', 'window_priors',
]
