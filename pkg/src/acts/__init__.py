from .artifact import Artifact, INFINITE, PAYLOAD_CAP, age_artifacts, remove_artifact, payload_hash
from .requests import (
    ActionKind, ActionRequest, ActionOutcome, RejectReason, ARTIFACT_OPS, DIRECTIONS,
    APPLIED, REJECTED, prompt_key, parse_kind,
)
from .rules import ActRules
from .affordance import afford, accessible_artifacts
from .validator import ActionValidator, validate
from .resolver import StepResolver, resolve_step

__all__ = [
    'Artifact', 'INFINITE', 'PAYLOAD_CAP', 'age_artifacts', 'remove_artifact', 'payload_hash',
    'ActionKind', 'ActionRequest', 'ActionOutcome', 'RejectReason', 'ARTIFACT_OPS', 'DIRECTIONS',
    'APPLIED', 'REJECTED', 'prompt_key', 'parse_kind',
    'ActRules', 'afford', 'accessible_artifacts', 'ActionValidator', 'validate',
    'StepResolver', 'resolve_step',
]
