from .prompts import (
    PromptContext, HistoryEntry, Neighbor, MOTIVATIONS, TEMPLATE_NAMES,
    assemble_prompts, template_checksums, template_text,
)
from .reply_parser import PolicyDecision, ParseFailure, parse_reply, render_reply
from .policies import Policy, GreedyForager, Sharer, Scribe, UniformRandom, SCRIPTED_POLICIES, decide
from .remote import RemotePolicy
from .inbox import deliver_messages

__all__ = [
    'PromptContext', 'HistoryEntry', 'Neighbor', 'MOTIVATIONS', 'TEMPLATE_NAMES',
    'assemble_prompts', 'template_checksums', 'template_text',
    'PolicyDecision', 'ParseFailure', 'parse_reply', 'render_reply',
    'Policy', 'GreedyForager', 'Sharer', 'Scribe', 'UniformRandom', 'SCRIPTED_POLICIES', 'decide',
    'RemotePolicy', 'deliver_messages',
]
