import logging
from typing import Any, Dict, Optional

import numpy as np

from src.errors import LLMError
from src.minds.policies import Policy, stay
from src.minds.prompts import PromptContext, assemble_prompts
from src.minds.reply_parser import ParseFailure, PolicyDecision, parse_reply

logger = logging.getLogger(__name__)


class RemotePolicy(Policy):
    """Policy backed by an OpenAI-compatible chat endpoint"""

    name = "remote"

    def __init__(self, client=None, archive: bool = False):
        self.archive = archive
        self._client = client

    @property
    def client(self):
        if self._client is None:
            from src.llm.chat_client import ChatClient
            self._client = ChatClient()
        return self._client

    def _exchange(self, system: str, user: str, reply: Optional[str], error: Optional[str]) -> Optional[Dict[str, Any]]:
        if not self.archive:
            return None
        return {
            "model": getattr(self.client, "model", None),
            "system": system,
            "user": user,
            "reply": reply,
            "error": error,
        }

    def decide(self, ctx: PromptContext, rng: np.random.Generator) -> PolicyDecision:
        system, user = assemble_prompts(ctx)
        try:
            reply = self.client.submit_prompt(system, user)
        except LLMError as e:
            logger.warning(f"Policy call failed for {ctx.agent.id} at step {ctx.t}: {e}")
            fallback = stay(ctx, "transport failure")
            fallback.exchange = self._exchange(system, user, None, str(e))
            return fallback

        decision = parse_reply(reply, agent_id=ctx.agent.id)
        if isinstance(decision, ParseFailure):
            logger.warning(f"Unparseable reply from {ctx.agent.id} at step {ctx.t}: {decision.error}")
            fallback = stay(ctx, "unparseable reply")
            fallback.exchange = self._exchange(system, user, reply, decision.error)
            return fallback

        decision.rationale = reply
        decision.exchange = self._exchange(system, user, reply, None)
        return decision
