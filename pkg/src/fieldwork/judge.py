"""
Judge abstraction: a completion function identified by model and version.
"""

import hashlib
import json
import logging
import os
import threading
from abc import ABC, abstractmethod
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from src.errors import JudgeFailure, LLMError

logger = logging.getLogger(__name__)

ARCHIVE_FILE = "judge_archive.jsonl"
CLASSIFICATION_TASK = "classification"


class Judge(ABC):
    """Maps a (system, user) prompt pair to reply text."""

    model = "judge"
    version = "1"

    @property
    def identity(self) -> str:
        return f"{self.model}@{self.version}"

    @abstractmethod
    def complete(self, system: str, user: str, task: str = "annotation") -> str:
        """Reply text for one prompt pair; ``task`` names the JUDGE_PROMPTS entry."""


class OpenAIJudge(Judge):
    """Judge backed by an OpenAI-compatible chat endpoint, with a separate classification model"""

    version = "openai/1"

    def __init__(
        self,
        model: Optional[str] = None,
        base_url: Optional[str] = None,
        classify_model: Optional[str] = None,
        client=None,
    ):
        if client is None:
            from src.llm.chat_client import ChatClient
            client = ChatClient(
                model=model,
                base_url=base_url,
                api_key_env="TL_JUDGE_KEY",
                model_env="TL_JUDGE_MODEL",
                base_url_env="TL_JUDGE_BASE_URL",
                max_tokens=4000,
            )
        self.client = client
        self.model = client.model
        self.classify_model = classify_model or os.getenv("TL_JUDGE_CLASSIFY_MODEL") or self.model

    def complete(self, system: str, user: str, task: str = "annotation") -> str:
        model = self.classify_model if task == CLASSIFICATION_TASK else self.model
        try:
            return self.client.submit_prompt(system, user, model=model)
        except LLMError as e:
            raise JudgeFailure(f"Judge call for {task} failed: {str(e)}") from e


def request_hash(system: str, user: str, task: str) -> str:
    digest = hashlib.sha256()
    for part in (task, system, user):
        digest.update(part.encode("utf-8"))
        digest.update(b"\x00")
    return digest.hexdigest()


class ArchivingJudge(Judge):
    """Appends every exchange to a JSONL archive before handing the reply back."""

    def __init__(self, inner: Judge, path: Union[str, Path]):
        self.inner = inner
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    @property
    def model(self):
        return self.inner.model

    @property
    def version(self):
        return self.inner.version

    def complete(self, system: str, user: str, task: str = "annotation") -> str:
        reply = self.inner.complete(system, user, task)
        row = {
            "request": request_hash(system, user, task),
            "task": task,
            "model": self.inner.identity,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "system": system,
            "user": user,
            "reply": reply,
        }
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(row, ensure_ascii=False) + "\n")
        return reply


def judge_from_uri(uri: str, archive_dir: Optional[Union[str, Path]] = None) -> Judge:
    """
    Judge for a command-line URI.

    ``mock`` is the deterministic rule-based judge; ``openai`` or
    ``openai:<model>`` uses the configured endpoint; an ``http(s)://`` URI
    is taken as the endpoint's base URL.
    """
    if uri == "mock":
        from src.fieldwork.mock_judge import MockJudge
        judge: Judge = MockJudge()
    elif uri.startswith(("http://", "https://")):
        judge = OpenAIJudge(base_url=uri)
    elif uri == "openai" or uri.startswith("openai:"):
        judge = OpenAIJudge(model=uri.partition(":")[2] or None)
    else:
        raise ValueError(f"Unknown judge URI '{uri}'")
    logger.info(f"Using judge {judge.identity}")
    if archive_dir is not None:
        judge = ArchivingJudge(judge, Path(archive_dir) / ARCHIVE_FILE)
    return judge
