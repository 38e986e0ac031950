"""
Exception hierarchy shared by the simulator and the analysis toolkit.

Action rejections are not exceptions; see ``src.acts.requests.RejectReason``.
"""

from typing import List, Optional, Sequence, Tuple


class LifegridError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(LifegridError, ValueError):
    """Invalid run, grid or stage configuration."""


class UsageError(LifegridError, ValueError):
    """Bad command-line usage (unknown preset, missing arguments)."""


class NoSuchAgent(LifegridError, KeyError):
    """An operation referenced an agent id that is not alive in the world."""


class WorldFull(LifegridError):
    """Not enough free cells to place the requested population."""


class LogFormatError(LifegridError):
    """A run log line could not be decoded."""

    def __init__(self, path: str, line_no: int, message: str):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


class SchemaMismatch(LifegridError):
    """Logs or analysis outputs carry incompatible schema versions."""


class CyclicAncestry(LifegridError):
    """The artifact ancestry graph contains a cycle."""

    def __init__(self, cycle: Sequence[Tuple[str, str]]):
        self.cycle: List[Tuple[str, str]] = list(cycle)
        path = " -> ".join(edge[0] for edge in self.cycle)
        super().__init__(f"Ancestry cycle detected: {path} -> {self.cycle[0][0] if self.cycle else ''}")


class ScoreRangeError(LifegridError, ValueError):
    """A novelty score outside [0, 5]."""


class EmptyText(LifegridError, ValueError):
    """A text metric was asked to score an empty token sequence."""


class BadParse(LifegridError, ValueError):
    """A dependency parse head array does not describe a single tree."""


class ProviderError(LifegridError):
    """A logprob provider failed or returned an invalid response."""


class LLMError(LifegridError):
    """Transport or API failure talking to a chat-completion endpoint."""


class JudgeFailure(LifegridError):
    """The judge did not produce a usable reply after retries."""


class DependencyMissing(LifegridError):
    """An analysis stage was run before the stage it depends on."""

    def __init__(self, stage: str, prerequisite: str, detail: Optional[str] = None):
        self.stage = stage
        self.prerequisite = prerequisite
        message = (
            f"Stage '{stage}' needs the output of 'analyze --stage {prerequisite}' first"
        )
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
