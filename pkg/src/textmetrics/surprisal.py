"""
Language-model surprisal with pluggable log-probability providers.

A provider scores a token window and returns the negative log-probability
of every token after the first, each conditioned on the tokens before it
inside the window.
"""

import logging
import math
from abc import ABC, abstractmethod
from collections import Counter
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import requests

from src.errors import EmptyText, ProviderError
from src.models import NllResponse
from src.textmetrics.tokenize import tokenize

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 1024
PAD = "^"


class LogprobProvider(ABC):
    name = "provider"

    @abstractmethod
    def nll(self, tokens: Sequence[str]) -> List[float]:
        """NLL of tokens[1:], one value per token."""


class UniformProvider(LogprobProvider):
    """Every token has probability 1/vocab_size."""

    name = "uniform"

    def __init__(self, vocab_size: int):
        if vocab_size < 1:
            raise ValueError("vocab_size must be positive")
        self.vocab_size = vocab_size

    def nll(self, tokens: Sequence[str]) -> List[float]:
        return [math.log(self.vocab_size)] * max(0, len(tokens) - 1)


class TrigramProvider(LogprobProvider):
    """
    Add-one smoothed trigram model over symbols.

    Symbols are whatever the caller tokenizes into: characters for the
    character model, words for artifact texts. Sequence starts are padded
    with two ``^`` symbols.
    """

    name = "trigram"

    def __init__(self, corpus: Iterable[Sequence[str]] = ()):
        self.trigrams: Counter = Counter()
        self.contexts: Counter = Counter()
        self.vocab = set()
        for seq in corpus:
            self.train(seq)

    def train(self, seq: Sequence[str]) -> None:
        padded = [PAD, PAD] + list(seq)
        self.vocab.update(seq)
        for i in range(2, len(padded)):
            context = (padded[i - 2], padded[i - 1])
            self.trigrams[context + (padded[i],)] += 1
            self.contexts[context] += 1

    def prob(self, u: str, v: str, w: str) -> float:
        # one extra slot for unseen symbols
        size = len(self.vocab) + 1
        return (self.trigrams[(u, v, w)] + 1) / (self.contexts[(u, v)] + size)

    def nll(self, tokens: Sequence[str]) -> List[float]:
        padded = [PAD, PAD] + list(tokens)
        return [-math.log(self.prob(padded[i - 2], padded[i - 1], padded[i])) for i in range(3, len(padded))]


class HttpProvider(LogprobProvider):
    """Remote provider speaking ``POST {base_url}/nll``"""

    name = "http"

    def __init__(self, base_url: str, timeout: float = 60.0, session: Optional[requests.Session] = None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.session = session or requests.Session()

    def nll(self, tokens: Sequence[str]) -> List[float]:
        try:
            response = self.session.post(f"{self.base_url}/nll", json={"tokens": list(tokens)}, timeout=self.timeout)
            response.raise_for_status()
            body = NllResponse.model_validate(response.json())
        except Exception as e:
            raise ProviderError(f"Logprob request to {self.base_url} failed: {str(e)}") from e
        return body.nll


def _check(values: List[float], expected: int, provider: LogprobProvider) -> List[float]:
    if len(values) != expected:
        raise ProviderError(f"{provider.name} returned {len(values)} scores for {expected} tokens")
    for value in values:
        if not math.isfinite(value) or value < 0:
            raise ProviderError(f"{provider.name} returned invalid NLL {value}")
    return values


def lm_surprisal(tokens: Sequence[str], provider: LogprobProvider, window: int = DEFAULT_WINDOW) -> float:
    """
    Mean next-token NLL under a sliding window.

    Windows of ``window`` tokens advance by half a window; a position is
    scored by the first window that predicts it and skipped afterwards.
    """
    tokens = list(tokens)
    n = len(tokens)
    if n < 2:
        raise EmptyText("lm_surprisal needs at least two tokens")
    if window < 2:
        raise ValueError("window must be at least 2")
    stride = max(1, window // 2)

    total = 0.0
    count = 0
    next_pos = 1
    start = 0
    while True:
        end = min(start + window, n)
        chunk = tokens[start:end]
        try:
            scores = provider.nll(chunk)
        except ProviderError:
            raise
        except Exception as e:
            raise ProviderError(f"{provider.name} failed: {str(e)}") from e
        for pos, value in enumerate(_check(list(scores), len(chunk) - 1, provider), start=start + 1):
            if pos >= next_pos:
                total += value
                count += 1
        next_pos = max(next_pos, end)
        if end >= n:
            break
        start += stride
    return total / count


def corpus_sequences(folder: Path) -> List[List[str]]:
    return [tokenize(p.read_text(encoding="utf-8")) for p in sorted(Path(folder).glob("*.txt"))]


def provider_from_uri(uri: str, corpus: Iterable[Sequence[str]] = ()) -> LogprobProvider:
    """
    Provider for a URI.

    ``uniform:<V>`` gives the uniform provider; ``trigram:`` a trigram model
    trained on ``corpus``, or on the ``*.txt`` files of ``trigram:<folder>``;
    ``http(s)://...`` a remote provider.
    """
    if uri.startswith(("http://", "https://")):
        return HttpProvider(uri)
    scheme, _, rest = uri.partition(":")
    if scheme == "uniform":
        return UniformProvider(int(rest or 2))
    if scheme == "trigram":
        sequences = list(corpus)
        if rest:
            sequences += corpus_sequences(Path(rest))
        return TrigramProvider(sequences)
    raise ValueError(f"Unknown logprob provider URI '{uri}'")
