"""
Speaker-listener label propagation for overlapping communities.
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Optional

import numpy as np

from src.sociograph.graph import CommunityCover, SocialGraph

logger = logging.getLogger(__name__)

ITERATIONS = 100
THRESHOLD = 0.1
_EPS = 1e-12


def _speak(memory: Counter, rng: np.random.Generator) -> str:
    """A label drawn with probability proportional to its count."""
    labels = sorted(memory)
    cumulative = np.cumsum([memory[label] for label in labels])
    pick = rng.random() * cumulative[-1]
    return labels[int(np.searchsorted(cumulative, pick, side="right"))]


def propagate(g: SocialGraph, iterations: int, rng: np.random.Generator) -> Dict[str, Counter]:
    nodes = g.nodes
    memory = {n: Counter({n: 1}) for n in nodes}
    for _ in range(iterations):
        for idx in rng.permutation(len(nodes)):
            listener = nodes[int(idx)]
            heard: Dict[str, float] = defaultdict(float)
            for speaker in g.neighbors(listener):
                heard[_speak(memory[speaker], rng)] += g.weight(listener, speaker)
            if not heard:
                continue
            best = max(heard.values())
            chosen = min(label for label, score in heard.items() if best - score <= _EPS)
            memory[listener][chosen] += 1
    return memory


def prune_nested(communities: List[frozenset]) -> List[frozenset]:
    """Drop duplicate communities and communities contained in another."""
    ordered = sorted(set(communities), key=lambda c: (-len(c), sorted(c)))
    kept: List[frozenset] = []
    for community in ordered:
        if not any(community <= other for other in kept):
            kept.append(community)
    return kept


def slpa(
    g: SocialGraph,
    iterations: int = ITERATIONS,
    threshold: float = THRESHOLD,
    rng: Optional[np.random.Generator] = None,
) -> CommunityCover:
    """
    Overlapping communities on absolute edge weights.

    Every node starts with its own label in memory. Each round visits the
    nodes in a random order; the listener collects one label from each
    neighbour, sampled in proportion to the neighbour's memory counts, and
    adopts the label with the largest summed edge weight (smallest label on
    ties). Afterwards each label that makes up at least ``threshold`` of a
    node's memory places the node in that label's community.
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    if len(g) == 0:
        return CommunityCover([])
    if rng is None:
        rng = np.random.default_rng(0)

    memory = propagate(g, iterations, rng)
    members: Dict[str, set] = defaultdict(set)
    for node, counts in memory.items():
        total = sum(counts.values())
        labels = [label for label, count in counts.items() if count / total >= threshold]
        if not labels:
            labels = [min(counts, key=lambda label: (-counts[label], label))]
        for label in labels:
            members[label].add(node)

    communities = prune_nested([frozenset(m) for m in members.values()])
    logger.debug(f"SLPA found {len(communities)} communities on {len(g)} nodes")
    return CommunityCover(communities)
