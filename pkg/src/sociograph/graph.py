"""
Time-collapsed signed social graph and its text exports.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import FrozenSet, Iterable, List, Tuple, Union

import networkx as nx

from src.sociograph.events import InteractionEvent


class SocialGraph:
    """Undirected agent graph; each edge carries signed and absolute weight sums and an event count"""

    def __init__(self, nodes: Iterable[str] = ()):
        self.g = nx.Graph()
        self.g.add_nodes_from(nodes)

    def add(self, event: InteractionEvent) -> None:
        if event.src == event.dst:
            return
        a, b = event.src, event.dst
        if not self.g.has_edge(a, b):
            self.g.add_edge(a, b, signed=0.0, abs=0.0, count=0)
        data = self.g.edges[a, b]
        data["signed"] += event.weight
        data["abs"] += abs(event.weight)
        data["count"] += 1

    @property
    def nodes(self) -> List[str]:
        return sorted(self.g.nodes)

    def edges(self) -> List[Tuple[str, str, float, float, int]]:
        """(src, dst, signed, abs, count) with src < dst, sorted."""
        rows = []
        for a, b, data in self.g.edges(data=True):
            lo, hi = sorted((a, b))
            rows.append((lo, hi, data["signed"], data["abs"], data["count"]))
        return sorted(rows)

    def neighbors(self, node: str) -> List[str]:
        return sorted(self.g.neighbors(node))

    def weight(self, a: str, b: str) -> float:
        return self.g.edges[a, b]["abs"]

    def signed(self, a: str, b: str) -> float:
        return self.g.edges[a, b]["signed"]

    def number_of_edges(self) -> int:
        return self.g.number_of_edges()

    def __len__(self) -> int:
        return self.g.number_of_nodes()


def build_graph(events: Iterable[InteractionEvent], nodes: Iterable[str] = ()) -> SocialGraph:
    """Sum every interaction over the whole run into one graph."""
    graph = SocialGraph(nodes)
    for event in events:
        graph.add(event)
    return graph


@dataclass
class CommunityCover:
    communities: List[FrozenSet[str]] = field(default_factory=list)

    def memberships(self, node: str) -> int:
        return sum(1 for c in self.communities if node in c)

    def groups(self, min_size: int = 2) -> List[FrozenSet[str]]:
        return [c for c in self.communities if len(c) >= min_size]

    def __len__(self) -> int:
        return len(self.communities)


def _fmt(value: float) -> str:
    return f"{value:g}"


def write_edges(graph: SocialGraph, path: Union[str, Path]) -> None:
    lines = [f"{a} {b} {_fmt(s)} {_fmt(w)} {n}" for a, b, s, w, n in graph.edges()]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_edges(path: Union[str, Path], nodes: Iterable[str] = ()) -> SocialGraph:
    graph = SocialGraph(nodes)
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        a, b, signed, weight, count = line.split()
        graph.g.add_edge(a, b, signed=float(signed), abs=float(weight), count=int(count))
    return graph


def write_cover(cover: CommunityCover, path: Union[str, Path]) -> None:
    lines = [" ".join(sorted(c)) for c in cover.communities]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_cover(path: Union[str, Path]) -> CommunityCover:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return CommunityCover([frozenset(line.split()) for line in lines if line.strip()])
