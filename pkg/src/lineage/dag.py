"""
Artifact phylogeny: ancestry links inferred by the judge, with confidences.

Edges point from parent to child, so a node's in-degree counts its direct
ancestors and its out-degree its direct descendants.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.errors import CyclicAncestry

logger = logging.getLogger(__name__)

DEFAULT_MIN_CONF = 0.7
HUB_MIN_DEGREE = 30
DENSITY_THRESHOLDS = tuple(round(x, 1) for x in np.arange(0.0, 1.01, 0.1))


class AncestryDag:
    """Artifact nodes plus confidence-weighted parent links"""

    def __init__(self):
        self.g = nx.DiGraph()

    def add_artifact(
        self,
        artifact_id: str,
        created_at: int,
        creator: Optional[str] = None,
        name: Optional[str] = None,
        novelty: Optional[float] = None,
        category: Optional[int] = None,
    ) -> None:
        self.g.add_node(
            artifact_id, created_at=created_at, creator=creator, name=name, novelty=novelty, category=category,
            modified_at=[],
        )

    def add_modification(self, artifact_id: str, t: int) -> None:
        """Modifications stay on the original node; they only extend its history."""
        self.g.nodes[artifact_id]["modified_at"].append(t)

    def add_link(
        self,
        child: str,
        parent: str,
        confidence: float,
        inferred_at: Optional[int] = None,
        judge_version: Optional[str] = None,
    ) -> bool:
        """Add ``parent -> child``. Parents must be created strictly before their children; other links are dropped."""
        if not 0.0 <= confidence <= 1.0:
            raise ValueError(f"Confidence {confidence} outside [0, 1]")
        for node in (child, parent):
            if node not in self.g:
                raise KeyError(f"Unknown artifact {node}")
        if child == parent:
            logger.warning(f"Dropping self-link on {child}")
            return False
        if self.g.nodes[parent]["created_at"] >= self.g.nodes[child]["created_at"]:
            logger.warning(f"Dropping link {parent} -> {child}: parent not created before child")
            return False
        previous = self.g.edges[parent, child]["confidence"] if self.g.has_edge(parent, child) else -1.0
        if confidence > previous:
            self.g.add_edge(parent, child, confidence=confidence, inferred_at=inferred_at, judge_version=judge_version)
        return True

    @property
    def nodes(self) -> List[str]:
        return sorted(self.g.nodes)

    def node(self, artifact_id: str) -> dict:
        return self.g.nodes[artifact_id]

    def links(self) -> List[Tuple[str, str, float]]:
        """(child, parent, confidence), sorted."""
        return sorted((child, parent, data["confidence"]) for parent, child, data in self.g.edges(data=True))

    def parents(self, artifact_id: str) -> List[str]:
        return sorted(self.g.predecessors(artifact_id))

    def children(self, artifact_id: str) -> List[str]:
        return sorted(self.g.successors(artifact_id))

    def copy(self) -> "AncestryDag":
        dag = AncestryDag()
        dag.g = self.g.copy()
        return dag

    def __len__(self) -> int:
        return self.g.number_of_nodes()


def filter_edges(dag: AncestryDag, min_conf: float = DEFAULT_MIN_CONF) -> AncestryDag:
    """Keep links with confidence >= ``min_conf``; every node survives."""
    kept = dag.copy()
    weak = [(u, v) for u, v, data in kept.g.edges(data=True) if data["confidence"] < min_conf]
    kept.g.remove_edges_from(weak)
    return kept


def check_acyclic(dag: AncestryDag) -> None:
    try:
        cycle = nx.find_cycle(dag.g)
    except nx.NetworkXNoCycle:
        return
    raise CyclicAncestry([(u, v) for u, v, *_ in cycle])


@dataclass
class DepthProfile:
    depth: Dict[str, int] = field(default_factory=dict)
    max_depth: int = 0
    survival: Dict[int, float] = field(default_factory=dict)

    @property
    def normalized(self) -> List[Tuple[float, float]]:
        """Survival against depth divided by the run's maximum depth."""
        if self.max_depth == 0:
            return [(0.0, s) for s in self.survival.values()]
        return [(x / self.max_depth, s) for x, s in sorted(self.survival.items())]


def lineage_depth(dag: AncestryDag) -> DepthProfile:
    """Longest ancestry path from any root, counted in links."""
    check_acyclic(dag)
    depth: Dict[str, int] = {}
    for node in nx.topological_sort(dag.g):
        parents = list(dag.g.predecessors(node))
        depth[node] = 1 + max(depth[p] for p in parents) if parents else 0
    if not depth:
        return DepthProfile(depth={}, max_depth=0, survival={0: 1.0})
    max_depth = max(depth.values())
    n = len(depth)
    values = np.array(list(depth.values()))
    survival = {x: float(np.count_nonzero(values >= x)) / n for x in range(max_depth + 1)}
    return DepthProfile(depth=dict(sorted(depth.items())), max_depth=max_depth, survival=survival)


def degree_stats(dag: AncestryDag) -> Dict[str, Tuple[int, int]]:
    """Per node (in_degree, out_degree) = (#direct ancestors, #direct descendants)."""
    return {node: (dag.g.in_degree(node), dag.g.out_degree(node)) for node in dag.nodes}


def density(dag: AncestryDag) -> float:
    return nx.density(dag.g) if len(dag) > 1 else 0.0


def density_curve(dag: AncestryDag, thresholds: Iterable[float] = DENSITY_THRESHOLDS) -> List[Tuple[float, float]]:
    """Graph density after filtering at each confidence threshold."""
    return [(c, density(filter_edges(dag, c))) for c in thresholds]


@dataclass
class HubReport:
    nodes: List[str]
    mean_in: Optional[float]
    mean_out: Optional[float]


def hubs(dag: AncestryDag, min_degree: int = HUB_MIN_DEGREE, min_conf: float = DEFAULT_MIN_CONF) -> HubReport:
    """Nodes whose total degree strictly exceeds ``min_degree`` after confidence filtering."""
    stats = degree_stats(filter_edges(dag, min_conf))
    chosen = [node for node, (d_in, d_out) in stats.items() if d_in + d_out > min_degree]
    if not chosen:
        return HubReport(nodes=[], mean_in=None, mean_out=None)
    return HubReport(
        nodes=chosen,
        mean_in=float(np.mean([stats[n][0] for n in chosen])),
        mean_out=float(np.mean([stats[n][1] for n in chosen])),
    )
