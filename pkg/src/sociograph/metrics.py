from typing import Dict

from src.sociograph.graph import CommunityCover, SocialGraph


def density(g: SocialGraph) -> float:
    n = len(g)
    if n < 2:
        return 0.0
    return g.number_of_edges() / (n * (n - 1) / 2)


def overlap_pct(g: SocialGraph, cover: CommunityCover) -> float:
    n = len(g)
    if n == 0:
        return 0.0
    shared = sum(1 for node in g.nodes if cover.memberships(node) >= 2)
    return 100.0 * shared / n


def intra_share(g: SocialGraph, cover: CommunityCover) -> float:
    """Fraction of absolute interaction weight on edges inside some community."""
    total = 0.0
    inside = 0.0
    for a, b, _, weight, _ in g.edges():
        total += weight
        if any(a in c and b in c for c in cover.communities):
            inside += weight
    return inside / total if total > 0 else 0.0


def graph_metrics(g: SocialGraph, cover: CommunityCover) -> Dict[str, float]:
    """Density, community count, overlap percentage and intra-community share."""
    return {
        "n_nodes": len(g),
        "n_edges": g.number_of_edges(),
        "density": density(g),
        "n_communities": len(cover),
        "n_groups": len(cover.groups()),
        "overlap_pct": overlap_pct(g, cover),
        "intra_share": intra_share(g, cover),
    }
