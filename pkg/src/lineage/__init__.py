from .dag import (
    AncestryDag, DepthProfile, HubReport, filter_edges, check_acyclic, lineage_depth,
    degree_stats, density, density_curve, hubs,
)
from .novelty import novelty_bins, novelty_bin, novelty_over_time

__all__ = [
    'AncestryDag', 'DepthProfile', 'HubReport', 'filter_edges', 'check_acyclic', 'lineage_depth',
    'degree_stats', 'density', 'density_curve', 'hubs',
    'novelty_bins', 'novelty_bin', 'novelty_over_time',
]
