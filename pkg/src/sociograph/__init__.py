from .events import InteractionKind, InteractionEvent, WEIGHTS, extract_events
from .graph import SocialGraph, CommunityCover, build_graph, write_edges, read_edges, write_cover, read_cover
from .slpa import slpa
from .metrics import graph_metrics, density, overlap_pct, intra_share

__all__ = [
    'InteractionKind', 'InteractionEvent', 'WEIGHTS', 'extract_events',
    'SocialGraph', 'CommunityCover', 'build_graph', 'write_edges', 'read_edges', 'write_cover', 'read_cover',
    'slpa', 'graph_metrics', 'density', 'overlap_pct', 'intra_share',
]
