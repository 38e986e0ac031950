from .tokenize import tokenize, TOKEN_PATTERN
from .compression import compressed_size, ZSTD_LEVEL, FRAME_OVERHEAD
from .idf import IdfTable, build_idf, build_idf_from_dir, read_idf, write_idf, lexical_sophistication
from .surprisal import (
    LogprobProvider, UniformProvider, TrigramProvider, HttpProvider, lm_surprisal, provider_from_uri,
    DEFAULT_WINDOW,
)
from .syntax import DependencyParse, syntactic_depth, read_parses
from .composite import (
    composite, composite_scores, complexity_over_time, complexity_table, run_composite, score_text, METRIC_COLUMNS,
)

__all__ = [
    'tokenize', 'TOKEN_PATTERN', 'compressed_size', 'ZSTD_LEVEL', 'FRAME_OVERHEAD',
    'IdfTable', 'build_idf', 'build_idf_from_dir', 'read_idf', 'write_idf', 'lexical_sophistication',
    'LogprobProvider', 'UniformProvider', 'TrigramProvider', 'HttpProvider', 'lm_surprisal',
    'provider_from_uri', 'DEFAULT_WINDOW',
    'DependencyParse', 'syntactic_depth', 'read_parses',
    'composite', 'composite_scores', 'complexity_over_time', 'complexity_table', 'run_composite', 'score_text',
    'METRIC_COLUMNS',
]
