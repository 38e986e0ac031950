"""
Inverse document frequency tables.

IDF follows the smoothed convention ``ln((1 + N) / (1 + df)) + 1``. Tables are
built from any folder of text documents and stored as a small TSV file whose
first line carries ``doc_count`` and ``max_idf``.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Union

import numpy as np
from sklearn.feature_extraction.text import TfidfVectorizer

from src.errors import EmptyText
from src.textmetrics.tokenize import TOKEN_PATTERN

logger = logging.getLogger(__name__)


@dataclass
class IdfTable:
    values: Dict[str, float] = field(default_factory=dict)
    doc_count: int = 0
    max_idf: float = 1.0

    def __post_init__(self):
        if self.values:
            self.max_idf = max(self.values.values())

    def __getitem__(self, term: str) -> float:
        return self.values.get(term, self.max_idf)

    def __len__(self) -> int:
        return len(self.values)


def build_idf(documents: Sequence[str]) -> IdfTable:
    """Smoothed IDF over ``documents``."""
    documents = list(documents)
    if not documents:
        raise ValueError("Cannot build an IDF table from zero documents")
    vectorizer = TfidfVectorizer(smooth_idf=True, lowercase=True, token_pattern=TOKEN_PATTERN)
    vectorizer.fit(documents)
    idf = vectorizer.idf_
    values = {term: float(idf[idx]) for term, idx in sorted(vectorizer.vocabulary_.items())}
    return IdfTable(values=values, doc_count=len(documents))


def build_idf_from_dir(folder: Union[str, Path], pattern: str = "*.txt") -> IdfTable:
    paths = sorted(Path(folder).glob(pattern))
    logger.info(f"Building IDF table from {len(paths)} documents in {folder}")
    return build_idf([p.read_text(encoding="utf-8") for p in paths])


def write_idf(table: IdfTable, path: Union[str, Path]) -> None:
    lines = [f"{table.doc_count}\t{table.max_idf!r}"]
    lines += [f"{term}\t{value!r}" for term, value in sorted(table.values.items())]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_idf(path: Union[str, Path]) -> IdfTable:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"Empty IDF file {path}")
    doc_count, max_idf = lines[0].split("\t")
    values = {}
    for line in lines[1:]:
        if line:
            term, value = line.rsplit("\t", 1)
            values[term] = float(value)
    table = IdfTable(values=values, doc_count=int(doc_count))
    if not values:
        table.max_idf = float(max_idf)
    return table


def lexical_sophistication(tokens: Iterable[str], idf: IdfTable) -> float:
    """Mean IDF of the tokens; unknown tokens count at the table's maximum."""
    scores: List[float] = [idf[token] for token in tokens]
    if not scores:
        raise EmptyText("lexical_sophistication needs at least one token")
    return float(np.mean(scores))
