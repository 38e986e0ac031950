"""
Dependency-depth metric over externally produced parses.

Parse sidecar format, one block per artifact separated by blank lines::

    # <artifact id>
    index<TAB>token<TAB>head<TAB>punct

Indices are 0-based, the root's head is its own index and ``punct`` is 0 or 1.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Union

from src.errors import BadParse, EmptyText


@dataclass
class DependencyParse:
    tokens: List[str]
    head: List[int]
    punct: List[bool]

    def __post_init__(self):
        n = len(self.tokens)
        if n == 0:
            raise BadParse("Empty parse")
        if len(self.head) != n or len(self.punct) != n:
            raise BadParse("tokens, head and punct must have the same length")
        if any(not 0 <= h < n for h in self.head):
            raise BadParse("Head index out of range")
        roots = [i for i, h in enumerate(self.head) if h == i]
        if len(roots) != 1:
            raise BadParse(f"Expected exactly one root, found {len(roots)}")
        self.root = roots[0]
        for i in range(n):
            seen = set()
            node = i
            while node != self.root:
                if node in seen:
                    raise BadParse(f"Cycle through token {node}")
                seen.add(node)
                node = self.head[node]

    def depth(self, i: int) -> int:
        """Tokens on the path from ``i`` to the root, both ends included."""
        count = 1
        while i != self.root:
            i = self.head[i]
            count += 1
        return count


def syntactic_depth(parse: DependencyParse) -> float:
    depths = [parse.depth(i) for i in range(len(parse.tokens)) if not parse.punct[i]]
    if not depths:
        raise EmptyText("Parse has no non-punctuation tokens")
    return sum(depths) / len(depths)


def read_parses(path: Union[str, Path]) -> Dict[str, DependencyParse]:
    parses: Dict[str, DependencyParse] = {}
    current = None
    rows: List[List[str]] = []

    def flush():
        if current is not None and rows:
            parses[current] = DependencyParse(
                tokens=[r[1] for r in rows],
                head=[int(r[2]) for r in rows],
                punct=[r[3].strip() in ("1", "true", "True") for r in rows],
            )

    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if line.startswith("#"):
            flush()
            current, rows = line[1:].strip(), []
        elif line.strip():
            parts = line.split("\t")
            if len(parts) != 4:
                raise BadParse(f"{path}:{line_no}: expected 4 tab-separated fields")
            rows.append(parts)
    flush()
    return parses
