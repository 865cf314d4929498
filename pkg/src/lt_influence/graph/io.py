"""
Graph Files
-----------

Reading and writing the tab-separated formats used by the CLI:

* graph files, ``src<TAB>dst<TAB>weight`` per line, with optional
  ``# n=<count>`` and ``# label=<id><TAB><name>`` directives;
* coauthorship files, ``paper_id<TAB>author1,author2,...`` per line;
* adjacency files, ``u<TAB>v`` per undirected edge.

Lines starting with ``#`` are comments. Node tokens are ids when every token
in the file is a non-negative integer, otherwise they are labels mapped to
ids in first-seen order.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, TextIO, Tuple, Union

from parse import compile as compile_format
from scipy import sparse

from lt_influence.graph.exceptions import GraphFormatError
from lt_influence.graph.ingestion import CoauthorshipRecord, as_record
from lt_influence.graph.models import InfluenceGraph


logger = logging.getLogger(__name__)

Source = Union[str, Path, TextIO, Iterable[str]]

_edge_format = compile_format("{src}\t{dst}\t{weight}")
_pair_format = compile_format("{src}\t{dst}")
_coauthor_format = compile_format("{paper_id}\t{authors}")
_count_directive = compile_format("# n={n:d}")
_label_directive = compile_format("# label={node:d}\t{name}")


def _lines(source: Source) -> List[str]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            return handle.read().splitlines()
    return [line.rstrip("\r\n") for line in source]


def _is_id(token: str) -> bool:
    return token.isdigit()


class _NodeIndex:
    """Maps raw node tokens onto integer ids for one file."""

    def __init__(self, tokens: List[str]):
        self.numeric = all(_is_id(token) for token in tokens)
        self.labels: List[str] = []
        self._ids: Dict[str, int] = {}
        if not self.numeric:
            for token in tokens:
                if token not in self._ids:
                    self._ids[token] = len(self.labels)
                    self.labels.append(token)

    def __call__(self, token: str) -> int:
        return int(token) if self.numeric else self._ids[token]

    def size(self) -> int:
        if self.numeric:
            return 0
        return len(self.labels)


def parse_graph_lines(lines: Iterable[str]) -> InfluenceGraph:
    """
    Parse the lines of a graph file.

    Self-loop lines are kept so validation can report them; a repeated
    (src, dst) pair is a format error.

    Raises:
        GraphFormatError: On a malformed line, a duplicate edge or a
            ``# n=`` directive smaller than the largest id
    """
    declared_n: Optional[int] = None
    declared_labels: Dict[int, str] = {}
    rows: List[Tuple[int, str, str, float, str]] = []

    for line_no, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            count = _count_directive.parse(stripped)
            if count is not None:
                declared_n = count["n"]
                continue
            label = _label_directive.parse(line.strip(" \r\n"))
            if label is not None:
                declared_labels[label["node"]] = label["name"]
            continue
        parsed = _edge_format.parse(stripped)
        if parsed is None:
            raise GraphFormatError("expected src<TAB>dst<TAB>weight", line_no, line)
        src, dst = parsed["src"].strip(), parsed["dst"].strip()
        if not src or not dst or "\t" in src or "\t" in dst:
            raise GraphFormatError("expected src<TAB>dst<TAB>weight", line_no, line)
        try:
            weight = float(parsed["weight"])
        except ValueError:
            raise GraphFormatError(f"bad weight {parsed['weight']!r}", line_no, line) from None
        rows.append((line_no, src, dst, weight, line))

    index = _NodeIndex([token for row in rows for token in row[1:3]])
    edges: Dict[Tuple[int, int], float] = {}
    for line_no, src, dst, weight, line in rows:
        key = (index(src), index(dst))
        if key in edges:
            raise GraphFormatError(f"duplicate edge {key}", line_no, line)
        edges[key] = weight

    if index.numeric:
        max_id = max((max(i, j) for i, j in edges), default=-1)
        max_label = max(declared_labels, default=-1)
        n = max(max_id, max_label) + 1
        if declared_n is not None:
            if declared_n < n:
                raise GraphFormatError(
                    f"# n={declared_n} is smaller than the largest node id {n - 1}"
                )
            n = declared_n
        labels = None
        if declared_labels:
            labels = [declared_labels.get(node, str(node)) for node in range(n)]
    else:
        n = index.size()
        if declared_n is not None and declared_n != n:
            logger.warning(
                f"# n={declared_n} ignored, labelled graph has {n} distinct nodes"
            )
        labels = index.labels

    logger.debug(f"parsed graph with {n} nodes and {len(edges)} edges")
    return InfluenceGraph(n=n, edges=edges, node_labels=labels)


def read_graph_tsv(source: Source) -> InfluenceGraph:
    """Read a graph file from a path, an open text stream or an iterable of lines."""
    return parse_graph_lines(_lines(source))


def format_graph_tsv(g: InfluenceGraph) -> str:
    """
    Serialize ``g`` so that :func:`read_graph_tsv` restores it exactly.

    Ids are written as integers; labels travel in ``# label=`` directives.
    """
    out = [f"# n={g.n}"]
    if g.node_labels is not None:
        out.extend(f"# label={node}\t{name}" for node, name in enumerate(g.node_labels))
    out.extend(f"{i}\t{j}\t{w!r}" for (i, j), w in sorted(g.edges.items()))
    return "\n".join(out) + "\n"


def write_graph_tsv(g: InfluenceGraph, target: Union[str, Path, TextIO]) -> None:
    text = format_graph_tsv(g)
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        target.write(text)


def read_coauthorship_tsv(source: Source) -> List[CoauthorshipRecord]:
    """
    Read ``paper_id<TAB>author1,author2,...`` records.

    Raises:
        GraphFormatError: If a line lacks the tab separator or an author name
            is empty
    """
    records = []
    for line_no, line in enumerate(_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parsed = _coauthor_format.parse(stripped)
        if parsed is None:
            raise GraphFormatError(
                "expected paper_id<TAB>author1,author2,...", line_no, line
            )
        authors = parsed["authors"].split(",")
        try:
            records.append(as_record((parsed["paper_id"].strip(), authors)))
        except GraphFormatError as e:
            raise GraphFormatError(e.message, line_no, line) from e
    return records


def read_adjacency(source: Source) -> Tuple[sparse.csr_matrix, Optional[List[str]]]:
    """
    Read an undirected edge list into a symmetric 0/1 adjacency matrix.

    Repeated edges (in either orientation) collapse into one.

    Returns:
        The adjacency matrix and the node labels (``None`` for numeric ids)

    Raises:
        GraphFormatError: On malformed lines or self-loops
    """
    declared_n: Optional[int] = None
    pairs: List[Tuple[int, str, str, str]] = []
    for line_no, line in enumerate(_lines(source), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            count = _count_directive.parse(stripped)
            if count is not None:
                declared_n = count["n"]
            continue
        parsed = _pair_format.parse(stripped)
        if parsed is None or "\t" in parsed["dst"]:
            raise GraphFormatError("expected u<TAB>v", line_no, line)
        src, dst = parsed["src"].strip(), parsed["dst"].strip()
        if src == dst:
            raise GraphFormatError("self-loop in adjacency list", line_no, line)
        pairs.append((line_no, src, dst, line))

    index = _NodeIndex([token for pair in pairs for token in pair[1:3]])
    undirected = {tuple(sorted((index(src), index(dst)))) for _, src, dst, _ in pairs}
    if index.numeric:
        n = max((j for _, j in undirected), default=-1) + 1
        n = max(n, declared_n or 0)
        labels = None
    else:
        n = index.size()
        labels = index.labels

    rows = [i for i, j in undirected] + [j for i, j in undirected]
    cols = [j for i, j in undirected] + [i for i, j in undirected]
    adjacency = sparse.csr_matrix(([1.0] * len(rows), (rows, cols)), shape=(n, n))
    return adjacency, labels
