"""
Coauthorship Ingestion
----------------------

Turns a list of (paper, authors) records into an influence graph. Raw
collaboration strength between two authors accumulates 1 / (n_r - 1) for
every multi-author paper r they share; outgoing strengths are then
normalized per source and any column left above 1 is rescaled.
"""

import logging
import math
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field
from schema import And, Schema, SchemaError, Use

from lt_influence.graph.exceptions import GraphFormatError
from lt_influence.graph.models import InfluenceGraph


logger = logging.getLogger(__name__)


class CoauthorshipRecord(BaseModel):
    paper_id: str = Field(..., description="Identifier of the paper")
    authors: List[str] = Field(..., description="Author names as listed on the paper")


class RawCollaboration(BaseModel):
    """
    Symmetric raw collaboration strengths.

    ``weights`` is keyed by (i, j) with i < j; there are no diagonal terms.
    """

    n: int = Field(..., ge=0)
    weights: Dict[Tuple[int, int], float] = Field(default_factory=dict)
    node_labels: Optional[List[str]] = Field(default=None)

    def symmetric_edges(self) -> Dict[Tuple[int, int], float]:
        edges = {}
        for (i, j), w in self.weights.items():
            edges[(i, j)] = w
            edges[(j, i)] = w
        return edges


_record_schema = Schema(
    {
        "paper_id": And(Use(str), len),
        "authors": [And(Use(lambda a: str(a).strip()), len)],
    }
)


def as_record(record: Union[CoauthorshipRecord, Sequence]) -> CoauthorshipRecord:
    if isinstance(record, CoauthorshipRecord):
        return record
    try:
        paper_id, authors = record
        data = _record_schema.validate(
            {"paper_id": paper_id, "authors": list(authors)}
        )
    except (SchemaError, TypeError, ValueError) as e:
        raise GraphFormatError(f"malformed coauthorship record {record!r}: {e}") from e
    return CoauthorshipRecord(**data)


def collaboration_weights(
    records: Iterable[Union[CoauthorshipRecord, Sequence]],
) -> RawCollaboration:
    """
    Accumulate raw collaboration strengths from coauthorship records.

    Author ids are assigned in sorted label order and every pair's strength is
    summed with ``math.fsum``, so the result does not depend on record order.
    Records with fewer than two distinct authors are skipped and repeated
    authors within one record are collapsed, both with a warning.
    """
    contributions: Dict[Tuple[str, str], List[float]] = defaultdict(list)
    authors_seen = set()

    for raw_record in records:
        record = as_record(raw_record)
        distinct = list(dict.fromkeys(record.authors))
        if len(distinct) != len(record.authors):
            logger.warning(
                f"paper {record.paper_id}: duplicate authors removed "
                f"({len(record.authors)} -> {len(distinct)})"
            )
        if len(distinct) < 2:
            logger.warning(
                f"paper {record.paper_id}: fewer than two distinct authors, skipped"
            )
            continue
        share = 1.0 / (len(distinct) - 1)
        authors_seen.update(distinct)
        for a_pos, a in enumerate(distinct):
            for b in distinct[a_pos + 1 :]:
                key = (a, b) if a < b else (b, a)
                contributions[key].append(share)

    labels = sorted(authors_seen)
    ids = {label: node for node, label in enumerate(labels)}
    weights = {}
    for (a, b), shares in contributions.items():
        i, j = ids[a], ids[b]
        weights[(min(i, j), max(i, j))] = math.fsum(shares)
    return RawCollaboration(n=len(labels), weights=weights, node_labels=labels)


def normalize_collaboration(
    n: int,
    raw_edges: Dict[Tuple[int, int], float],
    node_labels: Optional[List[str]] = None,
) -> InfluenceGraph:
    """
    Turn directed raw strengths into a valid influence graph.

    First pass: w_ij = raw_ij / sum_k raw_ik, so each source's outgoing
    weights sum to 1. Second pass: any column whose in-sum exceeds 1 has
    all of its in-edges divided by that in-sum.
    """
    out_parts: Dict[int, List[float]] = defaultdict(list)
    for (i, _), w in raw_edges.items():
        out_parts[i].append(w)
    out_totals = {i: math.fsum(parts) for i, parts in out_parts.items()}

    edges = {
        (i, j): w / out_totals[i]
        for (i, j), w in sorted(raw_edges.items())
        if w > 0.0
    }

    in_parts: Dict[int, List[float]] = defaultdict(list)
    for (_, j), w in edges.items():
        in_parts[j].append(w)
    for j, parts in in_parts.items():
        in_sum = math.fsum(parts)
        if in_sum > 1.0:
            logger.debug(f"column {j}: in-sum {in_sum:.6g} rescaled to 1")
            for key in [key for key in edges if key[1] == j]:
                edges[key] = edges[key] / in_sum
    return InfluenceGraph(n=n, edges=edges, node_labels=node_labels)


def direct_coauthorship(raw: RawCollaboration) -> InfluenceGraph:
    """
    Assign every pair's strength to the author with the higher index.

    For i < j the directed strength becomes raw_ji = raw_ij and raw_ij = 0,
    so the resulting influence digraph only has edges from higher to lower
    ids and therefore no directed cycle.
    """
    directed = {(j, i): w for (i, j), w in raw.weights.items()}
    return normalize_collaboration(raw.n, directed, raw.node_labels)


def ingest_coauthorship(
    records: Iterable[Union[CoauthorshipRecord, Sequence]], directed: bool = False
) -> InfluenceGraph:
    """
    Build an influence graph from coauthorship records.

    Args:
        records: (paper_id, authors) records or CoauthorshipRecord models
        directed: Assign each pair's strength to the higher-indexed author

    Returns:
        The normalized influence graph, labelled with author names
    """
    raw = collaboration_weights(records)
    logger.info(
        f"ingested {raw.n} authors and {len(raw.weights)} collaborating pairs"
    )
    if directed:
        return direct_coauthorship(raw)
    return normalize_collaboration(raw.n, raw.symmetric_edges(), raw.node_labels)
