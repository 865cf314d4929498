import logging

import numpy as np

from lt_influence.evaluators.interfaces import IInfluenceEvaluator
from lt_influence.graph.models import InfluenceGraph
from lt_influence.ranking.models import RankList, RankMethod
from lt_influence.utils import ProgressTracker


logger = logging.getLogger(__name__)


def rank_by_degree(g: InfluenceGraph) -> RankList:
    """Rank by the number of outgoing edges with positive weight."""
    scores = np.zeros(g.n)
    for (i, j), w in g.edges.items():
        if i != j and w > 0.0:
            scores[i] += 1.0
    return RankList.from_scores(scores, RankMethod.DEGREE)


def rank_by_weighted_outdegree(g: InfluenceGraph) -> RankList:
    """Rank by the summed weight of outgoing edges."""
    scores = np.zeros(g.n)
    for (i, j), w in sorted(g.edges.items()):
        if i != j:
            scores[i] += w
    return RankList.from_scores(scores, RankMethod.WEIGHTED_DEGREE)


def build_g1(g: InfluenceGraph, evaluator: IInfluenceEvaluator) -> RankList:
    """
    The G1 list: every node ranked by its individual influence sigma({i}).

    The evaluator's parameters are recorded in the list metadata.
    """
    scores = np.zeros(g.n)
    with ProgressTracker(g.n, desc="Individual influence") as progress:
        for node in range(g.n):
            scores[node] = evaluator.sigma([node])
            progress.step()
    ranked = RankList.from_scores(scores, RankMethod.G1, evaluator.describe())
    logger.info(f"G1 head: {ranked.top(5)}")
    return ranked
