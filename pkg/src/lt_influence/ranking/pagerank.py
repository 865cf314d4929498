"""
PageRank on the Reversed Chain
------------------------------

Power iteration for the stationary distribution of P_d = d * P + (1 - d) * U,
where U jumps uniformly. With the default d = 1 this is the plain stationary
distribution of P = W^T. Each step applies the lazy chain (I + P_d) / 2,
which has the same fixed points but cannot oscillate on periodic chains.
"""

import logging

import numpy as np
from pydantic import BaseModel, Field

from lt_influence.graph.models import TransitionMatrix
from lt_influence.ranking.exceptions import ConvergenceError
from lt_influence.ranking.models import RankList, RankMethod


logger = logging.getLogger(__name__)


class PageRankConfig(BaseModel):
    damping: float = Field(1.0, gt=0.0, le=1.0, description="Probability of following P")
    tol: float = Field(1e-12, gt=0.0, description="L1 bound on ||pi P_d - pi||")
    max_iter: int = Field(100_000, ge=1)


def stationary_distribution(
    P: TransitionMatrix, damping: float = 1.0, tol: float = 1e-12, max_iter: int = 100_000
) -> np.ndarray:
    """
    Return pi with ||pi P_d - pi||_1 <= tol and sum(pi) = 1.

    Raises:
        ConvergenceError: If the residual is still above ``tol`` after
            ``max_iter`` iterations
    """
    config = PageRankConfig(damping=damping, tol=tol, max_iter=max_iter)
    return _iterate(P, config)[0]


def _iterate(P: TransitionMatrix, config: PageRankConfig):
    n = P.n
    if n == 0:
        return np.zeros(0), 0, 0.0
    transposed = P.matrix.T.tocsr()
    pi = np.full(n, 1.0 / n)
    residual = np.inf
    for iteration in range(1, config.max_iter + 1):
        stepped = config.damping * (transposed @ pi) + (1.0 - config.damping) * pi.sum() / n
        residual = float(np.abs(stepped - pi).sum())
        if residual <= config.tol:
            logger.debug(f"power iteration converged in {iteration} steps, residual {residual:.3e}")
            return pi / pi.sum(), iteration, residual
        pi = 0.5 * (pi + stepped)
        pi /= pi.sum()
    raise ConvergenceError(config.max_iter, residual, config.tol)


def pagerank(
    P: TransitionMatrix, damping: float = 1.0, tol: float = 1e-12, max_iter: int = 100_000
) -> RankList:
    """
    Rank nodes by their stationary probability under P_d.

    Args:
        P: Row-stochastic transition matrix
        damping: Weight of P against uniform teleportation, in (0, 1]
        tol: L1 convergence tolerance
        max_iter: Iteration limit

    Returns:
        Nodes by descending probability; metadata records the parameters,
        iteration count and final residual
    """
    config = PageRankConfig(damping=damping, tol=tol, max_iter=max_iter)
    pi, iterations, residual = _iterate(P, config)
    metadata = {**config.model_dump(), "iterations": iterations, "residual": residual}
    return RankList.from_scores(pi, RankMethod.PAGERANK, metadata)
