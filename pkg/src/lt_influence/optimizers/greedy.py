import logging

from lt_influence.evaluators.interfaces import IInfluenceEvaluator
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph
from lt_influence.optimizers.models import RoundRecord, SelectionResult
from lt_influence.utils import ProgressTracker, argmax_ascending


logger = logging.getLogger(__name__)


def greedy(g: InfluenceGraph, K: int, evaluator: IInfluenceEvaluator) -> SelectionResult:
    """
    Hill-climbing seed selection.

    Each round adds the node maximizing sigma(X + v), ties to the smallest
    id. With an exact evaluator the recorded marginal gains are
    non-increasing.

    Args:
        g: The influence graph the evaluator was built for
        K: Number of seeds, 1 <= K <= n
        evaluator: Source of sigma values

    Raises:
        SeedSetError: If K is outside 1..n
    """
    if not 1 <= K <= g.n:
        raise SeedSetError(f"K must lie in 1..{g.n}, got {K}")
    calls_before = evaluator.calls
    chosen = []
    current = 0.0
    rounds = []

    with ProgressTracker(K, desc="Greedy rounds") as progress:
        for round_no in range(1, K + 1):
            pool = [node for node in range(g.n) if node not in chosen]
            scores = [(node, evaluator.sigma(chosen + [node])) for node in pool]
            node, value = argmax_ascending(scores)
            rounds.append(RoundRecord(pool_size=len(pool), node=node, gain=value - current))
            logger.debug(f"greedy round {round_no}: picked {node}, gain {value - current:.6g}")
            chosen.append(node)
            current = value
            progress.step()

    calls = evaluator.calls - calls_before
    sigma, half_width = evaluator.estimate(chosen)
    logger.info(f"greedy picked {chosen} with sigma {sigma:.6g} in {calls} evaluations")
    return SelectionResult(
        method="greedy",
        chosen=chosen,
        sigma=sigma,
        half_width=half_width,
        per_round=rounds,
        evaluator_calls=calls,
        config={"K": K, "evaluator": evaluator.describe()},
    )
