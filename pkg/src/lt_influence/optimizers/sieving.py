"""
G1-Sieving
----------

Seed selection that starts from the G1 list (nodes by individual influence)
and, round by round, sieves out dummy nodes before picking:

* thresholding drops alpha-subordinates, nodes the current picks X already
  activate with probability above alpha;
* restriction scores each survivor by its influence on the network without
  X and drops leechers, whose restricted influence is below epsilon.

The survivor with the best score joins X. Dropped nodes never return, and the
run stops early when the list runs out.
"""

import logging
from typing import Iterable, List, Optional, Tuple

from lt_influence.config.settings import get_settings
from lt_influence.evaluators.exact import ExactEvaluator
from lt_influence.evaluators.interfaces import IInfluenceEvaluator
from lt_influence.evaluators.montecarlo import MonteCarloEvaluator
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet
from lt_influence.optimizers.models import (
    DummyClassification,
    RoundRecord,
    SelectionResult,
    SievingConfig,
)
from lt_influence.ranking.heuristics import build_g1
from lt_influence.utils import argmax_ascending


logger = logging.getLogger(__name__)


def _activation_source(
    g: InfluenceGraph,
    evaluator: IInfluenceEvaluator,
    runs: int,
    exact_cap: Optional[int],
) -> IInfluenceEvaluator:
    """Exact activation probabilities up to the recursion cap, Monte Carlo above it."""
    if evaluator.is_exact:
        return evaluator
    cap = get_settings().EXACT_RECURSION_CAP if exact_cap is None else exact_cap
    if g.n <= cap:
        return ExactEvaluator(g, cap)
    rng_seed = evaluator.rng_seed if isinstance(evaluator, MonteCarloEvaluator) else 0
    return MonteCarloEvaluator(g, runs=runs, rng_seed=rng_seed)


def evaluate_restricted(
    g: InfluenceGraph, X: Iterable[int], i: int, evaluator: IInfluenceEvaluator
) -> float:
    """
    Influence of node ``i`` on the subgraph with the nodes of ``X`` deleted.

    Raises:
        SeedSetError: If ``i`` belongs to ``X``
    """
    removed = frozenset(X)
    if i in removed:
        raise SeedSetError("node is part of the removed set", [i])
    if evaluator.graph.n != g.n:
        raise ValueError("evaluator was built for a different graph")
    return evaluator.sigma([i], excluded=removed)


def _round_records(
    picks: List[Tuple[int, int, float]], evaluator: IInfluenceEvaluator
) -> List[RoundRecord]:
    """Marginal gains of the picks in order, queried after the call count is taken."""
    rounds: List[RoundRecord] = []
    prefix = SeedSet(nodes=frozenset())
    previous = 0.0
    for pool_size, node, score in picks:
        prefix = prefix.union([node])
        value = evaluator.sigma(prefix)
        rounds.append(
            RoundRecord(pool_size=pool_size, node=node, gain=value - previous, score=score)
        )
        previous = value
    return rounds


def g1_sieving(
    g: InfluenceGraph, config: SievingConfig, evaluator: IInfluenceEvaluator
) -> SelectionResult:
    """
    Pick up to ``config.K`` seeds by G1-Sieving.

    Args:
        g: The influence graph the evaluator was built for
        config: Thresholds, target size and filter switches
        evaluator: Source of sigma values (exact, or Monte Carlo with a fixed seed)

    Returns:
        The picks in order; fewer than K when every candidate was sieved out
    """
    if config.K > g.n:
        raise SeedSetError(f"K must lie in 1..{g.n}, got {config.K}")
    probs_source = _activation_source(g, evaluator, config.activation_runs, config.exact_cap)
    calls_before = evaluator.calls
    activation_before = probs_source.activation_calls

    g1 = build_g1(g, evaluator)
    head = g1.entries[0]
    individual = g1.scores()
    chosen: List[int] = [head.node]
    picks: List[Tuple[int, int, float]] = [(g.n, head.node, head.score)]
    remaining = [node for node in g1.nodes() if node != head.node]

    for round_no in range(2, config.K + 1):
        if not remaining:
            logger.warning(
                f"G1 list exhausted after {len(chosen)} picks, returning fewer than K={config.K}"
            )
            break
        probs = probs_source.activation_probs(chosen) if config.use_thresholding else None
        pool_size = len(remaining)
        survivors: List[Tuple[int, float]] = []
        for node in list(remaining):
            if probs is not None and probs[node] > config.alpha:
                remaining.remove(node)
                continue
            if config.use_restriction:
                score = evaluate_restricted(g, chosen, node, evaluator)
                if score < config.epsilon:
                    remaining.remove(node)
                    continue
            else:
                score = individual[node]
            survivors.append((node, score))

        picked = argmax_ascending(survivors)
        if picked is None:
            logger.warning(
                f"round {round_no}: every candidate was sieved out, stopping at {len(chosen)} picks"
            )
            break
        node, score = picked
        logger.debug(
            f"sieving round {round_no}: {pool_size - len(survivors)} dropped, picked {node} ({score:.6g})"
        )
        chosen.append(node)
        remaining.remove(node)
        picks.append((pool_size, node, score))

    calls = evaluator.calls - calls_before
    activation_calls = probs_source.activation_calls - activation_before
    rounds = _round_records(picks, evaluator)
    sigma, half_width = evaluator.estimate(chosen)
    logger.info(f"sieving picked {chosen} with sigma {sigma:.6g} in {calls} evaluations")
    return SelectionResult(
        method="sieve",
        chosen=chosen,
        sigma=sigma,
        half_width=half_width,
        per_round=rounds,
        evaluator_calls=calls,
        activation_calls=activation_calls,
        config={**config.model_dump(), "evaluator": evaluator.describe()},
    )


def classify_dummies(
    g: InfluenceGraph,
    X: Iterable[int],
    config: SievingConfig,
    evaluator: Optional[IInfluenceEvaluator] = None,
) -> DummyClassification:
    """
    Split the nodes outside ``X`` into leechers and alpha-subordinates.

    Subordinates have g_i > alpha for the seed set X; leechers have
    restricted influence sigma(N \\ X, i) below epsilon, the test sieving
    applies. The leecher residual sigma(i) - 1 - sum_j w_ij sigma(N \\ i, j)
    over j in X is reported alongside: it is near zero when i draws almost
    all of its influence through X.

    Raises:
        SeedSetError: If ``X`` is empty or out of range
    """
    picked = SeedSet.of(X).check_against(g)
    evaluator = evaluator or ExactEvaluator(g, config.exact_cap)
    probs_source = _activation_source(g, evaluator, config.activation_runs, config.exact_cap)
    probs = probs_source.activation_probs(picked)

    activation, restricted, residuals = {}, {}, {}
    subordinates, leechers = [], []
    for node in range(g.n):
        if node in picked:
            continue
        activation[node] = float(probs[node])
        restricted[node] = evaluate_restricted(g, picked.nodes, node, evaluator)
        through_x = sum(
            g.edges.get((node, j), 0.0) * evaluator.sigma([j], excluded=[node])
            for j in picked.sorted()
        )
        residuals[node] = evaluator.sigma([node]) - 1.0 - through_x
        if activation[node] > config.alpha:
            subordinates.append(node)
        if restricted[node] < config.epsilon:
            leechers.append(node)

    return DummyClassification(
        leechers=leechers,
        subordinates=subordinates,
        activation_probs=activation,
        restricted_sigma=restricted,
        leecher_residuals=residuals,
    )
