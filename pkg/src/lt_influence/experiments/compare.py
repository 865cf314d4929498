"""
Method Comparison
-----------------

Runs several seed selection methods on one graph and evaluates each
method's K-node set for K = 1..k with one common evaluation, producing the
table behind influence-versus-K plots.
"""

import logging
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from lt_influence.closed_forms.uislt import sigma_uislt
from lt_influence.diffusion.montecarlo import RNG_ALGORITHM, estimate_sigma
from lt_influence.evaluators.factory import create_evaluator
from lt_influence.evaluators.models import EvaluatorConfig, EvaluatorType
from lt_influence.exact.recursion import SigmaRecursion
from lt_influence.experiments.models import ComparisonRow, ComparisonTable
from lt_influence.graph.builders import build_uislt, make_transition_matrix, random_uislt_params
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet
from lt_influence.optimizers.greedy import greedy
from lt_influence.optimizers.models import SievingConfig
from lt_influence.optimizers.sieving import g1_sieving
from lt_influence.ranking.heuristics import (
    build_g1,
    rank_by_degree,
    rank_by_weighted_outdegree,
)
from lt_influence.ranking.pagerank import pagerank


logger = logging.getLogger(__name__)

METHODS = ("greedy", "sieve", "pagerank", "degree", "wdegree", "g1")


def _sieve_tag(alpha: float) -> str:
    return f"sieve[alpha={alpha:g}]"


class _SetEvaluator:
    """Evaluates seed sets with one shared exact recursion or one common Monte Carlo stream."""

    def __init__(self, g: InfluenceGraph, config: EvaluatorConfig):
        self.g = g
        self.config = config
        self.recursion = (
            SigmaRecursion(g, config.exact_cap) if config.kind == EvaluatorType.EXACT else None
        )
        self._cache: Dict[FrozenSet[int], Tuple[float, float]] = {}

    def __call__(self, seeds: Sequence[int]) -> Tuple[float, float]:
        key = frozenset(seeds)
        if key not in self._cache:
            seed_set = SeedSet(nodes=key)
            if self.recursion is not None:
                self._cache[key] = (self.recursion.sigma_set(seed_set), 0.0)
            else:
                estimate = estimate_sigma(self.g, seed_set, self.config.runs, self.config.rng_seed)
                self._cache[key] = (estimate.mean, estimate.half_width)
        return self._cache[key]

    def describe(self) -> Dict:
        if self.recursion is not None:
            return {"kind": "exact", "cap": self.recursion.cap}
        return {
            "kind": "monte_carlo",
            "runs": self.config.runs,
            "rng_seed": self.config.rng_seed,
            "rng_algorithm": RNG_ALGORITHM,
        }


def compare(
    g: InfluenceGraph,
    k: int,
    methods: Sequence[str],
    evaluation: EvaluatorConfig,
    selection: Optional[EvaluatorConfig] = None,
    sieving: Optional[SievingConfig] = None,
    alphas: Optional[Sequence[float]] = None,
    damping: float = 1.0,
) -> ComparisonTable:
    """
    Compare seed selection methods for K = 1..k.

    Greedy and sieving build their sets one node at a time, so each runs
    once with K = k and its prefixes give the smaller sets. Ranking methods
    use their top-K nodes. Every set is then evaluated with ``evaluation``.

    Args:
        g: The influence graph
        k: Largest seed set size
        methods: Any of greedy, sieve, pagerank, degree, wdegree, g1
        evaluation: Evaluator for the reported sigma values
        selection: Evaluator used inside greedy, sieving and G1; defaults to
            ``evaluation``
        sieving: Sieving parameters (K is overridden by ``k``)
        alphas: Run sieving once per alpha instead of once with ``sieving.alpha``
        damping: PageRank damping

    Returns:
        One row per (K, method)

    Raises:
        ValueError: On an unknown method
        SeedSetError: If k is outside 1..n
    """
    unknown = [method for method in methods if method not in METHODS]
    if unknown:
        raise ValueError(f"unknown methods {unknown}, expected some of {list(METHODS)}")
    if not 1 <= k <= g.n:
        raise SeedSetError(f"k must lie in 1..{g.n}, got {k}")
    selection = selection or evaluation
    base_sieving = (sieving or SievingConfig(K=k)).model_copy(update={"K": k})

    pickers: Dict[str, Callable[[], List[int]]] = {}
    for method in methods:
        if method == "greedy":
            pickers["greedy"] = lambda: greedy(g, k, create_evaluator(g, selection)).chosen
        elif method == "sieve":
            for alpha in alphas or [base_sieving.alpha]:
                tag = _sieve_tag(alpha) if alphas else "sieve"
                config = base_sieving.model_copy(update={"alpha": alpha})
                pickers[tag] = lambda config=config: g1_sieving(
                    g, config, create_evaluator(g, selection)
                ).chosen
        elif method == "pagerank":
            pickers["pagerank"] = lambda: pagerank(make_transition_matrix(g), damping).top(k)
        elif method == "degree":
            pickers["degree"] = lambda: rank_by_degree(g).top(k)
        elif method == "wdegree":
            pickers["wdegree"] = lambda: rank_by_weighted_outdegree(g).top(k)
        elif method == "g1":
            pickers["g1"] = lambda: build_g1(g, create_evaluator(g, selection)).top(k)

    orders = {}
    for tag, pick in pickers.items():
        orders[tag] = pick()
        logger.info(f"{tag}: {orders[tag]}")
        if len(orders[tag]) < k:
            logger.warning(f"{tag} picked only {len(orders[tag])} of {k} nodes")

    evaluate = _SetEvaluator(g, evaluation)
    rows = []
    for K in range(1, k + 1):
        for tag, order in orders.items():
            seeds = order[:K]
            sigma, half_width = evaluate(seeds)
            rows.append(
                ComparisonRow(K=K, method=tag, sigma=sigma, half_width=half_width, seeds=seeds)
            )

    metadata = {
        "k": k,
        "methods": list(orders),
        "evaluation": evaluate.describe(),
        "selection": selection.model_dump(mode="json"),
        "damping": damping,
    }
    return ComparisonTable(rows=rows, metadata=metadata)


def uislt_experiment(n: int, k: int, runs: int, rng_seed: int) -> ComparisonTable:
    """
    PageRank against Monte Carlo greedy on a random complete UISLT graph.

    alpha_i ~ U[0, 1] and beta_i ~ U[0.5, 1] / sum of the other alphas. Both
    methods' sets are scored with the closed form, so the rows carry no
    sampling error.
    """
    params = random_uislt_params(n, np.random.default_rng(rng_seed))
    g = build_uislt(params)
    ranked = pagerank(make_transition_matrix(g)).top(k)
    chosen = greedy(
        g,
        k,
        create_evaluator(
            g, EvaluatorConfig(kind=EvaluatorType.MONTE_CARLO, runs=runs, rng_seed=rng_seed)
        ),
    ).chosen

    rows = []
    for K in range(1, k + 1):
        for method, order in (("pagerank", ranked), ("greedy", chosen)):
            seeds = order[:K]
            rows.append(
                ComparisonRow(
                    K=K, method=method, sigma=sigma_uislt(params, SeedSet.of(seeds)).sigma, seeds=seeds
                )
            )
    metadata = {
        "n": n,
        "k": k,
        "runs": runs,
        "rng_seed": rng_seed,
        "evaluation": {"kind": "closed_form"},
        "alphas": params.alphas,
        "betas": params.betas,
    }
    return ComparisonTable(rows=rows, metadata=metadata)
