"""
Monte Carlo LT Diffusion
------------------------

Simulates the progressive Linear Threshold process. Each run draws one
threshold per node at the start, then repeatedly activates every inactive
node whose total incoming influence from the active set reaches its
threshold, until a step adds nothing.

Random numbers come from numpy's counter-based Philox generator. Run r of a
given ``rng_seed`` always consumes the same block of counters, so a run's
thresholds do not depend on batching, thread count or run order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse

from lt_influence.config.settings import get_settings, resolve_threads
from lt_influence.diffusion.models import (
    ActivationTrace,
    MonteCarloSummary,
    SigmaEstimate,
)
from lt_influence.graph.builders import ensure_valid
from lt_influence.graph.models import InfluenceGraph, SeedSet
from lt_influence.utils import ProgressTracker


logger = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy.Philox(4x64-10);key=SeedSequence(rng_seed);counter=run*ceil(n/4)"


def _blocks(n: int) -> int:
    # Philox yields four 64-bit words per counter value, one double each
    return -(-n // 4)


def _philox_key(rng_seed: int) -> np.ndarray:
    return np.random.SeedSequence(rng_seed).generate_state(2, np.uint64)


def draw_thresholds(n: int, rng_seed: int, first_run: int, count: int) -> np.ndarray:
    """
    Thresholds for runs ``first_run .. first_run + count - 1``.

    Returns:
        A (count, n) array of values in (0, 1]
    """
    blocks = _blocks(n)
    bit_generator = np.random.Philox(counter=first_run * blocks, key=_philox_key(rng_seed))
    uniforms = np.random.Generator(bit_generator).random((count, 4 * blocks))[:, :n]
    return 1.0 - uniforms


class _Propagator:
    """Vectorized LT propagation of a batch of runs sharing one graph and seed set."""

    def __init__(self, g: InfluenceGraph, a0: SeedSet):
        self.n = g.n
        self.weights_t = g.weight_matrix().T.tocsr()
        self.seed_mask = np.zeros(g.n, dtype=bool)
        self.seed_mask[a0.sorted()] = True

    def run(
        self, thresholds: np.ndarray, record_steps: bool = False
    ) -> Tuple[np.ndarray, List[np.ndarray]]:
        batch = thresholds.shape[0]
        active = np.tile(self.seed_mask, (batch, 1))
        frontier = active.copy()
        influence = np.zeros((batch, self.n))
        steps = [frontier.copy()] if record_steps else []

        while frontier.any():
            # Only the newly activated nodes add influence
            influence += np.asarray(self.weights_t @ frontier.T.astype(float)).T
            frontier = ~active & (influence >= thresholds)
            active |= frontier
            if record_steps and frontier.any():
                steps.append(frontier.copy())
        return active, steps


def _check_inputs(g: InfluenceGraph, a0: SeedSet, runs: int = 1) -> None:
    if runs < 1:
        raise ValueError(f"runs must be at least 1, got {runs}")
    a0.check_against(g)
    ensure_valid(g)


def simulate_activation(g: InfluenceGraph, a0: SeedSet, rng_seed: int) -> ActivationTrace:
    """
    Realize one diffusion from ``a0``, using run 0 of the ``rng_seed`` stream.

    Raises:
        SeedSetError: If ``a0`` is empty or does not fit ``g``
        GraphValidationError: If ``g`` is not a valid LT instance
    """
    _check_inputs(g, a0)
    propagator = _Propagator(g, a0)
    _, steps = propagator.run(draw_thresholds(g.n, rng_seed, 0, 1), record_steps=True)
    return ActivationTrace(
        steps=[np.flatnonzero(step[0]).tolist() for step in steps], rng_seed=rng_seed
    )


def _run_batch(
    propagator: _Propagator, rng_seed: int, first_run: int, count: int
) -> Tuple[np.ndarray, int, int]:
    thresholds = draw_thresholds(propagator.n, rng_seed, first_run, count)
    active, _ = propagator.run(thresholds)
    sizes = active.sum(axis=1).astype(np.int64)
    return active.sum(axis=0).astype(np.int64), int(sizes.sum()), int((sizes * sizes).sum())


def simulate_runs(
    g: InfluenceGraph,
    a0: SeedSet,
    runs: int,
    rng_seed: int,
    threads: Optional[int] = None,
) -> MonteCarloSummary:
    """
    Run ``runs`` independent diffusions and tally the outcomes.

    Args:
        g: A valid influence graph
        a0: Non-empty initial active set
        runs: Number of runs, at least 1
        rng_seed: Seed of the counter-based stream
        threads: Worker threads, defaults to LT_INFLUENCE_THREADS

    Returns:
        Integer per-node activation counts plus terminal-size sums
    """
    _check_inputs(g, a0, runs)
    settings = get_settings()
    batch_size = settings.MC_BATCH_SIZE
    workers = threads or resolve_threads(settings)
    propagator = _Propagator(g, a0)
    batches = [(start, min(batch_size, runs - start)) for start in range(0, runs, batch_size)]

    counts = np.zeros(g.n, dtype=np.int64)
    size_sum = 0
    size_sq_sum = 0
    with ProgressTracker(runs, desc="Simulating") as progress:

        def work(batch: Tuple[int, int]) -> Tuple[np.ndarray, int, int]:
            result = _run_batch(propagator, rng_seed, *batch)
            progress.step(batch[1])
            return result

        if workers == 1 or len(batches) == 1:
            results = map(work, batches)
        else:
            executor = ThreadPoolExecutor(max_workers=min(workers, len(batches)))
            with executor:
                results = list(executor.map(work, batches))
        for batch_counts, batch_sum, batch_sq in results:
            counts += batch_counts
            size_sum += batch_sum
            size_sq_sum += batch_sq

    logger.debug(
        f"{runs} runs from {a0.sorted()}: mean terminal size {size_sum / runs:.6g}"
    )
    return MonteCarloSummary(
        n=g.n,
        runs=runs,
        counts=counts.tolist(),
        size_sum=size_sum,
        size_sq_sum=size_sq_sum,
        rng_seed=rng_seed,
        rng_algorithm=RNG_ALGORITHM,
    )


def estimate_sigma(
    g: InfluenceGraph, a0: SeedSet, runs: int, rng_seed: int
) -> SigmaEstimate:
    """Average |A_S| over ``runs`` diffusions, with a 3-sigma half-width."""
    return simulate_runs(g, a0, runs, rng_seed).sigma_estimate()


def estimate_activation_probs(
    g: InfluenceGraph, a0: SeedSet, runs: int, rng_seed: int
) -> np.ndarray:
    """Fraction of runs in which each node ends up active."""
    return simulate_runs(g, a0, runs, rng_seed).activation_probs()
