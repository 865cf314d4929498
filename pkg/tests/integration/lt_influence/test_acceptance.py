"""End-to-end checks of the exact oracles, closed forms and optimizers on many random instances."""

import itertools
import math

import numpy as np
import pytest

from lt_influence.closed_forms.uislt import sigma_uislt, uislt_stationary
from lt_influence.diffusion.montecarlo import estimate_sigma
from lt_influence.evaluators.exact import ExactEvaluator
from lt_influence.evaluators.montecarlo import MonteCarloEvaluator
from lt_influence.exact.models import NodeMask, PathProbQuery
from lt_influence.exact.oracle import optimal_seed_exhaustive
from lt_influence.exact.paths import acyclic_hit_prob, sigma_via_paths
from lt_influence.exact.recursion import sigma_node_exact, sigma_set_exact
from lt_influence.experiments.compare import uislt_experiment
from lt_influence.graph.builders import (
    build_uislt,
    make_transition_matrix,
    random_influence_graph,
    random_tree,
    random_uislt_params,
    scale_free_degree_graph,
)
from lt_influence.graph.models import SeedSet, UISLTParams
from lt_influence.optimizers.greedy import greedy
from lt_influence.optimizers.models import SievingConfig
from lt_influence.optimizers.sieving import g1_sieving
from lt_influence.ranking.pagerank import pagerank, stationary_distribution


pytestmark = pytest.mark.slow


def _random_seed_set(rng, n, max_size=None):
    size = int(rng.integers(1, (max_size or n) + 1))
    return SeedSet.of(rng.choice(n, size=min(size, n), replace=False).tolist())


class TestOracleTriangle:
    """Recursion, path enumeration and Monte Carlo on the same instances."""

    def test_recursion_paths_and_monte_carlo(self):
        """Test exact agreement and Monte Carlo coverage on 500 random graphs."""
        rng = np.random.default_rng(500)
        covered = 0
        for trial in range(500):
            n = int(rng.integers(2, 9))
            g = random_influence_graph(n, float(rng.uniform(0.2, 0.8)), rng)
            a0 = _random_seed_set(rng, n)
            exact = sigma_set_exact(g, a0)
            assert sigma_via_paths(g, a0) == pytest.approx(exact, abs=1e-10)
            estimate = estimate_sigma(g, a0, runs=20_000, rng_seed=trial)
            covered += abs(estimate.mean - exact) <= estimate.half_width + 1e-12
        assert covered >= 0.99 * 500


class TestPathIdentitySuite:
    """Hitting-probability identities and inequalities on 200 random chains."""

    def test_identities(self):
        """Test every identity to 1e-12 and every inequality on random instances n <= 7."""
        rng = np.random.default_rng(200)
        tol = 1e-12
        for _ in range(200):
            n = int(rng.integers(4, 8))
            P = make_transition_matrix(random_influence_graph(n, 0.6, rng))

            def c(start, targets, via=None, taboo=()):
                allowed = NodeMask.full(n).without(taboo) if taboo else None
                query = PathProbQuery(start=start, targets=frozenset(targets), via=via, allowed=allowed)
                return acyclic_hit_prob(P, query)

            A, B = {0}, {0, 1}
            for a in A:
                assert c(a, A) == 1.0
            for j, v in itertools.permutations(range(2, n), 2):
                assert c(j, A) == pytest.approx(c(j, A, via=v) + c(j, A, taboo=[v]), abs=tol)
                assert c(j, A | {v}) == pytest.approx(c(j, [v], taboo=A) + c(j, A, taboo=[v]), abs=tol)
                assert c(j, A, via=v) <= c(j, [v], taboo=A) + tol
                assert c(j, [v], taboo=A) >= c(j, [v], taboo=B) - tol
                assert c(j, A) <= c(j, B) + tol
                assert c(j, A | {v}) - c(j, A) >= c(j, B | {v}) - c(j, B) - tol


class TestClosedForms:
    """Closed forms against the exact engine."""

    def test_uislt_matches_recursion(self):
        """Test the UISLT closed form on 200 feasible instances, n <= 8, |A_0| <= 3."""
        rng = np.random.default_rng(3)
        for _ in range(200):
            n = int(rng.integers(2, 9))
            params = random_uislt_params(n, rng)
            a0 = _random_seed_set(rng, n, max_size=3)
            expected = sigma_set_exact(build_uislt(params), a0)
            assert sigma_uislt(params, a0).sigma == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("family", ["uslt", "uilt"])
    def test_uniform_families_optimal_and_pagerank(self, family):
        """Test that the exhaustive optimum and the PageRank top-K are the predicted sets."""
        rng = np.random.default_rng(61)
        for _ in range(20):
            n = int(rng.integers(4, 9))
            K = int(rng.integers(1, 4))
            if family == "uslt":
                betas = rng.permutation(np.linspace(0.2, 1.0, n)) / (n - 1)
                params = UISLTParams.uniform_susceptance(betas.tolist())
                expected = sorted(np.argsort(betas)[:K].tolist())
            else:
                alphas = rng.permutation(np.linspace(0.2, 1.0, n)) / n
                params = UISLTParams.uniform_influence(alphas.tolist())
                expected = sorted(np.argsort(-alphas)[:K].tolist())
            g = build_uislt(params)
            best, _ = optimal_seed_exhaustive(g, K)
            assert best.sorted() == expected
            assert sorted(pagerank(make_transition_matrix(g)).top(K)) == expected

    def test_stationary_formula(self):
        """Test pi proportional to alpha / beta up to n = 50."""
        rng = np.random.default_rng(50)
        for n in (2, 5, 10, 20, 35, 50):
            params = random_uislt_params(n, rng)
            pi = stationary_distribution(make_transition_matrix(build_uislt(params)))
            np.testing.assert_allclose(pi, uislt_stationary(params), atol=1e-10)

    def test_trees(self):
        """Test sigma = d + 1 for every node of 100 random trees, n <= 20."""
        rng = np.random.default_rng(100)
        for _ in range(100):
            n = int(rng.integers(2, 21))
            g = random_tree(n, rng)
            for node in range(n):
                degree = len(g.out_neighbors(node))
                assert sigma_node_exact(g, node) == pytest.approx(degree + 1, abs=1e-10)


class TestOptimizers:
    """Greedy and sieving quality."""

    def test_greedy_guarantee(self):
        """Test greedy >= (1 - 1/e) * optimum on random instances n <= 10, K <= 3."""
        rng = np.random.default_rng(7)
        for _ in range(60):
            n = int(rng.integers(3, 11))
            K = int(rng.integers(1, 4))
            g = random_influence_graph(n, float(rng.uniform(0.2, 0.7)), rng)
            _, best = optimal_seed_exhaustive(g, K)
            assert greedy(g, K, ExactEvaluator(g)).sigma >= (1 - 1 / math.e) * best - 1e-12

    def test_sieving_small_graphs(self):
        """Test sieving >= 0.9 * greedy per instance on random eight-node graphs, K = 3."""
        rng = np.random.default_rng(8)
        for _ in range(50):
            g = random_influence_graph(8, 0.4, rng)
            sieve = g1_sieving(g, SievingConfig(K=3, alpha=0.3, epsilon=1e-6), ExactEvaluator(g))
            reference = greedy(g, 3, ExactEvaluator(g))
            assert sieve.sigma >= 0.9 * reference.sigma
            assert sieve.evaluator_calls <= reference.evaluator_calls

    def test_sieving_scale_free(self):
        """Test sieving against greedy with Monte Carlo evaluators on scale-free degree graphs."""
        rng = np.random.default_rng(1000)
        k = 5
        for trial in range(3):
            g = scale_free_degree_graph(150, 2, rng)
            config = SievingConfig(K=k, alpha=0.3, epsilon=1e-6, activation_runs=2_000)
            sieve = g1_sieving(g, config, MonteCarloEvaluator(g, runs=2_000, rng_seed=trial))
            reference = greedy(g, k, MonteCarloEvaluator(g, runs=2_000, rng_seed=trial))
            judge = MonteCarloEvaluator(g, runs=20_000, rng_seed=10_000 + trial)
            for K in range(1, len(sieve.chosen) + 1):
                assert judge.sigma(sieve.prefix(K)) >= 0.9 * judge.sigma(reference.prefix(K))
            assert sieve.evaluator_calls < reference.evaluator_calls

    @pytest.mark.large
    def test_sieving_scale_free_large(self):
        """Test sieving against greedy for every K <= 20 on a 1000-node scale-free degree graph."""
        rng = np.random.default_rng(1_000_000)
        k = 20
        g = scale_free_degree_graph(1000, 2, rng)
        config = SievingConfig(K=k, alpha=0.3, epsilon=1e-6, activation_runs=500)
        sieve = g1_sieving(g, config, MonteCarloEvaluator(g, runs=300, rng_seed=41))
        reference = greedy(g, k, MonteCarloEvaluator(g, runs=300, rng_seed=41))
        judge = MonteCarloEvaluator(g, runs=50_000, rng_seed=90_210)
        assert len(sieve.chosen) == k
        for K in range(1, k + 1):
            assert judge.sigma(sieve.prefix(K)) >= 0.9 * judge.sigma(reference.prefix(K))
        assert sieve.evaluator_calls < reference.evaluator_calls
        assert reference.evaluator_calls == sum(1000 - r for r in range(k))

    def test_uislt_pagerank_on_par_with_greedy(self):
        """Test PageRank >= 0.95 * greedy for K <= 10 on a random 50-node UISLT graph."""
        table = uislt_experiment(50, 10, runs=2_000, rng_seed=2024)
        for K in range(1, 11):
            rows = {row.method: row.sigma for row in table.rows if row.K == K}
            assert rows["pagerank"] >= 0.95 * rows["greedy"]
