"""Tests for the exact and Monte Carlo influence evaluators."""

import numpy as np
import pytest
from pydantic import ValidationError

from lt_influence.config.settings import reset_settings
from lt_influence.diffusion.montecarlo import RNG_ALGORITHM
from lt_influence.evaluators.exact import ExactEvaluator
from lt_influence.evaluators.factory import create_evaluator
from lt_influence.evaluators.models import EvaluatorConfig, EvaluatorType
from lt_influence.evaluators.montecarlo import MonteCarloEvaluator, query_seed
from lt_influence.exact.exceptions import ExactModeCapError
from lt_influence.graph.exceptions import GraphValidationError, SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet


class TestExactEvaluator:
    """Tests for ExactEvaluator."""

    def test_sigma(self, three_cycle):
        """Test sigma against hand-computed values."""
        evaluator = ExactEvaluator(three_cycle)
        assert evaluator.sigma([0]) == pytest.approx(1.75)
        assert evaluator.sigma(SeedSet.of([0]), excluded=[2]) == pytest.approx(1.5)
        assert evaluator.estimate([0, 1]) == (pytest.approx(2.5), 0.0)
        assert evaluator.is_exact

    def test_cache_and_calls(self, three_cycle):
        """Test that repeated queries are answered from the cache."""
        evaluator = ExactEvaluator(three_cycle)
        evaluator.sigma([0])
        evaluator.sigma([0])
        evaluator.sigma([0], excluded=[2])
        assert evaluator.calls == 2
        assert evaluator.activation_calls == 0

    def test_activation_probs(self, two_node_graph):
        """Test g = (1, 0.5) and that callers get a private copy."""
        evaluator = ExactEvaluator(two_node_graph)
        probs = evaluator.activation_probs([0])
        np.testing.assert_allclose(probs, [1.0, 0.5])
        probs[1] = 99.0
        np.testing.assert_allclose(evaluator.activation_probs([0]), [1.0, 0.5])
        assert evaluator.activation_calls == 1
        assert evaluator.calls == 0

    def test_seed_validation(self, three_cycle):
        """Test that empty, out-of-range and excluded seeds are refused."""
        evaluator = ExactEvaluator(three_cycle)
        with pytest.raises(SeedSetError):
            evaluator.sigma([])
        with pytest.raises(SeedSetError):
            evaluator.sigma([5])
        with pytest.raises(SeedSetError):
            evaluator.sigma([0], excluded=[0])

    def test_cap(self, three_cycle):
        """Test that the cap is enforced at query time."""
        evaluator = ExactEvaluator(three_cycle, cap=2)
        with pytest.raises(ExactModeCapError):
            evaluator.sigma([0])
        assert evaluator.sigma([0], excluded=[2]) == pytest.approx(1.5)

    def test_describe(self, three_cycle):
        """Test the metadata block."""
        assert ExactEvaluator(three_cycle, cap=10).describe() == {
            "kind": "exact",
            "method": "recursion",
            "cap": 10,
        }


class TestMonteCarloEvaluator:
    """Tests for MonteCarloEvaluator."""

    def test_deterministic(self, three_cycle):
        """Test that two evaluators with one base seed agree exactly."""
        first = MonteCarloEvaluator(three_cycle, runs=500, rng_seed=3)
        second = MonteCarloEvaluator(three_cycle, runs=500, rng_seed=3)
        assert first.estimate([0]) == second.estimate([0])
        assert first.estimate([1], excluded=[2]) == second.estimate([1], excluded=[2])

    def test_close_to_exact(self, random_graphs):
        """Test that estimates land within a small multiple of their half-width of the exact value."""
        for g in random_graphs[:5]:
            exact = ExactEvaluator(g).sigma([0])
            mean, half_width = MonteCarloEvaluator(g, runs=4000, rng_seed=11).estimate([0])
            assert abs(mean - exact) <= 1.5 * half_width + 1e-9

    def test_excluded(self, chain_graph):
        """Test that removing the middle node stops the spread."""
        evaluator = MonteCarloEvaluator(chain_graph, runs=50, rng_seed=1)
        assert evaluator.estimate([0], excluded=[1]) == (1.0, 0.0)
        assert evaluator.sigma([0]) == 3.0
        assert not evaluator.is_exact

    def test_excluded_seed(self, chain_graph):
        """Test that a seed cannot also be excluded."""
        with pytest.raises(SeedSetError):
            MonteCarloEvaluator(chain_graph, runs=10, rng_seed=1).sigma([0], excluded=[0])

    def test_activation_probs(self, chain_graph):
        """Test activation frequencies on a deterministic chain."""
        evaluator = MonteCarloEvaluator(chain_graph, runs=20, rng_seed=5)
        np.testing.assert_allclose(evaluator.activation_probs([0]), [1.0, 1.0, 1.0])

    def test_invalid_graph(self):
        """Test that invalid graphs are refused up front."""
        with pytest.raises(GraphValidationError):
            MonteCarloEvaluator(InfluenceGraph(n=2, edges={(0, 1): 1.5}), runs=10, rng_seed=0)

    def test_runs(self, chain_graph):
        """Test that at least one run is required."""
        with pytest.raises(ValueError):
            MonteCarloEvaluator(chain_graph, runs=0, rng_seed=0)

    def test_describe(self, chain_graph):
        """Test the metadata block."""
        assert MonteCarloEvaluator(chain_graph, runs=7, rng_seed=9).describe() == {
            "kind": "monte_carlo",
            "runs": 7,
            "rng_seed": 9,
            "rng_algorithm": RNG_ALGORITHM,
        }


class TestQuerySeed:
    """Tests for query_seed."""

    def test_stable(self):
        """Test that one query always maps to one stream."""
        assert query_seed(4, SeedSet.of([1, 2]), frozenset({3})) == query_seed(
            4, SeedSet.of([2, 1]), frozenset({3})
        )

    def test_distinct(self):
        """Test that seeds and exclusions are not confused with each other."""
        seeds = {
            query_seed(4, SeedSet.of([1, 2]), frozenset()),
            query_seed(4, SeedSet.of([1]), frozenset({2})),
            query_seed(4, SeedSet.of([1, 2]), frozenset({3})),
            query_seed(5, SeedSet.of([1, 2]), frozenset()),
        }
        assert len(seeds) == 4


class TestFactory:
    """Tests for the evaluator factory and its configuration."""

    def test_exact(self, three_cycle):
        """Test that the default configuration is exact."""
        evaluator = create_evaluator(three_cycle, EvaluatorConfig(exact_cap=5))
        assert isinstance(evaluator, ExactEvaluator)
        assert evaluator.recursion.cap == 5

    def test_monte_carlo(self, three_cycle):
        """Test a Monte Carlo configuration."""
        config = EvaluatorConfig(kind=EvaluatorType.MONTE_CARLO, runs=100, rng_seed=2)
        evaluator = create_evaluator(three_cycle, config)
        assert isinstance(evaluator, MonteCarloEvaluator)
        assert evaluator.runs == 100

    def test_monte_carlo_needs_seed(self):
        """Test that a Monte Carlo configuration without a seed is rejected."""
        with pytest.raises(ValidationError, match="rng_seed"):
            EvaluatorConfig(kind="monte_carlo", runs=100)

    def test_default_runs(self, monkeypatch):
        """Test that the run count defaults to the configured value."""
        monkeypatch.setenv("LT_INFLUENCE_DEFAULT_RUNS", "123")
        reset_settings()
        assert EvaluatorConfig(kind="monte_carlo", rng_seed=1).runs == 123
