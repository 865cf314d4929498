"""Tests for the method comparison experiments."""

import numpy as np
import pytest

from lt_influence.closed_forms.uislt import sigma_uislt
from lt_influence.evaluators.exact import ExactEvaluator
from lt_influence.evaluators.models import EvaluatorConfig
from lt_influence.experiments.compare import compare, uislt_experiment
from lt_influence.graph.builders import random_influence_graph
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import SeedSet, UISLTParams
from lt_influence.optimizers.greedy import greedy


@pytest.fixture
def graph():
    """A random eight-node instance."""
    return random_influence_graph(8, 0.4, np.random.default_rng(8))


class TestCompare:
    """Tests for compare."""

    def test_rows(self, graph):
        """Test one row per K and method, ordered by K then method."""
        table = compare(graph, 5, ["greedy", "pagerank"], EvaluatorConfig())
        assert len(table.rows) == 10
        assert [(row.K, row.method) for row in table.rows[:4]] == [
            (1, "greedy"),
            (1, "pagerank"),
            (2, "greedy"),
            (2, "pagerank"),
        ]
        assert table.metadata["methods"] == ["greedy", "pagerank"]
        assert table.metadata["evaluation"]["kind"] == "exact"

    def test_greedy_prefixes(self, graph):
        """Test that greedy rows are prefixes of one K = k run."""
        table = compare(graph, 3, ["greedy"], EvaluatorConfig())
        chosen = greedy(graph, 3, ExactEvaluator(graph)).chosen
        assert [row.seeds for row in table.rows] == [chosen[:1], chosen[:2], chosen[:3]]
        assert table.rows[-1].sigma == pytest.approx(ExactEvaluator(graph).sigma(chosen))

    def test_sigma_non_decreasing(self, graph):
        """Test that growing prefixes never lose influence."""
        table = compare(graph, 4, ["greedy", "sieve", "degree", "wdegree", "g1"], EvaluatorConfig())
        for method in table.metadata["methods"]:
            values = [row.sigma for row in table.for_method(method)]
            for prev, cur in zip(values, values[1:]):
                assert cur >= prev - 1e-12

    def test_alpha_sweep(self, graph):
        """Test that each alpha gets its own tagged series."""
        table = compare(graph, 2, ["sieve"], EvaluatorConfig(), alphas=[0.2, 0.5])
        assert table.metadata["methods"] == ["sieve[alpha=0.2]", "sieve[alpha=0.5]"]
        assert len(table.rows) == 4

    def test_monte_carlo_evaluation(self, chain_graph):
        """Test a common Monte Carlo evaluation with exact selection."""
        evaluation = EvaluatorConfig(kind="monte_carlo", runs=200, rng_seed=1)
        table = compare(
            chain_graph, 2, ["degree"], evaluation, selection=EvaluatorConfig()
        )
        assert table.rows[0].seeds == [0]
        assert table.rows[0].sigma == 3.0
        assert table.metadata["evaluation"]["rng_seed"] == 1

    def test_unknown_method(self, graph):
        """Test that unknown methods are refused before any work is done."""
        with pytest.raises(ValueError, match="unknown methods"):
            compare(graph, 2, ["greedy", "random"], EvaluatorConfig())

    def test_k_above_n(self, graph):
        """Test that k may not exceed n."""
        with pytest.raises(SeedSetError):
            compare(graph, 9, ["degree"], EvaluatorConfig())


class TestUisltExperiment:
    """Tests for the UISLT PageRank experiment."""

    def test_rows(self):
        """Test the row layout and the closed-form scoring."""
        table = uislt_experiment(6, 2, runs=200, rng_seed=5)
        assert [(row.K, row.method) for row in table.rows] == [
            (1, "pagerank"),
            (1, "greedy"),
            (2, "pagerank"),
            (2, "greedy"),
        ]
        params = UISLTParams(alphas=table.metadata["alphas"], betas=table.metadata["betas"])
        for row in table.rows:
            assert row.sigma == pytest.approx(sigma_uislt(params, SeedSet.of(row.seeds)).sigma)
            assert row.half_width == 0.0

    def test_reproducible(self):
        """Test that one seed gives one table."""
        assert uislt_experiment(5, 2, runs=100, rng_seed=3) == uislt_experiment(
            5, 2, runs=100, rng_seed=3
        )
