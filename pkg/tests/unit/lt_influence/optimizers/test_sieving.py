"""Tests for G1-Sieving and the dummy node classification."""

import numpy as np
import pytest
from pydantic import ValidationError

from lt_influence.evaluators.exact import ExactEvaluator
from lt_influence.evaluators.montecarlo import MonteCarloEvaluator
from lt_influence.graph.builders import random_influence_graph
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph
from lt_influence.optimizers.greedy import greedy
from lt_influence.optimizers.models import SievingConfig
from lt_influence.optimizers.sieving import classify_dummies, evaluate_restricted, g1_sieving
from lt_influence.ranking.heuristics import build_g1


@pytest.fixture
def instances():
    """Ten random instances with eight nodes."""
    rng = np.random.default_rng(2024)
    return [random_influence_graph(8, 0.4, rng) for _ in range(10)]


class TestG1Sieving:
    """Tests for g1_sieving."""

    def test_single_seed(self, random_graphs):
        """Test that K = 1 returns the head of G1, like greedy."""
        for g in random_graphs[:10]:
            sieve = g1_sieving(g, SievingConfig(K=1), ExactEvaluator(g))
            assert sieve.chosen == greedy(g, 1, ExactEvaluator(g)).chosen
            assert sieve.chosen == build_g1(g, ExactEvaluator(g)).top(1)

    def test_edgeless(self, empty_graph):
        """Test that ties everywhere give ascending ids."""
        result = g1_sieving(empty_graph, SievingConfig(K=3), ExactEvaluator(empty_graph))
        assert result.chosen == [0, 1, 2]
        assert result.sigma == 3.0
        assert result.method == "sieve"
        assert result.activation_calls == 2

    def test_round_gains_are_marginal(self, instances):
        """Test that each round reports sigma(X + i) - sigma(X) and keeps the restricted score apart."""
        for g in instances:
            evaluator = ExactEvaluator(g)
            result = g1_sieving(g, SievingConfig(K=3, alpha=1.0, epsilon=0.0), evaluator)
            previous = 0.0
            for pos, record in enumerate(result.per_round):
                value = evaluator.sigma(result.chosen[: pos + 1])
                assert record.gain == pytest.approx(value - previous, abs=1e-12)
                previous = value
                if pos > 0:
                    restricted = evaluator.sigma([record.node], excluded=result.chosen[:pos])
                    assert record.score == pytest.approx(restricted, abs=1e-12)
            assert sum(r.gain for r in result.per_round) == pytest.approx(result.sigma, abs=1e-12)

    def test_gain_queries_not_counted(self, empty_graph):
        """Test that the marginal gains cost no evaluator calls in the result."""
        result = g1_sieving(empty_graph, SievingConfig(K=3), ExactEvaluator(empty_graph))
        assert result.evaluator_calls == 4 + 3 + 2
        assert [r.gain for r in result.per_round] == [1.0, 1.0, 1.0]

    def test_close_to_greedy(self, instances):
        """Test that sieving stays close to greedy on average."""
        sieve_total = greedy_total = 0.0
        for g in instances:
            sieve_total += g1_sieving(g, SievingConfig(K=3), ExactEvaluator(g)).sigma
            greedy_total += greedy(g, 3, ExactEvaluator(g)).sigma
        assert sieve_total >= 0.85 * greedy_total

    def test_fewer_calls_than_greedy(self, instances):
        """Test that sieving never issues more sigma queries than greedy."""
        for g in instances:
            sieve = g1_sieving(g, SievingConfig(K=3), ExactEvaluator(g))
            assert sieve.evaluator_calls <= greedy(g, 3, ExactEvaluator(g)).evaluator_calls

    def test_restricted_argmax(self, instances):
        """Test that without sieving thresholds the second pick maximizes restricted sigma."""
        config = SievingConfig(K=2, alpha=1.0, epsilon=0.0)
        for g in instances:
            evaluator = ExactEvaluator(g)
            result = g1_sieving(g, config, evaluator)
            head = result.chosen[0]
            scores = {v: evaluator.sigma([v], excluded=[head]) for v in range(g.n) if v != head}
            best = max(scores.values())
            expected = min(v for v, s in scores.items() if s >= best - 1e-12)
            assert result.chosen[1] == expected

    def test_thresholding_drops_subordinates(self, chain_graph):
        """Test that a node the picks surely activate is never picked."""
        result = g1_sieving(chain_graph, SievingConfig(K=2), ExactEvaluator(chain_graph))
        assert result.chosen == [0]
        assert len(result.per_round) == 1

    def test_without_filters(self, chain_graph):
        """Test that switching both filters off ranks by individual influence."""
        config = SievingConfig(K=2, use_thresholding=False, use_restriction=False)
        result = g1_sieving(chain_graph, config, ExactEvaluator(chain_graph))
        assert result.chosen == [0, 1]
        assert result.activation_calls == 0

    def test_monte_carlo_evaluator(self, three_cycle):
        """Test that a Monte Carlo run is reproducible."""
        config = SievingConfig(K=2, activation_runs=200)
        first = g1_sieving(three_cycle, config, MonteCarloEvaluator(three_cycle, runs=300, rng_seed=4))
        second = g1_sieving(three_cycle, config, MonteCarloEvaluator(three_cycle, runs=300, rng_seed=4))
        assert first.chosen == second.chosen
        assert first.sigma == second.sigma

    def test_k_above_n(self, three_cycle):
        """Test that K may not exceed n."""
        with pytest.raises(SeedSetError):
            g1_sieving(three_cycle, SievingConfig(K=4), ExactEvaluator(three_cycle))

    def test_config_validation(self):
        """Test the configuration bounds."""
        with pytest.raises(ValidationError):
            SievingConfig(K=0)
        with pytest.raises(ValidationError):
            SievingConfig(K=2, alpha=0.0)
        with pytest.raises(ValidationError):
            SievingConfig(K=2, epsilon=-1.0)


class TestEvaluateRestricted:
    """Tests for evaluate_restricted."""

    def test_value(self, three_cycle):
        """Test that removing node 2 shortens the cycle."""
        assert evaluate_restricted(three_cycle, [2], 0, ExactEvaluator(three_cycle)) == pytest.approx(1.5)

    def test_empty_removal(self, three_cycle):
        """Test that removing nothing gives the plain influence."""
        assert evaluate_restricted(three_cycle, [], 0, ExactEvaluator(three_cycle)) == pytest.approx(1.75)

    def test_node_in_removed_set(self, three_cycle):
        """Test that the node may not be removed itself."""
        with pytest.raises(SeedSetError):
            evaluate_restricted(three_cycle, [0], 0, ExactEvaluator(three_cycle))

    def test_foreign_evaluator(self, three_cycle, two_node_graph):
        """Test that the evaluator must belong to the graph."""
        with pytest.raises(ValueError):
            evaluate_restricted(three_cycle, [2], 0, ExactEvaluator(two_node_graph))


class TestClassifyDummies:
    """Tests for classify_dummies."""

    def test_leecher_residual(self):
        """Test that a node acting only through X has a zero residual."""
        g = InfluenceGraph(n=2, edges={(1, 0): 1.0})
        result = classify_dummies(g, [0], SievingConfig(K=1))
        assert result.leecher_residuals[1] == pytest.approx(0.0, abs=1e-12)
        assert result.restricted_sigma[1] == pytest.approx(1.0)
        assert result.leechers == []
        assert result.subordinates == []

    def test_subordinate(self):
        """Test that a node X activates with certainty is a subordinate."""
        g = InfluenceGraph(n=2, edges={(0, 1): 1.0})
        result = classify_dummies(g, [0], SievingConfig(K=1))
        assert result.subordinates == [1]
        assert result.activation_probs[1] == pytest.approx(1.0)

    def test_epsilon_cutoff(self):
        """Test that an epsilon above the restricted influence flags leechers."""
        g = InfluenceGraph(n=3, edges={(1, 0): 1.0, (2, 1): 0.5})
        result = classify_dummies(g, [0], SievingConfig(K=1, epsilon=1.2))
        assert result.leechers == [1]
        assert result.restricted_sigma[2] == pytest.approx(1.5)

    def test_empty_set(self, three_cycle):
        """Test that X must not be empty."""
        with pytest.raises(SeedSetError):
            classify_dummies(three_cycle, [], SievingConfig(K=1))
