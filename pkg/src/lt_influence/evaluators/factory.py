from lt_influence.evaluators.exact import ExactEvaluator
from lt_influence.evaluators.exceptions import EvaluatorError
from lt_influence.evaluators.interfaces import IInfluenceEvaluator
from lt_influence.evaluators.models import EvaluatorConfig, EvaluatorType
from lt_influence.evaluators.montecarlo import MonteCarloEvaluator
from lt_influence.graph.models import InfluenceGraph


def create_evaluator(g: InfluenceGraph, config: EvaluatorConfig) -> IInfluenceEvaluator:
    if config.kind == EvaluatorType.EXACT:
        return ExactEvaluator(g, cap=config.exact_cap)
    elif config.kind == EvaluatorType.MONTE_CARLO:
        return MonteCarloEvaluator(g, runs=config.runs, rng_seed=config.rng_seed)
    raise EvaluatorError(f"Unsupported evaluator kind: {config.kind}", str(config.kind))
