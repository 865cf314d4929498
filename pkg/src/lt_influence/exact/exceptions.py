from lt_influence.exceptions import LTInfluenceError


class ExactModeCapError(LTInfluenceError):
    """
    Exception raised when an exact computation is asked for a network above
    its size cap. Exact evaluation is exponential in the node count, so the
    request is refused rather than truncated.
    """

    def __init__(self, n: int, cap: int, method: str):
        """
        Initialize the ExactModeCapError.

        Args:
            n: Number of nodes the computation would range over
            cap: The configured cap for ``method``
            method: Which exact method refused ("recursion" or "paths")
        """
        self.n = n
        self.cap = cap
        self.method = method
        super().__init__(
            f"exact {method} mode is capped at {cap} nodes, got {n}; "
            f"use a Monte Carlo evaluator or raise the cap"
        )


class EnumerationBudgetError(LTInfluenceError):
    """Exception raised when exhaustive search would visit too many seed sets."""

    def __init__(self, subsets: int, budget: int):
        self.subsets = subsets
        self.budget = budget
        super().__init__(
            f"exhaustive search needs {subsets} subsets, budget is {budget}"
        )
