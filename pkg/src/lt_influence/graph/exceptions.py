from typing import Any, Iterable, List, Optional

from lt_influence.exceptions import LTInfluenceError


class GraphValidationError(LTInfluenceError):
    """
    Exception raised when an influence graph violates the LT model bounds.

    The offending entries are carried in ``violations`` so callers can report
    them without re-running validation.
    """

    def __init__(self, message: str, violations: Optional[List[Any]] = None):
        """
        Initialize the GraphValidationError.

        Args:
            message: Error message describing the failure
            violations: Violation records produced by graph validation
        """
        self.message = message
        self.violations = list(violations or [])
        if self.violations:
            details = "; ".join(str(v) for v in self.violations[:5])
            more = len(self.violations) - 5
            suffix = f" (+{more} more)" if more > 0 else ""
            super().__init__(f"{message}: {details}{suffix}")
        else:
            super().__init__(message)


class InfeasibleParamsError(LTInfluenceError):
    """
    Exception raised when UISLT parameters break the column-sum bound.

    For node ``i`` the other nodes' influence levels must satisfy
    sum(alpha_j, j != i) <= 1 / beta_i.
    """

    def __init__(self, node: int, alpha_sum: float, beta: float):
        self.node = node
        self.alpha_sum = alpha_sum
        self.beta = beta
        bound = float("inf") if beta == 0 else 1.0 / beta
        super().__init__(
            f"infeasible UISLT parameters at node {node}: "
            f"sum of other alphas {alpha_sum:.6g} exceeds 1/beta = {bound:.6g}"
        )


class IsolatedNodeError(LTInfluenceError):
    """Exception raised when degree normalization meets a zero-degree node."""

    def __init__(self, node: int):
        self.node = node
        super().__init__(f"node {node} is isolated (degree 0), cannot normalize")


class CycleDetectedError(LTInfluenceError):
    """Exception raised when an operation requires a forest but found a cycle."""

    pass


class GraphFormatError(LTInfluenceError):
    """
    Exception raised when a graph or coauthorship file cannot be parsed.
    """

    def __init__(self, message: str, line_no: int = None, line: str = None):
        """
        Initialize the GraphFormatError.

        Args:
            message: Error message describing the parse failure
            line_no: 1-based line number in the input, if known
            line: The raw offending line
        """
        self.message = message
        self.line_no = line_no
        self.line = line
        super().__init__(
            f"{message} (line {line_no}: {line!r})" if line_no is not None else message
        )


class SeedSetError(LTInfluenceError):
    """Exception raised when a seed set is empty or does not fit the graph."""

    def __init__(self, message: str, nodes: Iterable[int] = ()):
        self.message = message
        self.nodes = sorted(nodes)
        super().__init__(f"{message} (nodes: {self.nodes})" if self.nodes else message)
