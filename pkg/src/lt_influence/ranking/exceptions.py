from lt_influence.exceptions import LTInfluenceError


class ConvergenceError(LTInfluenceError):
    """
    Exception raised when power iteration stops at ``max_iter`` without
    reaching the requested tolerance.
    """

    def __init__(self, iterations: int, residual: float, tol: float):
        """
        Initialize the ConvergenceError.

        Args:
            iterations: Number of iterations performed
            residual: L1 residual after the last iteration
            tol: The tolerance that was not met
        """
        self.iterations = iterations
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(residual {residual:.3e} > tol {tol:.3e})"
        )
