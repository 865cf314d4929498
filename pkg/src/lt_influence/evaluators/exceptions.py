from lt_influence.exceptions import LTInfluenceError


class EvaluatorError(LTInfluenceError):
    """
    Exception raised when an influence evaluator is misconfigured or asked
    for something it cannot provide.
    """

    def __init__(self, message: str, evaluator: str = None):
        """
        Initialize the EvaluatorError.

        Args:
            message: Error message describing the failure
            evaluator: Kind of the evaluator involved, if known
        """
        self.message = message
        self.evaluator = evaluator
        super().__init__(f"{message} (evaluator: {evaluator})" if evaluator else message)
