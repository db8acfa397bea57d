class AGCodesError(Exception):
    """Base class for every error raised by the toolkit."""


class FieldError(AGCodesError):
    pass


class MatrixShapeError(AGCodesError):
    pass


class CurveError(AGCodesError):
    pass


class DivisorError(AGCodesError):
    pass


class EvaluationError(AGCodesError):
    pass


class CodeConstructionError(AGCodesError):
    pass


class ParameterRangeError(AGCodesError):
    def __init__(self, failures):
        if isinstance(failures, str):
            failures = [failures]
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class BudgetExceededError(AGCodesError):
    pass


class InvariantViolation(AGCodesError):
    """
    An internal consistency check failed.

    Raised when an oracle such as the Riemann-Roch dimension law or the CSS
    commutation relation does not hold; it signals an implementation bug.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        message = f"invariant '{invariant}' violated"
        if detail:
            message += f": {detail}"
        super().__init__(message)
