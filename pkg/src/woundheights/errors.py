class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its tuple budget.

    ``partial`` carries whatever was completed before the cap was hit.
    """

    def __init__(self, message: str, partial=None, used: int = 0, budget: int = 0):
        super().__init__(message)
        self.partial = partial
        self.used = used
        self.budget = budget
