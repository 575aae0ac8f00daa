"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A named precondition on user-supplied parameters does not hold."""

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        self.detail = detail
        msg = f"violated constraint: {constraint}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class BudgetExceeded(RuntimeError):
    """Exhaustive search would need more codewords than the configured budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"exhaustive search needs {needed} codewords, budget is {budget}")


class SubfieldError(ArithmeticError):
    """An element of the big field was expected to lie in GF(q) but does not."""
