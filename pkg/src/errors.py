"""Exception hierarchy shared by the library and the CLI."""
from typing import Optional


class KhinchineError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KhinchineError, ValueError):
    """An argument lies outside the domain of the operation."""


class DimensionMismatchError(KhinchineError, ValueError):
    """Vectors, norms or matrices disagree on the ambient dimension."""


class BudgetExceededError(KhinchineError):
    """An exact enumeration would exceed the configured term budget."""

    def __init__(self, terms: int, budget: int, hint: str = "use the Monte Carlo estimator"):
        self.terms = terms
        self.budget = budget
        super().__init__(f"enumeration needs {terms} terms, budget is {budget}; {hint}")


class PreconditionError(KhinchineError, ValueError):
    """A hypothesis of the checked statement does not hold for the input."""


class UnsupportedNormError(KhinchineError):
    """The operation is not available for this kind of norm."""


class SpecParseError(KhinchineError, ValueError):
    """Atom, norm or CSV text could not be parsed."""

    def __init__(self, message: str, source: Optional[str] = None, line: Optional[int] = None):
        self.source = source
        self.line = line
        location = ""
        if source is not None:
            location = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(f"{location}{message}")
