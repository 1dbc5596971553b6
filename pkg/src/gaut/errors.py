"""Exception types shared across the package."""


class GautError(Exception):
    """Base class for all errors raised by this package."""


class RankMismatch(GautError):
    """Two objects were combined whose input/output arities do not line up."""


class ParseError(GautError):
    """Malformed textual input; carries a human-readable location."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{message} ({location})"
        super().__init__(message)


class InvalidPermutation(GautError):
    """The given sequence is not a bijection on 1..n."""


class EmptyStateSet(GautError):
    """A state set must contain at least one state."""


class BudgetExceeded(GautError):
    """An exact-set computation would exceed the configured size budget."""


class UnknownSymbol(GautError):
    """An edge label or atom is not part of the relevant alphabet."""


class IncompleteColoring(GautError):
    """A coloring does not assign a color to every node."""


class InvalidK(GautError):
    """k-colorability is defined here for k >= 1 only."""
