"""Domain errors raised by the library (the CLI maps them to exit code 1)."""


class NilboundError(Exception):
    pass


class NotInLattice(NilboundError):
    """A target vector is not an integer combination of the available columns."""


class SectionMiss(NilboundError):
    """A homology vector lies outside the domain served by an abelian section."""


class BudgetExceeded(NilboundError):
    """A search hit its state budget; partial results travel with the exception."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
