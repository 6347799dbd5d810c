"""Exception hierarchy shared by every module."""


class LatticeError(Exception):
    """Base class for all errors raised by latpoly."""


class ValidationError(LatticeError, ValueError):
    """Input data violates a structural rule.

    ``index`` is the offending (cyclic) position when one exists and
    ``rule`` a short machine-readable name of the violated condition.
    """

    def __init__(self, message, index=None, rule=None):
        super().__init__(message)
        self.index = index
        self.rule = rule


class ConsistencyError(LatticeError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


class GenerationError(LatticeError, RuntimeError):
    """A randomized generator ran out of its retry budget."""
