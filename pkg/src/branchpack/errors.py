"""Exception types shared across the package."""


class BranchpackError(Exception):
    """Base class for all errors raised by branchpack."""


class InputError(BranchpackError, ValueError):
    """Malformed or inconsistent input: unknown vertex, unknown edge id, bad shape."""


class StructuralError(BranchpackError):
    """An operation was asked to build something that is not a branching."""


class UnderflowError(BranchpackError, ArithmeticError):
    """Finite cardinal subtraction went below zero."""


class LogicError(BranchpackError, AssertionError):
    """An internal invariant failed. Always a bug, never a property of the input."""


class UnreachableError(BranchpackError):
    """No path exists; ``evidence`` is the set of vertices that could not be reached."""

    def __init__(self, message, evidence):
        super().__init__(message)
        self.evidence = frozenset(evidence)
