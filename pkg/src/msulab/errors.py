"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates a precondition of the operation it was passed to."""


class ScanLimitError(RuntimeError):
    """An ascending search exceeded its hard iteration cap without converging."""
