"""Exception types shared by all decomposition routines."""


class PreconditionError(ValueError):
    """Input violates a documented precondition (shape, symmetry, positivity, ...)."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to converge or a numerical pairing broke down."""
