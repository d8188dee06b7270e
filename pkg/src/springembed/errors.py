"""Exception types shared across the package.

The CLI maps these onto exit codes: usage errors are handled by argparse
itself, `ValidationError` exits with 3, `ConvergenceError` with 4.
"""


class InputError(ValueError):
    """Malformed argument: bad sizes, out-of-range indices, self-loops."""


class ValidationError(ValueError):
    """Structured input that fails a documented validity check."""


class BoundaryError(ValidationError):
    """Boundary cycle is not an induced simple cycle of the graph."""


class DegenerateGeometryError(ValidationError):
    """Point configuration without the required rank (collinear, coincident)."""


class ConvergenceError(RuntimeError):
    """Iterative solver or eigensolver exhausted its budget.

    Carries the final residual(s) in ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
