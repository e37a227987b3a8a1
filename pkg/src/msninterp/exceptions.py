"""Exception types raised by the interpolation machinery."""


class DomainError(ValueError):
    """A point lies outside the domain a basis family is defined on."""


class InfeasibleSystemError(RuntimeError):
    """Constraint system has numerical rank 0 but a nonzero right-hand side.

    Carries the relative sup-norm residual of the zero solution in
    ``residual``.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = float(residual)


class GramConditioningError(RuntimeError):
    """Kernel Gram matrix is not positive definite after diagonal jitter.

    ``smallest_eigenvalue`` holds an estimate of the offending eigenvalue.
    """

    def __init__(self, message, smallest_eigenvalue):
        super().__init__(message)
        self.smallest_eigenvalue = float(smallest_eigenvalue)


class OracleInapplicableError(RuntimeError):
    """Reference minimum-norm solver hit numerically dependent rows."""
