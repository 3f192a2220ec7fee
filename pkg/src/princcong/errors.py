"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or invalid input data."""


class CyclicCoversError(InputError):
    pass


class NotBoundedError(InputError):
    pass


class NotALatticeError(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(RuntimeError):
    """A guaranteed property failed to hold; signals a bug or broken precondition."""


class BudgetExceeded(RuntimeError):
    pass
