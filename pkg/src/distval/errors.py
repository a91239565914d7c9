"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent caller input (dimension mismatch, empty data, bad pmf)."""


class UnsupportedModeError(InputError):
    """Operation requires exact (finite-support) distributions but got empirical handles."""


class CapacityError(InputError):
    """Requested problem size exceeds what can be materialised explicitly."""


class UndefinedCorrelationError(InputError):
    """Correlation is undefined because one of the vectors is constant."""


class PropertyViolation(RuntimeError):
    """A verified mathematical property failed to hold numerically."""
