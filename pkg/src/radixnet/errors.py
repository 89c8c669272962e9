"""Exception types raised across the package."""


class RadixNetError(Exception):
    """Base class for all package errors."""


class DimensionError(RadixNetError, ValueError):
    pass


class IntegerOverflowError(RadixNetError, OverflowError):
    """An exact integer result does not fit in 64 bits."""

    def __init__(self, operation, detail=""):
        self.operation = operation
        msg = f"integer overflow in {operation}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ConstraintViolation(RadixNetError, ValueError):
    """A RadiX-Net parameter set breaks one or more construction constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class GuardExceeded(RadixNetError, RuntimeError):
    """A size guard protecting an exhaustive or dense computation was hit."""


class FormatError(RadixNetError, ValueError):
    """Malformed input document; carries the 1-based line number when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
