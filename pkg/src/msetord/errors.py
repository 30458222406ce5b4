"""Exception hierarchy shared by the kernel, the solver and the CLI."""


class MsetordError(Exception):
    """Base class for all errors raised by this package."""


class RangeViolation(MsetordError, ValueError):
    """A value lies outside the value range it was declared against."""


class PreconditionError(MsetordError, ValueError):
    pass


class ModelError(MsetordError, ValueError):
    """The model is malformed (empty domain, bad variable handle, shared variables)."""


class UsageError(MsetordError, RuntimeError):
    """An API was driven out of protocol, e.g. a non-LIFO undo."""


class OracleScopeError(MsetordError):
    """A brute-force oracle instance exceeds the enumeration guard."""


class ParseError(MsetordError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
