"""Exception types shared across the package.

Construction-time referential problems raise InvalidComplexError; structural
surface conditions are reported by validate() instead of raised.  Operation
preconditions raise OperationError subclasses so the CLI can map them to
exit code 2.
"""


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidComplexError(ValueError):
    """A cell reference does not resolve, or identifiers collide."""


class OperationError(RuntimeError):
    """An operation's precondition does not hold for the given input."""


class CyclicFieldError(OperationError):
    """A closed path exists where acyclicity is required.

    `witness` holds the closed path (an LPath or XPath) when available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CancellationError(OperationError):
    """Cancellation rejected: wrong number of connecting paths."""


class DegenerateOperationError(OperationError):
    """The operation would produce a state the encoding cannot represent
    (empty face boundary, disconnected complex, loop diagonal)."""


class NotInImageError(OperationError):
    """The line field is not the image of any vector field."""
