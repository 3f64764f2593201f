"""Exceptions shared across the package."""


class DomainError(ValueError):
    """A precondition violation or an exceeded enumeration cap.

    Carries the name of the operation that rejected the input so the CLI
    can report it in its error object (exit code 1).
    """

    def __init__(self, operation: str, message: str):
        super().__init__(f"{operation}: {message}")
        self.operation = operation
        self.message = message


class ParseError(ValueError):
    """Malformed input file or JSON value (CLI exit code 2)."""
