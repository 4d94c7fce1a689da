"""Exception types shared across the toolkit."""


class ParseError(ValueError):
    """Raised when a defining-graph document cannot be parsed.

    Attributes:
        line: 1-based line number of the offending statement
        column: 1-based column of the offending token
    """

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class CapExceededError(RuntimeError):
    """Raised when a search or construction outgrows its configured bound."""

    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"{what} exceeded the configured cap of {limit}")


class ConsistencyError(RuntimeError):
    """Raised when two independent computations disagree."""
