"""Shared exception types."""


class InternalError(RuntimeError):
    """An invariant the theory guarantees was violated; signals a bug."""


class OracleCapExceeded(ValueError):
    """The brute-force oracle was asked for more than its permutation cap."""


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
