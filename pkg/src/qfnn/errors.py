"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised when a text input (truth table, packet file, network config) is malformed.

    Carries the 1-based line number when one is known, so command-line users
    can locate the offending line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
