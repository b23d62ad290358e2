"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a configured size budget."""


class ParseError(ValueError):
    """An instance file is malformed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateInstanceError(ValueError):
    """The copula warm start is undefined for this instance.

    Raised when every item fits (no stopping quality exists) or when the
    total weight does not exceed the capacity.
    """
