"""Exception types shared across the package."""


class CanTreeError(Exception):
    """Base class for data and format errors raised by this package."""


class InvalidMinSupportError(CanTreeError):
    """Minimum support outside its legal range."""


class ParseError(CanTreeError):
    """Malformed transaction CSV input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyTransactionError(ParseError):
    """A parsed transaction carries no items."""


class DuplicateIdError(CanTreeError):
    """Two transactions share an id."""


class NotPresentError(CanTreeError):
    """Transaction or item not present in the tree."""


class SnapshotFormatError(CanTreeError):
    """Snapshot text has the wrong version token or a malformed record."""


class AlphabetTooLargeError(CanTreeError):
    """Database has too many distinct items for brute-force enumeration."""


class BenchConfigError(CanTreeError):
    """Benchmark configuration failed validation."""
