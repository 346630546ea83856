"""Shared exception types."""


class AltiaError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(AltiaError):
    """A label or alphabet does not fit the automaton it is used with."""


class ModelError(AltiaError):
    """A structurally invalid automaton, tester or query."""


class ParseError(AltiaError):
    """A malformed model, expression or trace text."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line})" if column is None else f" (line {line}, column {column})"
        super().__init__(message + where)
        self.line = line
        self.column = column


class ExplorationLimitError(AltiaError):
    """A reachability exploration exceeded its configured cap.

    Raised instead of silently truncating; rerun with a larger cap if the
    input really is that big.
    """

    def __init__(self, cap):
        super().__init__(f"exploration exceeded the cap of {cap} elements")
        self.cap = cap
