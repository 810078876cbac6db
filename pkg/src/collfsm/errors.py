"""Exception hierarchy shared by every stage of the extraction pipeline."""

from __future__ import annotations


class CollFsmError(Exception):
    """Base class for all errors raised by this package."""


class SourceError(CollFsmError):
    """An error that can be traced back to a position in a source file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class LexError(SourceError):
    pass


class FormatError(SourceError):
    """The source violates the one-operator-per-line / brace layout rules."""


class ParseError(SourceError):
    pass


class UnsupportedError(SourceError):
    """A construct outside the supported source subset."""


class UnknownSymbol(CollFsmError):
    pass


class ConfigError(CollFsmError):
    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnknownOperation(CollFsmError):
    pass


class ArityError(CollFsmError):
    pass


class IncomparableModels(CollFsmError):
    pass


class SolverError(CollFsmError):
    """The external solver misbehaved (bad exit, unparsable output)."""
