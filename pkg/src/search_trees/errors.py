"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SearchTreeError(Exception):
    """Base class for all errors raised by search_trees."""


class StructuralError(SearchTreeError, ValueError):
    """Input graph or tree does not have the required structure."""


class InvalidOrderError(SearchTreeError, ValueError):
    """A vertex ordering is not a permutation or not a connected-search order."""


class NotSplitError(SearchTreeError, ValueError):
    """A split-graph routine received a graph that is not split."""


class UnsupportedQueryError(SearchTreeError, ValueError):
    """A recognizer was asked about a (kind, side) pair it does not handle."""


class ParseError(SearchTreeError, ValueError):
    """Malformed input file.

    Attributes:
        line: 1-based line number the error refers to, or None for whole-file errors.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)
