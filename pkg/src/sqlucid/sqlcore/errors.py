"""Errors raised while turning SQL text into a resolved tree."""
from __future__ import annotations


class ParseError(ValueError):
    """Syntax error; carries the character position and what was expected."""

    def __init__(self, message: str, *, position: int, expected: str):
        super().__init__(f"{message} at position {position} (expected {expected})")
        self.position = position
        self.expected = expected


class ResolveError(ValueError):
    """A name in the query does not exist in the schema."""

    def __init__(self, message: str, *, name: str):
        super().__init__(message)
        self.name = name
