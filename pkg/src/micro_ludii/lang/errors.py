"""Structured errors raised while lexing, parsing, or compiling `.lud` text.

Every error carries the 1-based (line, column) of the offending source
location when one is known, so tools can point at the exact character.
"""

from __future__ import annotations


class LudError(Exception):
    """Base class for every game-description error."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        self.message = message
        self.position = position
        if position is not None:
            message = f"{position[0]}:{position[1]}: {message}"
        super().__init__(message)


class UnexpectedCharacter(LudError):
    """A character the lexer has no rule for."""


class UnterminatedString(LudError):
    """A double-quoted string that never closes (EOF or line break)."""


class UnbalancedDelimiter(LudError):
    """A paren or brace without a partner; position points at the culprit."""


class UnexpectedToken(LudError):
    """A token that is valid on its own but illegal where it appeared."""


class TrailingContent(LudError):
    """Tokens left over after the root expression was parsed."""


class EmptyInput(LudError):
    """No tokens at all where an expression was required."""


class RootNotGame(LudError):
    """The top-level expression is not a `(game ...)` node."""

    def __init__(self, name: str, position: tuple[int, int] | None = None):
        self.name = name
        super().__init__(f"root must be a (game ...) node, got {name!r}", position)


class UnknownLudeme(LudError):
    """A name with no registry entry."""

    def __init__(self, name: str, position: tuple[int, int] | None = None):
        self.name = name
        super().__init__(f"unknown ludeme {name!r}", position)


class ArityMismatch(LudError):
    """A ludeme applied to the wrong number or shape of arguments."""

    def __init__(self, name: str, expected: str, got: str,
                 position: tuple[int, int] | None = None):
        self.name = name
        self.expected = expected
        self.got = got
        super().__init__(f"{name!r} expects {expected}, got {got}", position)


class UnsupportedFeature(LudError):
    """Grammatically valid input the engine does not support."""


class BadReference(LudError):
    """A piece name or site index that resolves to nothing."""
