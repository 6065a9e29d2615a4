"""Lexer for `.lud` game descriptions.

The token language is deliberately small: parens, braces, identifiers,
double-quoted strings, non-negative decimal integers, and `name:` prefixes
for named arguments (as in `length:5`). Strings have no escape sequences
and must close on the same line; comments do not exist. Anything else is
an UnexpectedCharacter.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import UnexpectedCharacter, UnterminatedString

LPAREN = "LPAREN"
RPAREN = "RPAREN"
LBRACE = "LBRACE"
RBRACE = "RBRACE"
IDENT = "IDENT"
STRING = "STRING"
INT = "INT"
NAMED_ARG = "NAMED_ARG"

_PUNCT = {"(": LPAREN, ")": RPAREN, "{": LBRACE, "}": RBRACE}


class Token(NamedTuple):
    kind: str
    text: str  # STRING holds the unquoted value; NAMED_ARG the name before ':'
    line: int
    col: int

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.col)


def tokenize(text: str) -> list[Token]:
    """Split source text into tokens; every character must be consumed."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        kind = _PUNCT.get(ch)
        if kind is not None:
            tokens.append(Token(kind, ch, line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            start = (line, col)
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] == "\n":
                raise UnterminatedString("string never closes", start)
            tokens.append(Token(STRING, text[i + 1 : j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token(INT, text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isalnum():
                j += 1
            word = text[i:j]
            if j < n and text[j] == ":":
                tokens.append(Token(NAMED_ARG, word, line, col))
                j += 1
            else:
                tokens.append(Token(IDENT, word, line, col))
            col += j - i
            i = j
            continue
        raise UnexpectedCharacter(f"unexpected character {ch!r}", (line, col))
    return tokens
