"""Recursive-descent parser building LudemeNode trees from token streams.

Values inside a tree are plain Python data: `int` for integers, `str` for
quoted strings, `Ident` for bare identifiers, `tuple` for `{...}` groups,
and nested `LudemeNode` for `(...)` expressions. Structural equality of
nodes deliberately ignores source positions so that formatted-then-reparsed
trees compare equal to their originals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import (
    EmptyInput,
    RootNotGame,
    TrailingContent,
    UnbalancedDelimiter,
    UnexpectedToken,
)
from .tokens import (
    IDENT,
    INT,
    LBRACE,
    LPAREN,
    NAMED_ARG,
    RBRACE,
    RPAREN,
    STRING,
    Token,
    tokenize,
)


@dataclass(frozen=True)
class Ident:
    """A bare identifier used as a value, e.g. `Each` in `(ball Each)`."""

    name: str


Value = Union[int, str, Ident, "LudemeNode", tuple]


@dataclass(frozen=True, eq=True)
class LudemeNode:
    name: str
    args: tuple = ()
    named: tuple = ()  # ordered (name, value) pairs
    pos: tuple[int, int] = field(default=(1, 1), compare=False)

    def named_map(self) -> dict[str, Value]:
        return dict(self.named)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> Token | None:
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok

    def parse_node(self) -> LudemeNode:
        opener = self.take()
        assert opener is not None and opener.kind == LPAREN
        head = self.peek()
        if head is None:
            raise UnbalancedDelimiter("unclosed '('", opener.position)
        if head.kind != IDENT:
            raise UnexpectedToken(
                f"expected a ludeme name after '(', got {head.text!r}", head.position
            )
        self.take()
        args: list[Value] = []
        named: list[tuple[str, Value]] = []
        seen_names: set[str] = set()
        while True:
            tok = self.peek()
            if tok is None:
                raise UnbalancedDelimiter("unclosed '('", opener.position)
            if tok.kind == RPAREN:
                self.take()
                return LudemeNode(head.text, tuple(args), tuple(named), opener.position)
            if tok.kind == NAMED_ARG:
                self.take()
                if tok.text in seen_names:
                    raise UnexpectedToken(
                        f"duplicate named argument {tok.text!r}", tok.position
                    )
                seen_names.add(tok.text)
                if self.peek() is None:
                    raise UnbalancedDelimiter("unclosed '('", opener.position)
                named.append((tok.text, self.parse_value()))
                continue
            args.append(self.parse_value())

    def parse_value(self) -> Value:
        tok = self.peek()
        assert tok is not None
        if tok.kind == LPAREN:
            return self.parse_node()
        if tok.kind == LBRACE:
            return self.parse_group()
        if tok.kind == INT:
            self.take()
            return int(tok.text)
        if tok.kind == STRING:
            self.take()
            return tok.text
        if tok.kind == IDENT:
            self.take()
            return Ident(tok.text)
        if tok.kind in (RPAREN, RBRACE):
            raise UnbalancedDelimiter(f"stray {tok.text!r}", tok.position)
        raise UnexpectedToken(f"{tok.text!r} is not a value here", tok.position)

    def parse_group(self) -> tuple:
        opener = self.take()
        assert opener is not None and opener.kind == LBRACE
        items: list[Value] = []
        while True:
            tok = self.peek()
            if tok is None:
                raise UnbalancedDelimiter("unclosed '{'", opener.position)
            if tok.kind == RBRACE:
                self.take()
                return tuple(items)
            if tok.kind == NAMED_ARG:
                raise UnexpectedToken(
                    "named arguments are not allowed inside '{...}'", tok.position
                )
            items.append(self.parse_value())


def _parse_root(tokens: list[Token]) -> LudemeNode:
    if not tokens:
        raise EmptyInput("empty input")
    parser = _Parser(tokens)
    first = parser.peek()
    assert first is not None
    if first.kind != LPAREN:
        if first.kind in (RPAREN, RBRACE):
            raise UnbalancedDelimiter(f"stray {first.text!r}", first.position)
        raise RootNotGame(first.text, first.position)
    node = parser.parse_node()
    leftover = parser.peek()
    if leftover is not None:
        raise TrailingContent(
            f"unexpected {leftover.text!r} after the root expression",
            leftover.position,
        )
    return node


def parse(tokens: list[Token]) -> LudemeNode:
    """Parse a complete description; the root node must be `game`."""
    node = _parse_root(tokens)
    if node.name != "game":
        raise RootNotGame(node.name, node.pos)
    return node


def parse_fragment(tokens: list[Token]) -> LudemeNode:
    """Permissive entry point: any single node may be the root."""
    return _parse_root(tokens)


def parse_text(text: str) -> LudemeNode:
    """Convenience: tokenize + parse in one step."""
    return parse(tokenize(text))
