"""The ludeme registry: one entry per supported keyword.

Compilation never falls back on defaults: a name without an entry is an
UnknownLudeme error. The registry is hand-maintained and a test pins its
key set to LUDEME_NAMES, so adding a keyword in one place but not the
other fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import ArityMismatch, UnknownLudeme
from .parser import LudemeNode

# Every keyword the language supports, including the bare-identifier
# constants (Each, None, Win).
LUDEME_NAMES = frozenset(
    {
        "game", "mode", "equipment", "rules", "start", "play", "end",
        "goBoard", "chessBoard", "ball", "queen", "dot",
        "to", "mover", "empty", "line", "result", "place",
        "slide", "in", "then", "replay", "shoot", "byPiece",
        "if", "even", "turn", "stalemated", "next",
        "Each", "None", "Win",
    }
)


@dataclass(frozen=True)
class LudemeEntry:
    """Arity contract and compile function for one keyword."""

    name: str
    min_args: int
    max_args: int  # -1 for unbounded
    named: frozenset[str] = field(default_factory=frozenset)
    compile: Callable = None  # type: ignore[assignment]  # (Compiler, LudemeNode) -> object

    def check_arity(self, node: LudemeNode) -> None:
        got = len(node.args)
        hi = self.max_args
        if got < self.min_args or (hi >= 0 and got > hi):
            if hi < 0:
                expected = f"at least {self.min_args} argument(s)"
            elif self.min_args == hi:
                expected = f"{hi} argument(s)"
            else:
                expected = f"{self.min_args} to {hi} argument(s)"
            raise ArityMismatch(self.name, expected, str(got), node.pos)
        for key, _ in node.named:
            if key not in self.named:
                raise ArityMismatch(
                    self.name, f"named arguments {sorted(self.named)}", key, node.pos
                )


class LudemeRegistry:
    """Name -> LudemeEntry map with failing lookups, never fallbacks."""

    def __init__(self, entries: dict[str, LudemeEntry]):
        self._entries = dict(entries)

    def lookup(self, name: str, position: tuple[int, int] | None = None) -> LudemeEntry:
        entry = self._entries.get(name)
        if entry is None:
            raise UnknownLudeme(name, position)
        return entry

    def names(self) -> frozenset[str]:
        return frozenset(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._entries
