"""The shipped `.lud` corpus, addressable by file stem."""

from __future__ import annotations

from importlib import resources

GAME_NAMES = ("amazons", "gomoku", "gomoku-9", "tictactoe")


def game_text(name: str) -> str:
    """Source text of a shipped game; KeyError if the name is unknown."""
    if name not in GAME_NAMES:
        raise KeyError(name)
    return resources.files(__package__).joinpath(f"{name}.lud").read_text("utf-8")
