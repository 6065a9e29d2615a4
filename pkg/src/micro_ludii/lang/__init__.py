"""Parsing, validation, compilation, and formatting of `.lud` descriptions."""

from .compiler import (
    BoardSpec,
    EndRule,
    GameDescription,
    LineCondition,
    MoveByPiece,
    PieceSpec,
    PlaceToEmpty,
    Placement,
    ResultRule,
    ShootToEmpty,
    SlideToEmpty,
    StalematedCondition,
    TurnParityChoice,
    compile_game,
    default_registry,
)
from .errors import (
    ArityMismatch,
    BadReference,
    EmptyInput,
    LudError,
    RootNotGame,
    TrailingContent,
    UnbalancedDelimiter,
    UnexpectedCharacter,
    UnexpectedToken,
    UnknownLudeme,
    UnsupportedFeature,
    UnterminatedString,
)
from .formatter import QR_BYTE_LIMIT, fits_qr, format_tree, formatted_size
from .parser import Ident, LudemeNode, parse, parse_fragment, parse_text
from .registry import LUDEME_NAMES, LudemeEntry, LudemeRegistry
from .tokens import Token, tokenize


def load_game(text: str) -> GameDescription:
    """Tokenize, parse, and compile one `.lud` source."""
    return compile_game(parse(tokenize(text)))


__all__ = [
    "ArityMismatch", "BadReference", "BoardSpec", "EmptyInput", "EndRule",
    "GameDescription", "Ident", "LUDEME_NAMES", "LineCondition", "LudError",
    "LudemeEntry", "LudemeNode", "LudemeRegistry", "MoveByPiece",
    "PieceSpec", "PlaceToEmpty", "Placement", "QR_BYTE_LIMIT", "ResultRule",
    "RootNotGame", "ShootToEmpty", "SlideToEmpty", "StalematedCondition",
    "Token", "TrailingContent", "TurnParityChoice", "UnbalancedDelimiter",
    "UnexpectedCharacter", "UnexpectedToken", "UnknownLudeme",
    "UnsupportedFeature", "UnterminatedString", "compile_game",
    "default_registry", "fits_qr", "format_tree", "formatted_size",
    "load_game", "parse", "parse_fragment", "parse_text", "tokenize",
]
