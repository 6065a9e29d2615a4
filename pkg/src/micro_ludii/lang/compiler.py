"""Compile parsed ludeme trees into GameDescription objects.

Each registry entry resolves one keyword into an engine construct (a
board spec, a piece spec, a play rule, an end rule, ...). The `game`
entry assembles the pieces and runs whole-description validation:
reference resolution, ownership expansion, and board-bounds checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, BadReference, UnsupportedFeature
from .parser import Ident, LudemeNode
from .registry import LUDEME_NAMES, LudemeEntry, LudemeRegistry

BOARD_KINDS = ("goBoard", "chessBoard")


# --- engine constructs -------------------------------------------------

@dataclass(frozen=True)
class BoardSpec:
    kind: str  # goBoard | chessBoard
    side: int


@dataclass(frozen=True)
class SlideToEmpty:
    """Queen-line movement onto empty sites; `replay` keeps the turn."""

    replay: bool = False


@dataclass(frozen=True)
class PieceSpec:
    base: str       # capitalized ludeme name, e.g. "Ball"
    ownership: str  # "Each" | "None"
    movement: SlideToEmpty | None = None

    def expanded_names(self, mode: int) -> tuple[str, ...]:
        if self.ownership == "Each":
            return tuple(f"{self.base}{p}" for p in range(1, mode + 1))
        return (f"{self.base}0",)


@dataclass(frozen=True)
class PlaceToEmpty:
    """The mover puts one of their pieces on any empty site."""


@dataclass(frozen=True)
class MoveByPiece:
    """The mover moves one of their pieces by its equipment movement rule."""


@dataclass(frozen=True)
class ShootToEmpty:
    """Place `piece` on an empty queen-line site from the replay site."""

    piece: str


@dataclass(frozen=True)
class TurnParityChoice:
    even: object
    odd: object


@dataclass(frozen=True)
class LineCondition:
    length: int


@dataclass(frozen=True)
class StalematedCondition:
    """The player to move has no legal moves."""


@dataclass(frozen=True)
class ResultRule:
    role: str     # "mover" | "next"
    outcome: str  # "Win"


@dataclass(frozen=True)
class EndRule:
    condition: LineCondition | StalematedCondition
    result: ResultRule


@dataclass(frozen=True)
class Placement:
    piece: str
    sites: tuple[int, ...]


@dataclass(frozen=True)
class GameDescription:
    name: str
    mode: int
    board: BoardSpec
    pieces: tuple[PieceSpec, ...]
    start: tuple[Placement, ...]
    play: object
    end: tuple[EndRule, ...]

    def piece_names(self) -> tuple[str, ...]:
        names: list[str] = []
        for spec in self.pieces:
            names.extend(spec.expanded_names(self.mode))
        return tuple(names)

    def piece_owner(self, name: str) -> int:
        """Owner player id of an expanded piece name; 0 means neutral."""
        for spec in self.pieces:
            for player, expanded in self._expansions(spec):
                if expanded == name:
                    return player
        raise KeyError(name)

    def pieces_of(self, player: int) -> tuple[str, ...]:
        out = []
        for spec in self.pieces:
            for owner, expanded in self._expansions(spec):
                if owner == player:
                    out.append(expanded)
        return tuple(out)

    def movement_of(self, name: str) -> SlideToEmpty | None:
        for spec in self.pieces:
            for _, expanded in self._expansions(spec):
                if expanded == name:
                    return spec.movement
        return None

    def _expansions(self, spec: PieceSpec):
        if spec.ownership == "Each":
            for player in range(1, self.mode + 1):
                yield player, f"{spec.base}{player}"
        else:
            yield 0, f"{spec.base}0"


# --- internal markers passed between entries --------------------------

_TO_SITE = "to-site"
_EMPTY = "empty"
_DEST_EMPTY = "dest-empty"
_EVEN_TURN = "even-turn"
_TURN = "turn"
_REPLAY = "replay"
_ROLE_MOVER = "mover"
_ROLE_NEXT = "next"


class Compiler:
    """Recursive dispatcher from nodes to engine constructs."""

    def __init__(self, registry: LudemeRegistry):
        self.registry = registry

    def compile(self, value):
        if isinstance(value, LudemeNode):
            entry = self.registry.lookup(value.name, value.pos)
            entry.check_arity(value)
            return entry.compile(self, value)
        if isinstance(value, Ident):
            # a bare identifier behaves like a zero-argument node, so
            # non-constant keywords fail the arity check instead of crashing
            entry = self.registry.lookup(value.name)
            node = LudemeNode(value.name)
            entry.check_arity(node)
            return entry.compile(self, node)
        return value

    def compile_game(self, root: LudemeNode) -> GameDescription:
        entry = self.registry.lookup(root.name, root.pos)
        entry.check_arity(root)
        game = entry.compile(self, root)
        if not isinstance(game, GameDescription):
            raise UnsupportedFeature(
                f"{root.name!r} is not a whole game description", root.pos
            )
        return game


def compile_game(root: LudemeNode, registry: LudemeRegistry | None = None) -> GameDescription:
    """Resolve a parsed tree through the registry into a GameDescription."""
    return Compiler(registry or default_registry()).compile_game(root)


# --- per-keyword compile functions -------------------------------------

def _want(compiler: Compiler, node: LudemeNode, index: int, marker: str, what: str):
    got = compiler.compile(node.args[index])
    if got != marker:
        raise UnsupportedFeature(f"{node.name!r} expects {what}", node.pos)
    return got


def _c_constant(value: str):
    def fn(compiler: Compiler, node) -> str:
        return value

    return fn


def _c_marker(marker: str):
    def fn(compiler: Compiler, node: LudemeNode) -> str:
        return marker

    return fn


def _c_board(kind: str):
    def fn(compiler: Compiler, node: LudemeNode) -> BoardSpec:
        side = node.args[0]
        if not isinstance(side, int):
            raise ArityMismatch(node.name, "an integer side length", repr(side), node.pos)
        if side < 1:
            raise UnsupportedFeature(f"board side must be at least 1, got {side}", node.pos)
        return BoardSpec(kind, side)

    return fn


def _c_piece(compiler: Compiler, node: LudemeNode) -> PieceSpec:
    ownership = compiler.compile(node.args[0])
    if ownership not in ("Each", "None"):
        raise UnsupportedFeature(
            f"piece ownership must be Each or None, got {ownership!r}", node.pos
        )
    movement = None
    if len(node.args) > 1:
        movement = compiler.compile(node.args[1])
        if not isinstance(movement, SlideToEmpty):
            raise UnsupportedFeature(
                f"{node.name!r} movement must be a (slide ...) rule", node.pos
            )
    return PieceSpec(node.name.capitalize(), ownership, movement)


def _c_mode(compiler: Compiler, node: LudemeNode) -> int:
    players = node.args[0]
    if not isinstance(players, int):
        raise ArityMismatch("mode", "an integer player count", repr(players), node.pos)
    if players != 2:
        raise UnsupportedFeature(f"only 2-player games are supported, got (mode {players})", node.pos)
    return players


def _c_equipment(compiler: Compiler, node: LudemeNode) -> list:
    items: list = []
    for arg in node.args:
        for item in arg if isinstance(arg, tuple) else (arg,):
            items.append(compiler.compile(item))
    return items


def _c_to(compiler: Compiler, node: LudemeNode):
    if len(node.args) == 0:
        return _TO_SITE
    if len(node.args) == 2:
        _want(compiler, node, 0, _ROLE_MOVER, "(mover)")
        _want(compiler, node, 1, _EMPTY, "(empty)")
        return PlaceToEmpty()
    raise ArityMismatch("to", "0 or 2 argument(s)", str(len(node.args)), node.pos)


def _c_in(compiler: Compiler, node: LudemeNode) -> str:
    _want(compiler, node, 0, _TO_SITE, "(to)")
    _want(compiler, node, 1, _EMPTY, "(empty)")
    return _DEST_EMPTY


def _c_slide(compiler: Compiler, node: LudemeNode) -> SlideToEmpty:
    _want(compiler, node, 0, _DEST_EMPTY, "(in (to) (empty))")
    replay = False
    if len(node.args) > 1:
        then = compiler.compile(node.args[1])
        if then != _REPLAY:
            raise UnsupportedFeature("slide only supports (then (replay))", node.pos)
        replay = True
    return SlideToEmpty(replay)


def _c_then(compiler: Compiler, node: LudemeNode) -> str:
    effect = compiler.compile(node.args[0])
    if effect != _REPLAY:
        raise UnsupportedFeature("(then ...) only supports (replay)", node.pos)
    return _REPLAY


def _c_shoot(compiler: Compiler, node: LudemeNode) -> ShootToEmpty:
    _want(compiler, node, 0, _DEST_EMPTY, "(in (to) (empty))")
    piece = node.args[1]
    if not isinstance(piece, str):
        raise ArityMismatch("shoot", "a quoted piece name", repr(piece), node.pos)
    return ShootToEmpty(piece)


def _c_even(compiler: Compiler, node: LudemeNode) -> str:
    _want(compiler, node, 0, _TURN, "(turn)")
    return _EVEN_TURN


def _c_if(compiler: Compiler, node: LudemeNode) -> TurnParityChoice:
    condition = compiler.compile(node.args[0])
    if condition != _EVEN_TURN:
        raise UnsupportedFeature("(if ...) only supports the (even (turn)) condition", node.pos)
    even = compiler.compile(node.args[1])
    odd = compiler.compile(node.args[2])
    for branch in (even, odd):
        if not isinstance(branch, (PlaceToEmpty, MoveByPiece, ShootToEmpty)):
            raise UnsupportedFeature("(if ...) branches must be move rules", node.pos)
    return TurnParityChoice(even, odd)


def _c_play(compiler: Compiler, node: LudemeNode):
    rule = compiler.compile(node.args[0])
    if not isinstance(rule, (PlaceToEmpty, MoveByPiece, ShootToEmpty, TurnParityChoice)):
        raise UnsupportedFeature("(play ...) needs a move rule", node.pos)
    return rule


def _c_line(compiler: Compiler, node: LudemeNode) -> LineCondition:
    named = node.named_map()
    if "length" not in named:
        raise ArityMismatch("line", "length:<int>", "no length", node.pos)
    length = named["length"]
    if not isinstance(length, int) or length < 1:
        raise ArityMismatch("line", "length:<positive int>", repr(length), node.pos)
    return LineCondition(length)


def _c_stalemated(compiler: Compiler, node: LudemeNode) -> StalematedCondition:
    _want(compiler, node, 0, _ROLE_MOVER, "(mover)")
    return StalematedCondition()


def _c_result(compiler: Compiler, node: LudemeNode) -> ResultRule:
    role = compiler.compile(node.args[0])
    if role not in (_ROLE_MOVER, _ROLE_NEXT):
        raise UnsupportedFeature("(result ...) role must be (mover) or (next)", node.pos)
    outcome = compiler.compile(node.args[1])
    if outcome != "Win":
        raise UnsupportedFeature(f"only Win results are supported, got {outcome!r}", node.pos)
    return ResultRule(role, outcome)


def _c_end(compiler: Compiler, node: LudemeNode) -> tuple[EndRule, ...]:
    if len(node.args) % 2 != 0:
        raise ArityMismatch(
            "end", "condition/result pairs", f"{len(node.args)} argument(s)", node.pos
        )
    rules = []
    for i in range(0, len(node.args), 2):
        condition = compiler.compile(node.args[i])
        if not isinstance(condition, (LineCondition, StalematedCondition)):
            raise UnsupportedFeature("unsupported end condition", node.pos)
        result = compiler.compile(node.args[i + 1])
        if not isinstance(result, ResultRule):
            raise UnsupportedFeature("end condition must be followed by (result ...)", node.pos)
        rules.append(EndRule(condition, result))
    return tuple(rules)


def _c_place(compiler: Compiler, node: LudemeNode) -> Placement:
    piece = node.args[0]
    if not isinstance(piece, str):
        raise ArityMismatch("place", "a quoted piece name", repr(piece), node.pos)
    sites: list[int] = []
    for arg in node.args[1:]:
        for site in arg if isinstance(arg, tuple) else (arg,):
            if not isinstance(site, int):
                raise ArityMismatch("place", "integer site indices", repr(site), node.pos)
            sites.append(site)
    if not sites:
        raise ArityMismatch("place", "at least one site index", "none", node.pos)
    return Placement(piece, tuple(sites))


def _c_start(compiler: Compiler, node: LudemeNode) -> tuple[Placement, ...]:
    placements: list[Placement] = []
    for arg in node.args:
        for item in arg if isinstance(arg, tuple) else (arg,):
            compiled = compiler.compile(item)
            if not isinstance(compiled, Placement):
                raise UnsupportedFeature("(start ...) only supports (place ...)", node.pos)
            placements.append(compiled)
    return tuple(placements)


def _c_rules(compiler: Compiler, node: LudemeNode) -> dict:
    sections = {"start": (), "play": None, "end": None}
    expected = ["start", "play", "end"]
    for arg in node.args:
        if not isinstance(arg, LudemeNode) or arg.name not in expected:
            raise UnsupportedFeature(
                "(rules ...) sections must be (start ...)? (play ...) (end ...) in order",
                node.pos,
            )
        # consume section names in order so duplicates and reordering fail
        while expected and expected[0] != arg.name:
            expected.pop(0)
        if not expected:
            raise UnsupportedFeature(f"misplaced ({arg.name} ...) section", arg.pos)
        expected.pop(0)
        sections[arg.name] = compiler.compile(arg)
    if sections["play"] is None or sections["end"] is None:
        raise ArityMismatch("rules", "(play ...) and (end ...) sections", "missing", node.pos)
    return sections


def _section(node: LudemeNode, index: int, expected: str) -> LudemeNode:
    arg = node.args[index]
    if not isinstance(arg, LudemeNode) or arg.name != expected:
        raise ArityMismatch(
            "game", f"({expected} ...) as argument {index + 1}", repr(arg), node.pos
        )
    return arg


def _c_game(compiler: Compiler, node: LudemeNode) -> GameDescription:
    name = node.args[0]
    if not isinstance(name, str):
        raise ArityMismatch("game", "a quoted game name", repr(name), node.pos)
    mode = compiler.compile(_section(node, 1, "mode"))
    equipment = compiler.compile(_section(node, 2, "equipment"))
    sections = compiler.compile(_section(node, 3, "rules"))

    boards = [e for e in equipment if isinstance(e, BoardSpec)]
    pieces = [e for e in equipment if isinstance(e, PieceSpec)]
    if len(boards) != 1:
        raise UnsupportedFeature(
            f"equipment must contain exactly one board, found {len(boards)}", node.pos
        )
    if len(pieces) + 1 != len(equipment):
        raise UnsupportedFeature("equipment entries must be a board and pieces", node.pos)

    game = GameDescription(
        name=name,
        mode=mode,
        board=boards[0],
        pieces=tuple(pieces),
        start=sections["start"],
        play=sections["play"],
        end=sections["end"],
    )
    _validate_references(game, node)
    return game


def _validate_references(game: GameDescription, node: LudemeNode) -> None:
    known = set(game.piece_names())
    site_count = game.board.side * game.board.side
    for placement in game.start:
        if placement.piece not in known:
            raise BadReference(f"start places unknown piece {placement.piece!r}", node.pos)
        for site in placement.sites:
            if not 0 <= site < site_count:
                raise BadReference(
                    f"start site {site} is outside the {site_count}-site board", node.pos
                )

    def check_rule(rule) -> None:
        if isinstance(rule, TurnParityChoice):
            check_rule(rule.even)
            check_rule(rule.odd)
        elif isinstance(rule, ShootToEmpty):
            if rule.piece not in known:
                raise BadReference(f"shoot references unknown piece {rule.piece!r}", node.pos)
        elif isinstance(rule, MoveByPiece):
            movable = [
                s for s in game.pieces if s.ownership == "Each" and s.movement is not None
            ]
            if not movable:
                raise UnsupportedFeature(
                    "(byPiece) needs at least one owned piece with a movement rule", node.pos
                )
        elif isinstance(rule, PlaceToEmpty):
            placeable = [s for s in game.pieces if s.ownership == "Each"]
            if not placeable:
                raise UnsupportedFeature(
                    "(to (mover) (empty)) needs an owned piece to place", node.pos
                )

    check_rule(game.play)


def default_registry() -> LudemeRegistry:
    """The hand-maintained registry; its key set must equal LUDEME_NAMES."""
    entries = {}

    def add(name: str, lo: int, hi: int, fn, named: frozenset[str] = frozenset()):
        entries[name] = LudemeEntry(name, lo, hi, named, fn)

    add("game", 4, 4, _c_game)
    add("mode", 1, 1, _c_mode)
    add("equipment", 1, -1, _c_equipment)
    add("rules", 2, 3, _c_rules)
    add("start", 1, -1, _c_start)
    add("play", 1, 1, _c_play)
    add("end", 2, -1, _c_end)
    add("goBoard", 1, 1, _c_board("goBoard"))
    add("chessBoard", 1, 1, _c_board("chessBoard"))
    add("ball", 1, 2, _c_piece)
    add("queen", 1, 2, _c_piece)
    add("dot", 1, 2, _c_piece)
    add("to", 0, 2, _c_to)
    add("mover", 0, 0, _c_marker(_ROLE_MOVER))
    add("empty", 0, 0, _c_marker(_EMPTY))
    add("line", 0, 0, _c_line, named=frozenset({"length"}))
    add("result", 2, 2, _c_result)
    add("place", 2, -1, _c_place)
    add("slide", 1, 2, _c_slide)
    add("in", 2, 2, _c_in)
    add("then", 1, 1, _c_then)
    add("replay", 0, 0, _c_marker(_REPLAY))
    add("shoot", 2, 2, _c_shoot)
    add("byPiece", 0, 0, lambda c, n: MoveByPiece())
    add("if", 3, 3, _c_if)
    add("even", 1, 1, _c_even)
    add("turn", 0, 0, _c_marker(_TURN))
    add("stalemated", 1, 1, _c_stalemated)
    add("next", 0, 0, _c_marker(_ROLE_NEXT))
    add("Each", 0, 0, _c_constant("Each"))
    add("None", 0, 0, _c_constant("None"))
    add("Win", 0, 0, _c_constant("Win"))

    assert frozenset(entries) == LUDEME_NAMES
    return LudemeRegistry(entries)
