"""Playable state machine over a compiled GameDescription.

States are immutable snapshots; `apply` returns a fresh state with the
status already recomputed, so `status == ongoing` if and only if legal
moves exist. The random-playout core works on mutable scratch arrays
instead of snapshots: it is the inner loop of both the benchmark and the
MCTS simulation step.
"""

from __future__ import annotations

import json
import random
from typing import NamedTuple

from .lang.compiler import (
    GameDescription,
    LineCondition,
    MoveByPiece,
    PlaceToEmpty,
    ShootToEmpty,
    StalematedCondition,
    TurnParityChoice,
)
from .topology import Topology, build_board

PLACE = "place"
SLIDE = "slide"
SHOOT = "shoot"

# direction index pairs (d, opposite(d)) covering the four line families
_DIR_PAIRS = ((0, 4), (1, 5), (2, 6), (3, 7))


class EngineError(Exception):
    pass


class TerminalState(EngineError):
    pass


class IllegalMove(EngineError):
    pass


class PlacementCollision(EngineError):
    pass


class MalformedTrial(EngineError):
    pass


class Status(NamedTuple):
    kind: str  # "ongoing" | "win" | "draw"
    player: int | None = None


ONGOING = Status("ongoing")
DRAW = Status("draw")


def win(player: int) -> Status:
    return Status("win", player)


class Move(NamedTuple):
    kind: str  # place | slide | shoot
    piece: str
    from_site: int | None
    to: int


class GameState(NamedTuple):
    contents: tuple  # site -> piece name or None
    mover: int
    turn: int
    replay_site: int | None
    status: Status


class Trial(NamedTuple):
    game: str
    side: int
    seed: int
    moves: tuple
    final_status: Status


def topology_of(game: GameDescription) -> Topology:
    return build_board(game.board.kind, game.board.side)


def _other(player: int) -> int:
    return 3 - player


# --- initial state ------------------------------------------------------

def initial_state(game: GameDescription) -> GameState:
    contents: list = [None] * topology_of(game).site_count
    for placement in game.start:
        for site in placement.sites:
            if contents[site] is not None:
                raise PlacementCollision(
                    f"site {site} placed twice ({contents[site]} and {placement.piece})"
                )
            contents[site] = placement.piece
    state = GameState(tuple(contents), 1, 0, None, ONGOING)
    return state._replace(status=eval_end(game, state))


# --- legal move generation ----------------------------------------------

def _mover_placeable_piece(game: GameDescription, mover: int) -> str:
    for spec in game.pieces:
        if spec.ownership == "Each":
            return f"{spec.base}{mover}"
    raise EngineError("no placeable piece for the mover")


def _active_rule(game: GameDescription, state: GameState):
    rule = game.play
    if isinstance(rule, TurnParityChoice):
        rule = rule.even if state.turn % 2 == 0 else rule.odd
    return rule


def _slide_destinations(topo: Topology, contents, origin: int) -> list[int]:
    dests: list[int] = []
    rays = topo.rays[origin]
    for d in range(8):
        for site in rays[d]:
            if contents[site] is not None:
                break
            dests.append(site)
    dests.sort()
    return dests


def legal_moves(game: GameDescription, state: GameState) -> list[Move]:
    """All legal moves in deterministic ascending (from, to) order."""
    if state.status.kind != "ongoing":
        raise TerminalState(f"game is over: {state.status}")
    return _gen_moves(game, state)


def _gen_moves(game: GameDescription, state: GameState) -> list[Move]:
    topo = topology_of(game)
    contents = state.contents
    rule = _active_rule(game, state)
    if isinstance(rule, PlaceToEmpty):
        piece = _mover_placeable_piece(game, state.mover)
        return [
            Move(PLACE, piece, None, site)
            for site in range(topo.site_count)
            if contents[site] is None
        ]
    if isinstance(rule, MoveByPiece):
        movable = {
            name
            for name in game.pieces_of(state.mover)
            if game.movement_of(name) is not None
        }
        moves: list[Move] = []
        for origin in range(topo.site_count):
            piece = contents[origin]
            if piece in movable:
                moves.extend(
                    Move(SLIDE, piece, origin, dest)
                    for dest in _slide_destinations(topo, contents, origin)
                )
        return moves
    if isinstance(rule, ShootToEmpty):
        if state.replay_site is None:
            return []
        return [
            Move(SHOOT, rule.piece, None, dest)
            for dest in _slide_destinations(topo, contents, state.replay_site)
        ]
    raise EngineError(f"unsupported play rule {rule!r}")


def _has_any_move(game: GameDescription, state: GameState) -> bool:
    """Existence check used by end evaluation; avoids building move lists."""
    topo = topology_of(game)
    contents = state.contents
    rule = _active_rule(game, state)
    if isinstance(rule, PlaceToEmpty):
        return any(c is None for c in contents)
    if isinstance(rule, MoveByPiece):
        movable = {
            name
            for name in game.pieces_of(state.mover)
            if game.movement_of(name) is not None
        }
        for origin in range(topo.site_count):
            if contents[origin] in movable:
                for nbr in topo.neighbors_of(origin):
                    if contents[nbr] is None:
                        return True
        return False
    if isinstance(rule, ShootToEmpty):
        if state.replay_site is None:
            return False
        return any(
            contents[nbr] is None for nbr in topo.neighbors_of(state.replay_site)
        )
    raise EngineError(f"unsupported play rule {rule!r}")


# --- line detection ------------------------------------------------------

def detect_line(topology: Topology, contents, owned, length: int) -> bool:
    """True iff an owned run of at least `length` exists in any direction.

    `owned` is a piece name or a collection of piece names; runs may mix
    them (a player's pieces all count as theirs).
    """
    if isinstance(owned, str):
        owned = {owned}
    else:
        owned = set(owned)
    if length <= 0:
        raise ValueError("length must be at least 1")
    table = topology.neighbor_table
    for site in range(topology.site_count):
        if contents[site] not in owned:
            continue
        for d, opp in _DIR_PAIRS:
            # only measure a run from its first site to avoid double work
            prev = table[opp][site]
            if prev >= 0 and contents[prev] in owned:
                continue
            run = 1
            cur = table[d][site]
            while cur >= 0 and contents[cur] in owned:
                run += 1
                cur = table[d][cur]
            if run >= length:
                return True
    return False


def _line_through(topo: Topology, contents, site: int, piece_owner_set, length: int) -> bool:
    """Line check restricted to runs through `site` (just-placed fast path)."""
    table = topo.neighbor_table
    for d, opp in _DIR_PAIRS:
        run = 1
        cur = table[d][site]
        while cur >= 0 and contents[cur] in piece_owner_set:
            run += 1
            cur = table[d][cur]
        cur = table[opp][site]
        while cur >= 0 and contents[cur] in piece_owner_set:
            run += 1
            cur = table[opp][cur]
        if run >= length:
            return True
    return False


# --- end evaluation ------------------------------------------------------

def _result_player(role: str, subject: int) -> int:
    """Map a result role to a player id given the role's subject player."""
    return subject if role == "mover" else _other(subject)


def eval_end(game: GameDescription, state: GameState) -> Status:
    """Status of a state, evaluated from scratch (no last-move knowledge)."""
    topo = topology_of(game)
    for rule in game.end:
        if isinstance(rule.condition, LineCondition):
            # only the player who just moved can have completed a line, but
            # scan both players so arbitrary positions get an honest verdict
            just_moved = _other(state.mover)
            for player in (just_moved, state.mover):
                pieces = set(game.pieces_of(player))
                if pieces and detect_line(topo, state.contents, pieces, rule.condition.length):
                    return win(_result_player(rule.result.role, player))
        elif isinstance(rule.condition, StalematedCondition):
            if not _has_any_move(game, state):
                return win(_result_player(rule.result.role, state.mover))
    if not _has_any_move(game, state):
        return DRAW
    return ONGOING


# --- applying moves -------------------------------------------------------

def apply(game: GameDescription, state: GameState, move: Move) -> GameState:
    """Validated move application; returns the successor state."""
    if move not in legal_moves(game, state):
        raise IllegalMove(f"{move} is not legal here")
    return _apply(game, state, move)


def _apply(game: GameDescription, state: GameState, move: Move) -> GameState:
    """Unchecked application; callers must pass a generated legal move."""
    topo = topology_of(game)
    contents = list(state.contents)
    mover = state.mover
    turn = state.turn + 1
    if move.kind == SLIDE:
        contents[move.from_site] = None
        contents[move.to] = move.piece
        movement = game.movement_of(move.piece)
        if movement is not None and movement.replay:
            next_mover, replay_site = mover, move.to
        else:
            next_mover, replay_site = _other(mover), None
    else:
        contents[move.to] = move.piece
        next_mover, replay_site = _other(mover), None

    new = GameState(tuple(contents), next_mover, turn, replay_site, ONGOING)
    return new._replace(status=_status_after(game, topo, new, mover, move))


def _status_after(
    game: GameDescription,
    topo: Topology,
    state: GameState,
    just_moved: int,
    move: Move,
) -> Status:
    for rule in game.end:
        if isinstance(rule.condition, LineCondition):
            pieces = set(game.pieces_of(just_moved))
            if move.piece in pieces and _line_through(
                topo, state.contents, move.to, pieces, rule.condition.length
            ):
                return win(_result_player(rule.result.role, just_moved))
        elif isinstance(rule.condition, StalematedCondition):
            if not _has_any_move(game, state):
                return win(_result_player(rule.result.role, state.mover))
    if not _has_any_move(game, state):
        return DRAW
    return ONGOING


# --- random playouts -------------------------------------------------------

def playout_random(game: GameDescription, state: GameState, seed: int):
    """Uniform random playout to a terminal state; returns (state, Trial)."""
    if state.status.kind != "ongoing":
        raise TerminalState(f"game is over: {state.status}")
    rng = random.Random(seed)
    record: list[Move] = []
    final = _rollout(game, state, rng, record)
    trial = Trial(game.name, game.board.side, seed, tuple(record), final.status)
    return final, trial


def _rollout(
    game: GameDescription,
    state: GameState,
    rng: random.Random,
    record: list | None = None,
) -> GameState:
    """Play uniformly random moves until the game ends.

    The per-family cores below mutate scratch lists; their transitions
    mirror `_apply` exactly, which the test suite cross-checks by
    replaying recorded trials through the public API.
    """
    rule = game.play
    end = game.end
    if (
        isinstance(rule, PlaceToEmpty)
        and len(end) == 1
        and isinstance(end[0].condition, LineCondition)
        and end[0].result.role == "mover"
    ):
        return _rollout_placement(game, state, rng, record)
    if (
        isinstance(rule, TurnParityChoice)
        and isinstance(rule.even, MoveByPiece)
        and isinstance(rule.odd, ShootToEmpty)
        and len(end) == 1
        and isinstance(end[0].condition, StalematedCondition)
        and end[0].result.role == "next"
    ):
        return _rollout_slide_shoot(game, state, rng, record, rule.odd.piece)
    return _rollout_generic(game, state, rng, record)


def _rollout_placement(game, state, rng, record) -> GameState:
    topo = topology_of(game)
    length = next(
        r.condition.length for r in game.end if isinstance(r.condition, LineCondition)
    )
    contents = list(state.contents)
    empties = [s for s in range(topo.site_count) if contents[s] is None]
    mover = state.mover
    turn = state.turn
    pieces = {player: _mover_placeable_piece(game, player) for player in (1, 2)}
    own_sets = {player: frozenset(game.pieces_of(player)) for player in (1, 2)}
    table = topo.neighbor_table
    randrange = rng.randrange

    while True:
        k = randrange(len(empties))
        site = empties[k]
        empties[k] = empties[-1]
        empties.pop()
        piece = pieces[mover]
        contents[site] = piece
        turn += 1
        if record is not None:
            record.append(Move(PLACE, piece, None, site))
        # inline line-through check around the placed site
        owned = own_sets[mover]
        won = False
        for d, opp in _DIR_PAIRS:
            run = 1
            cur = table[d][site]
            while cur >= 0 and contents[cur] in owned:
                run += 1
                cur = table[d][cur]
            cur = table[opp][site]
            while cur >= 0 and contents[cur] in owned:
                run += 1
                cur = table[opp][cur]
            if run >= length:
                won = True
                break
        if won:
            return GameState(tuple(contents), _other(mover), turn, None, win(mover))
        if not empties:
            return GameState(tuple(contents), _other(mover), turn, None, DRAW)
        mover = _other(mover)


def _rollout_slide_shoot(game, state, rng, record, shot_piece) -> GameState:
    topo = topology_of(game)
    contents = list(state.contents)
    mover = state.mover
    turn = state.turn
    replay_site = state.replay_site
    movable = {
        player: frozenset(
            name for name in game.pieces_of(player) if game.movement_of(name) is not None
        )
        for player in (1, 2)
    }
    rays = topo.rays
    randrange = rng.randrange

    while True:
        if turn % 2 == 0:
            options: list[tuple[int, int]] = []
            own = movable[mover]
            for origin in range(topo.site_count):
                if contents[origin] in own:
                    for d in range(8):
                        for site in rays[origin][d]:
                            if contents[site] is not None:
                                break
                            options.append((origin, site))
            if not options:
                return GameState(
                    tuple(contents), mover, turn, replay_site, win(_other(mover))
                )
            origin, dest = options[randrange(len(options))]
            piece = contents[origin]
            contents[origin] = None
            contents[dest] = piece
            turn += 1
            replay_site = dest
            if record is not None:
                record.append(Move(SLIDE, piece, origin, dest))
        else:
            dests: list[int] = []
            for d in range(8):
                for site in rays[replay_site][d]:
                    if contents[site] is not None:
                        break
                    dests.append(site)
            if not dests:  # unreachable in real play: the vacated site is open
                return GameState(
                    tuple(contents), mover, turn, replay_site, win(_other(mover))
                )
            dest = dests[randrange(len(dests))]
            contents[dest] = shot_piece
            turn += 1
            replay_site = None
            if record is not None:
                record.append(Move(SHOOT, shot_piece, None, dest))
            mover = _other(mover)


def _rollout_generic(game, state, rng, record) -> GameState:
    while state.status.kind == "ongoing":
        moves = _gen_moves(game, state)
        move = moves[rng.randrange(len(moves))]
        if record is not None:
            record.append(move)
        state = _apply(game, state, move)
    return state


# --- trial serialization -----------------------------------------------

def _status_to_json(status: Status) -> dict:
    if status.kind == "win":
        return {"kind": "win", "player": status.player}
    return {"kind": status.kind}


def _status_from_json(obj) -> Status:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedTrial(f"bad status: {obj!r}")
    kind = obj["kind"]
    if kind == "win":
        player = obj.get("player")
        if player not in (1, 2):
            raise MalformedTrial(f"bad win player: {obj!r}")
        return win(player)
    if kind in ("draw", "ongoing"):
        return Status(kind)
    raise MalformedTrial(f"bad status kind: {kind!r}")


def _move_to_json(move: Move) -> dict:
    out = {"kind": move.kind, "piece": move.piece, "to": move.to}
    if move.from_site is not None:
        out["from"] = move.from_site
    return out


def _move_from_json(obj) -> Move:
    if not isinstance(obj, dict):
        raise MalformedTrial(f"bad move: {obj!r}")
    try:
        kind = obj["kind"]
        piece = obj["piece"]
        to = obj["to"]
    except KeyError as missing:
        raise MalformedTrial(f"move missing field {missing}") from None
    from_site = obj.get("from")
    if kind not in (PLACE, SLIDE, SHOOT):
        raise MalformedTrial(f"bad move kind: {kind!r}")
    if not isinstance(piece, str) or not isinstance(to, int):
        raise MalformedTrial(f"bad move fields: {obj!r}")
    if kind == SLIDE:
        if not isinstance(from_site, int):
            raise MalformedTrial("slide moves need an integer 'from'")
    elif from_site is not None:
        raise MalformedTrial(f"{kind} moves cannot carry 'from'")
    return Move(kind, piece, from_site, to)


def save_trial(trial: Trial) -> bytes:
    doc = {
        "game": trial.game,
        "side": trial.side,
        "seed": trial.seed,
        "moves": [_move_to_json(m) for m in trial.moves],
        "finalStatus": _status_to_json(trial.final_status),
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def load_trial(data: bytes) -> Trial:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedTrial(f"not a trial document: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedTrial("trial document must be a JSON object")
    try:
        game = doc["game"]
        side = doc["side"]
        seed = doc["seed"]
        moves = doc["moves"]
        final = doc["finalStatus"]
    except KeyError as missing:
        raise MalformedTrial(f"trial missing field {missing}") from None
    if not isinstance(game, str) or not isinstance(side, int) or not isinstance(seed, int):
        raise MalformedTrial("bad trial header fields")
    if not isinstance(moves, list):
        raise MalformedTrial("moves must be a list")
    return Trial(
        game,
        side,
        seed,
        tuple(_move_from_json(m) for m in moves),
        _status_from_json(final),
    )


def replay_trial(game: GameDescription, trial: Trial) -> GameState:
    """Re-apply a trial's moves through the validated API."""
    state = initial_state(game)
    for move in trial.moves:
        state = apply(game, state, move)
    return state
