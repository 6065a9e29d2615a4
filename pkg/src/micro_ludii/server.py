"""HTTP/JSON match server.

Endpoints (bodies and field names are part of the contract):
  POST /api/match                {game, seats}            -> {id}
  GET  /api/games                                         -> [names]
  GET  /api/match/{id}                                    -> state view
  POST /api/match/{id}/move      {kind, piece, from?, to} -> state view
  POST /api/match/{id}/ai-move                            -> {move, state, stats}
  POST /api/match/{id}/analyze   {iterations}             -> {stats}

Contract violations answer HTTP 400 with {error, detail}; unknown match
ids answer 404. Sessions live in memory, are evicted after an hour of
inactivity, and are mutated under a per-session lock so concurrent moves
serialize cleanly.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from http import HTTPStatus
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer

from . import engine
from .agents import AgentSpec, SearchStats, select_move, value_to_color, visit_to_radius
from .games import GAME_NAMES, game_text
from .lang import load_game

SESSION_IDLE_SECONDS = 3600.0
OVERLAY_R_MIN = 0.15
OVERLAY_R_MAX = 0.45


class ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str):
        self.status = status
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}")


def _bad_request(code: str, detail: str) -> ApiError:
    return ApiError(HTTPStatus.BAD_REQUEST, code, detail)


class MatchSession:
    def __init__(self, session_id: str, game_name: str, game, seats: dict):
        self.id = session_id
        self.game_name = game_name
        self.game = game
        self.seats = seats  # player id -> "human" | AgentSpec
        self.state = engine.initial_state(game)
        self.history: list[engine.Move] = []
        self.last_stats: SearchStats | None = None
        self.lock = threading.Lock()
        self.last_access = time.monotonic()

    def check_replay_invariant(self) -> None:
        replayed = engine.initial_state(self.game)
        for move in self.history:
            replayed = engine._apply(self.game, replayed, move)
        assert replayed == self.state, "history no longer reproduces the state"


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, MatchSession] = {}
        self._lock = threading.Lock()

    def _sweep(self) -> None:
        cutoff = time.monotonic() - SESSION_IDLE_SECONDS
        stale = [k for k, s in self._sessions.items() if s.last_access < cutoff]
        for k in stale:
            del self._sessions[k]

    def create(self, game_name: str, seats: dict) -> MatchSession:
        session = MatchSession(secrets.token_hex(8), game_name, load_game(game_text(game_name)), seats)
        with self._lock:
            self._sweep()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> MatchSession:
        with self._lock:
            self._sweep()
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(HTTPStatus.NOT_FOUND, "UnknownMatch", f"no match {session_id!r}")
        session.last_access = time.monotonic()
        return session


def _parse_seats(raw) -> dict:
    if not isinstance(raw, dict) or set(raw) != {"1", "2"}:
        raise _bad_request("BadSeatAssignment", 'seats must assign players "1" and "2"')
    seats = {}
    for key, value in raw.items():
        if not isinstance(value, dict) or "kind" not in value:
            raise _bad_request("BadSeatAssignment", f"seat {key} needs a kind")
        kind = value["kind"]
        if kind == "human":
            seats[int(key)] = "human"
        elif kind in ("random", "mcts"):
            try:
                seats[int(key)] = AgentSpec(
                    kind,
                    iterations=int(value.get("iterations", 1000)),
                    exploration_c=float(value.get("explorationC", AgentSpec("mcts").exploration_c)),
                    seed=int(value.get("seed", 0)),
                )
            except (TypeError, ValueError) as exc:
                raise _bad_request("BadSeatAssignment", f"seat {key}: {exc}") from None
        else:
            raise _bad_request("BadSeatAssignment", f"unknown seat kind {kind!r}")
    return seats


def _move_to_json(move: engine.Move) -> dict:
    out = {"kind": move.kind, "piece": move.piece, "to": move.to}
    if move.from_site is not None:
        out["from"] = move.from_site
    return out


def _move_from_json(obj) -> engine.Move:
    if not isinstance(obj, dict):
        raise _bad_request("BadRequest", "move must be an object")
    kind = obj.get("kind")
    piece = obj.get("piece")
    to = obj.get("to")
    from_site = obj.get("from")
    if kind not in (engine.PLACE, engine.SLIDE, engine.SHOOT):
        raise _bad_request("BadRequest", f"bad move kind {kind!r}")
    if not isinstance(piece, str) or not isinstance(to, int):
        raise _bad_request("BadRequest", "move needs string 'piece' and integer 'to'")
    if from_site is not None and not isinstance(from_site, int):
        raise _bad_request("BadRequest", "'from' must be an integer when present")
    return engine.Move(kind, piece, from_site, to)


def _status_to_json(status: engine.Status) -> dict:
    if status.kind == "win":
        return {"kind": "win", "player": status.player}
    return {"kind": status.kind}


def state_view(session: MatchSession) -> dict:
    state = session.state
    game = session.game
    if state.status.kind == "ongoing":
        moves = [_move_to_json(m) for m in engine.legal_moves(game, state)]
    else:
        moves = []
    return {
        "kind": game.board.kind,
        "side": game.board.side,
        "contents": {
            str(site): piece
            for site, piece in enumerate(state.contents)
            if piece is not None
        },
        "mover": state.mover,
        "turn": state.turn,
        "replaySite": state.replay_site,
        "status": _status_to_json(state.status),
        "legalMoves": moves,
        "historyLength": len(session.history),
    }


def stats_view(stats: SearchStats) -> dict:
    max_visits = max((entry.visits for entry in stats.entries), default=0)
    max_visits = max(max_visits, 1)
    entries = []
    for entry in stats.entries:
        entries.append(
            {
                "move": _move_to_json(entry.move),
                "visits": entry.visits,
                "meanValue": entry.mean_value,
                "color": list(value_to_color(entry.mean_value)),
                "radius": visit_to_radius(
                    entry.visits, max_visits, OVERLAY_R_MIN, OVERLAY_R_MAX
                ),
            }
        )
    return {
        "entries": entries,
        "totalIterations": stats.total_iterations,
        "elapsedMs": stats.elapsed_ms,
    }


class Api:
    """Endpoint logic, transport-free so tests can drive it directly."""

    def __init__(self):
        self.store = SessionStore()

    def create_match(self, body) -> dict:
        if not isinstance(body, dict):
            raise _bad_request("BadRequest", "body must be a JSON object")
        game_name = body.get("game")
        if game_name not in GAME_NAMES:
            raise _bad_request("UnknownGame", f"unknown game {game_name!r}")
        seats = _parse_seats(body.get("seats"))
        session = self.store.create(game_name, seats)
        return {"id": session.id}

    def games(self) -> list[str]:
        return sorted(GAME_NAMES)

    def get_state(self, session_id: str) -> dict:
        session = self.store.get(session_id)
        with session.lock:
            return state_view(session)

    def post_move(self, session_id: str, body) -> dict:
        session = self.store.get(session_id)
        move = _move_from_json(body)
        with session.lock:
            if session.state.status.kind != "ongoing":
                raise _bad_request("MatchOver", "the match is already decided")
            seat = session.seats[session.state.mover]
            if seat != "human":
                raise _bad_request("NotYourSeat", f"player {session.state.mover} is an agent seat")
            try:
                session.state = engine.apply(session.game, session.state, move)
            except engine.IllegalMove:
                raise _bad_request("IllegalMove", f"{_move_to_json(move)} is not legal") from None
            session.history.append(move)
            session.last_stats = None
            if __debug__:
                session.check_replay_invariant()
            return state_view(session)

    def ai_move(self, session_id: str) -> dict:
        session = self.store.get(session_id)
        with session.lock:
            if session.state.status.kind != "ongoing":
                raise _bad_request("MatchOver", "the match is already decided")
            seat = session.seats[session.state.mover]
            if seat == "human":
                raise _bad_request("NotAgentSeat", f"player {session.state.mover} is the human seat")
            move, stats = select_move(seat, session.game, session.state)
            session.state = engine._apply(session.game, session.state, move)
            session.history.append(move)
            session.last_stats = stats
            if __debug__:
                session.check_replay_invariant()
            return {
                "move": _move_to_json(move),
                "state": state_view(session),
                "stats": stats_view(stats),
            }

    def analyze(self, session_id: str, body) -> dict:
        session = self.store.get(session_id)
        if not isinstance(body, dict):
            raise _bad_request("BadRequest", "body must be a JSON object")
        iterations = body.get("iterations", 1000)
        if not isinstance(iterations, int) or iterations < 1:
            raise _bad_request("BadRequest", "iterations must be a positive integer")
        with session.lock:
            if session.state.status.kind != "ongoing":
                raise _bad_request("MatchOver", "the match is already decided")
            spec = AgentSpec("mcts", iterations=iterations, seed=len(session.history))
            _move, stats = select_move(spec, session.game, session.state)
            return {"stats": stats_view(stats)}


class _Handler(SimpleHTTPRequestHandler):
    api: Api = None  # type: ignore[assignment]
    ui_dir: str | None = None

    def __init__(self, *args, **kwargs):
        directory = self.ui_dir or "."
        super().__init__(*args, directory=directory, **kwargs)

    def log_message(self, fmt, *args):  # keep test output clean
        pass

    def _write_json(self, payload, status: int = HTTPStatus.OK) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self):
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            raise _bad_request("BadRequest", "bad Content-Length") from None
        raw = self.rfile.read(length) if length else b"{}"
        try:
            return json.loads(raw.decode("utf-8") or "{}")
        except (UnicodeDecodeError, json.JSONDecodeError):
            raise _bad_request("BadRequest", "body is not valid JSON") from None

    def _dispatch(self, method: str) -> bool:
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if method == "GET" and parts == ["api", "games"]:
                self._write_json(self.api.games())
                return True
            if len(parts) >= 2 and parts[:2] == ["api", "match"]:
                if method == "POST" and len(parts) == 2:
                    self._write_json(self.api.create_match(self._read_json()))
                    return True
                if len(parts) == 3 and method == "GET":
                    self._write_json(self.api.get_state(parts[2]))
                    return True
                if len(parts) == 4 and method == "POST":
                    session_id, action = parts[2], parts[3]
                    if action == "move":
                        self._write_json(self.api.post_move(session_id, self._read_json()))
                        return True
                    if action == "ai-move":
                        self._write_json(self.api.ai_move(session_id))
                        return True
                    if action == "analyze":
                        self._write_json(self.api.analyze(session_id, self._read_json()))
                        return True
            if parts and parts[0] == "api":
                self._write_json(
                    {"error": "NotFound", "detail": f"no endpoint {self.path}"},
                    HTTPStatus.NOT_FOUND,
                )
                return True
        except ApiError as exc:
            self._write_json({"error": exc.code, "detail": exc.detail}, exc.status)
            return True
        return False

    def do_GET(self):
        if self._dispatch("GET"):
            return
        if self.ui_dir is None:
            self._write_json(
                {"error": "NotFound", "detail": "no static assets configured"},
                HTTPStatus.NOT_FOUND,
            )
            return
        super().do_GET()

    def do_POST(self):
        if not self._dispatch("POST"):
            self._write_json(
                {"error": "NotFound", "detail": f"no endpoint {self.path}"},
                HTTPStatus.NOT_FOUND,
            )


def create_server(host: str = "127.0.0.1", port: int = 8000, ui_dir: str | None = None) -> ThreadingHTTPServer:
    handler = type("Handler", (_Handler,), {"api": Api(), "ui_dir": ui_dir})
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server


def serve_forever(host: str, port: int, ui_dir: str | None = None) -> None:
    server = create_server(host, port, ui_dir)
    print(f"micro-ludii server on http://{host}:{server.server_address[1]}", flush=True)
    if ui_dir:
        print(f"serving UI from {ui_dir}", flush=True)
    try:
        server.serve_forever()
    finally:
        server.server_close()
