"""Command-line entry point.

Subcommands:
  play   run an agent-vs-agent match, print a report, write trial files
  bench  measure random-playout throughput for a game
  check  compile a game file and lint its formatted size against the QR limit
  serve  start the HTTP match server

The play report body is deterministic for fixed flags; wall-clock timing
goes to stderr. Game g of a match uses seed (base seed + g), and the first
mover alternates so seat order does not bias win counts.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import engine
from .agents import AgentSpec, select_move
from .lang import LudError, QR_BYTE_LIMIT, format_tree, load_game, parse_text


class CliError(Exception):
    pass


def _load_game_file(path: str):
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        return load_game(text), text
    except LudError as exc:
        raise CliError(f"compile failure in {path}: {exc}") from None


def parse_agent(arg: str) -> AgentSpec:
    """Parse `kind[:iterations[:seed]]`, e.g. `mcts:1000:7` or `random`."""
    parts = arg.split(":")
    kind = parts[0]
    if kind not in ("random", "mcts"):
        raise CliError(f"unknown agent kind {kind!r} (random or mcts)")
    iterations = 1000
    seed = 0
    if len(parts) > 1 and parts[1]:
        iterations = int(parts[1])
    if len(parts) > 2 and parts[2]:
        seed = int(parts[2])
    if len(parts) > 3:
        raise CliError(f"bad agent spec {arg!r}")
    if kind == "mcts" and iterations < 1:
        raise CliError("mcts needs at least one iteration")
    return AgentSpec(kind, iterations=iterations, seed=seed)


@dataclass
class GameRecord:
    index: int
    seed: int
    first: str       # "a" | "b"
    winner: str      # "a" | "b" | "draw"
    move_count: int
    trial_path: str


@dataclass
class MatchReport:
    game: str
    agent_a: str
    agent_b: str
    games_played: int
    wins_a: int
    wins_b: int
    draws: int
    per_game: list[GameRecord]

    def to_text(self) -> str:
        lines = [
            f"game: {self.game}",
            f"agent-a: {self.agent_a}",
            f"agent-b: {self.agent_b}",
            f"games: {self.games_played}",
            f"wins-a: {self.wins_a}",
            f"wins-b: {self.wins_b}",
            f"draws: {self.draws}",
            "per-game:",
        ]
        for rec in self.per_game:
            lines.append(
                f"  g{rec.index:03d} seed={rec.seed} first={rec.first}"
                f" winner={rec.winner} moves={rec.move_count} trial={rec.trial_path}"
            )
        return "\n".join(lines) + "\n"


def _derived_spec(spec: AgentSpec, game_seed: int, seat: int) -> AgentSpec:
    # distinct deterministic streams per game and seat
    return AgentSpec(
        spec.kind,
        iterations=spec.iterations,
        exploration_c=spec.exploration_c,
        seed=spec.seed + 2 * game_seed + seat,
    )


def run_match(
    game_path: str,
    spec_a: AgentSpec,
    spec_b: AgentSpec,
    games: int,
    base_seed: int,
    out_dir: str = "trials",
) -> MatchReport:
    if games < 1:
        raise CliError("games must be at least 1")
    game, _ = _load_game_file(game_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(game_path).stem

    wins = {"a": 0, "b": 0, "draw": 0}
    records: list[GameRecord] = []
    for g in range(games):
        game_seed = base_seed + g
        first = "a" if g % 2 == 0 else "b"
        seats = {  # player 1 moves first
            1: first,
            2: "b" if first == "a" else "a",
        }
        specs = {"a": spec_a, "b": spec_b}
        state = engine.initial_state(game)
        moves: list[engine.Move] = []
        per_seat = {
            label: _derived_spec(specs[label], game_seed, player)
            for player, label in seats.items()
        }
        while state.status.kind == "ongoing":
            label = seats[state.mover]
            move, _stats = select_move(per_seat[label], game, state)
            moves.append(move)
            state = engine._apply(game, state, move)
        if state.status.kind == "win":
            winner = seats[state.status.player]
        else:
            winner = "draw"
        wins[winner] += 1
        trial = engine.Trial(
            game.name, game.board.side, game_seed, tuple(moves), state.status
        )
        trial_path = out / f"{stem}-g{g:03d}.trial.json"
        trial_path.write_bytes(engine.save_trial(trial))
        records.append(
            GameRecord(g, game_seed, first, winner, len(moves), str(trial_path))
        )

    return MatchReport(
        game=game.name,
        agent_a=spec_a.describe(),
        agent_b=spec_b.describe(),
        games_played=games,
        wins_a=wins["a"],
        wins_b=wins["b"],
        draws=wins["draw"],
        per_game=records,
    )


def perf_bench(game_path: str, duration_seconds: float) -> tuple[str, int, float]:
    """Run seeded playouts from the initial state; returns (name, count, rate)."""
    game, _ = _load_game_file(game_path)
    start_state = engine.initial_state(game)
    started = time.perf_counter()
    deadline = started + duration_seconds
    count = 0
    while time.perf_counter() < deadline:
        engine.playout_random(game, start_state, seed=count)
        count += 1
    elapsed = time.perf_counter() - started
    return game.name, count, count / elapsed


def _cmd_play(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    report = run_match(
        args.game,
        parse_agent(args.agent_a),
        parse_agent(args.agent_b),
        args.games,
        args.seed,
        args.out_dir,
    )
    sys.stdout.write(report.to_text())
    sys.stderr.write(f"elapsed-seconds: {time.perf_counter() - started:.3f}\n")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    name, count, rate = perf_bench(args.game, args.seconds)
    sys.stdout.write(f"game: {name}\n")
    sys.stdout.write(f"playouts: {count}\n")
    sys.stdout.write(f"playouts-per-second: {rate:.1f}\n")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    game, text = _load_game_file(args.game)
    size = len(format_tree(parse_text(text)).encode("utf-8"))
    sys.stdout.write(f"game: {game.name}\n")
    sys.stdout.write(f"formatted-bytes: {size}\n")
    if size <= QR_BYTE_LIMIT:
        sys.stdout.write(f"qr-fit: yes (limit {QR_BYTE_LIMIT})\n")
    else:
        sys.stdout.write(
            f"qr-fit: NO, {size} bytes exceeds the {QR_BYTE_LIMIT}-byte QR capacity\n"
        )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve_forever

    serve_forever(args.host, args.port, args.ui_dir)
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="micro-ludii")
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="run an agent-vs-agent match")
    play.add_argument("--game", required=True, help="path to a .lud file")
    play.add_argument("--agent-a", required=True, help="kind[:iterations[:seed]]")
    play.add_argument("--agent-b", required=True, help="kind[:iterations[:seed]]")
    play.add_argument("--games", type=int, default=1)
    play.add_argument("--seed", type=int, default=1)
    play.add_argument("--out-dir", default="trials")
    play.set_defaults(fn=_cmd_play)

    bench = sub.add_parser("bench", help="measure playout throughput")
    bench.add_argument("--game", required=True)
    bench.add_argument("--seconds", type=float, default=10.0)
    bench.set_defaults(fn=_cmd_bench)

    check = sub.add_parser("check", help="compile a game and lint its size")
    check.add_argument("--game", required=True)
    check.set_defaults(fn=_cmd_check)

    serve = sub.add_parser("serve", help="start the HTTP match server")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--ui-dir", default=None, help="static assets directory")
    serve.set_defaults(fn=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except engine.EngineError as exc:
        sys.stderr.write(f"engine error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
