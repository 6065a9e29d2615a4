"""Acceptance suite: one test per release criterion, each printing a
pass/fail line with its measured runtime (run with -s to watch live)."""

import random
import time

import pytest

import api_client as client
import oracles
from micro_ludii import cli, engine
from micro_ludii.agents import AgentSpec, select_move
from micro_ludii.engine import GameState, ONGOING
from micro_ludii.games import GAME_NAMES, game_text
from micro_ludii.lang import (
    BoardSpec,
    LineCondition,
    LudError,
    MoveByPiece,
    PlaceToEmpty,
    Placement,
    QR_BYTE_LIMIT,
    ResultRule,
    ShootToEmpty,
    SlideToEmpty,
    StalematedCondition,
    TurnParityChoice,
    formatted_size,
    load_game,
    parse,
    parse_text,
    tokenize,
)
from micro_ludii.topology import build_board

pytestmark = pytest.mark.acceptance


class _Criterion:
    def __init__(self, name: str, budget_seconds: float):
        self.name = name
        self.budget = budget_seconds

    def __enter__(self):
        self.started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.started
        verdict = "PASS" if exc_type is None and elapsed <= self.budget else "FAIL"
        print(f"[{verdict}] {self.name} ({elapsed:.2f}s, budget {self.budget:.0f}s)")
        if exc_type is None:
            assert elapsed <= self.budget, (
                f"{self.name} exceeded its {self.budget}s budget: {elapsed:.2f}s"
            )
        return False


def test_c01_parse_compile_fidelity():
    with _Criterion("parse-compile fidelity", 1.0):
        gomoku = load_game(game_text("gomoku"))
        assert gomoku.mode == 2
        assert gomoku.board == BoardSpec("goBoard", 15)
        assert gomoku.piece_names() == ("Ball1", "Ball2")
        assert gomoku.start == ()
        assert gomoku.play == PlaceToEmpty()
        assert gomoku.end[0].condition == LineCondition(5)
        assert gomoku.end[0].result == ResultRule("mover", "Win")

        amazons = load_game(game_text("amazons"))
        assert amazons.board == BoardSpec("chessBoard", 10)
        assert amazons.piece_names() == ("Queen1", "Queen2", "Dot0")
        assert amazons.movement_of("Queen1") == SlideToEmpty(replay=True)
        assert amazons.movement_of("Queen2") == SlideToEmpty(replay=True)
        assert amazons.start == (
            Placement("Queen1", (3, 6, 30, 39)),
            Placement("Queen2", (60, 69, 93, 96)),
        )
        assert amazons.play == TurnParityChoice(MoveByPiece(), ShootToEmpty("Dot0"))
        assert amazons.end[0].condition == StalematedCondition()
        assert amazons.end[0].result == ResultRule("next", "Win")


def test_c02_round_trip_and_mutation_fuzz():
    from micro_ludii.lang import format_tree

    with _Criterion("round-trip + 1000-case mutation fuzz", 30.0):
        for name in GAME_NAMES:
            tree = parse_text(game_text(name))
            assert parse(tokenize(format_tree(tree))) == tree

        rng = random.Random(20240707)
        sources = [game_text(name) for name in GAME_NAMES]
        alphabet = '(){}" ab5:'
        for case in range(1000):
            text = sources[case % len(sources)]
            op = rng.randrange(3)
            pos = rng.randrange(len(text))
            if op == 0:
                mutated = text[:pos] + text[pos + 1 :]
            elif op == 1:
                mutated = text[:pos] + rng.choice(alphabet) + text[pos:]
            else:
                mutated = text[:pos] + rng.choice(alphabet) + text[pos + 1 :]
            try:
                load_game(mutated)
            except LudError:
                pass  # structured error: acceptable outcome


def test_c03_engine_oracles():
    with _Criterion("engine oracles (line scan, slide count, side-3 tree)", 120.0):
        # (a) line detection vs the exhaustive direction-scan oracle
        topo = build_board("goBoard", 15)
        rng = random.Random(5150)
        disagreements = 0
        for _ in range(1000):
            contents = tuple(
                rng.choice([None, "Ball1", "Ball2"]) for _ in range(225)
            )
            for player in ("Ball1", "Ball2"):
                mine = engine.detect_line(topo, contents, player, 5)
                ref = oracles.line_scan(contents, 15, player, 5)
                disagreements += mine != ref
        assert disagreements == 0

        # (b) Amazons initial slide count equals the ray-walk oracle exactly
        amazons = load_game(game_text("amazons"))
        moves = engine.legal_moves(amazons, engine.initial_state(amazons))
        occupied = {3, 6, 30, 39, 60, 69, 93, 96}
        expected = oracles.slide_count(10, (3, 6, 30, 39), occupied)
        assert len(moves) == expected == oracles.AMAZONS_INITIAL_SLIDES

        # (c) side-3 full-tree terminal tallies match the oracle exactly
        from test_enumeration import engine_terminal_tallies

        tictactoe = load_game(game_text("tictactoe"))
        got = engine_terminal_tallies(tictactoe)
        assert got == oracles.terminal_tallies(3, 3) == oracles.TTT_TALLIES


def test_c04_playout_statistics():
    with _Criterion("100k-playout outcome statistics vs enumeration", 60.0):
        tictactoe = load_game(game_text("tictactoe"))
        start = engine.initial_state(tictactoe)
        counts = {1: 0, 2: 0, 0: 0}
        n = 100_000
        for seed in range(n):
            final, _ = engine.playout_random(tictactoe, start, seed)
            key = final.status.player if final.status.kind == "win" else 0
            counts[key] += 1
        for outcome, expected in oracles.TTT_UNIFORM_PROBS.items():
            observed = counts[outcome] / n
            assert abs(observed - float(expected)) <= 0.01, (
                f"outcome {outcome}: {observed:.4f} vs {float(expected):.4f}"
            )


def test_c05_mcts_tactical_soundness():
    with _Criterion("MCTS tactical soundness on every side-3 win-in-1", 300.0):
        tictactoe = load_game(game_text("tictactoe"))
        positions = oracles.reachable_ongoing_positions(3, 3)
        tactical = [
            (board, mover)
            for board, mover in positions
            if oracles.winning_sites(board, mover, 3, 3)
        ]
        assert len(tactical) == 2358
        spec = AgentSpec("mcts", iterations=2000, seed=11)
        memo: dict = {}
        winning_hits = 0
        immediate_hits = 0
        for board, mover in tactical:
            contents = tuple(None if v == 0 else f"Ball{v}" for v in board)
            state = GameState(contents, mover, sum(1 for v in board if v), None, ONGOING)
            move, _ = select_move(spec, tictactoe, state)
            immediate = set(oracles.winning_sites(board, mover, 3, 3))
            winning = set(oracles.minimax_winning_sites(board, mover, 3, 3, memo))
            assert immediate <= winning
            winning_hits += move.to in winning
            immediate_hits += move.to in immediate
        rate = winning_hits / len(tactical)
        print(
            f"  winning-move rate {rate:.4f}"
            f" (immediate line completions {immediate_hits / len(tactical):.4f})"
        )
        assert rate >= 0.99


def test_c06_strength_floor(tmp_path):
    with _Criterion("strength: mcts(1000) vs random on gomoku-9, 50 games", 600.0):
        game_file = tmp_path / "gomoku-9.lud"
        game_file.write_text(game_text("gomoku-9"), "utf-8")
        report = cli.run_match(
            str(game_file),
            cli.parse_agent("mcts:1000:0"),
            cli.parse_agent("random:1:0"),
            games=50,
            base_seed=1,
            out_dir=str(tmp_path / "trials"),
        )
        print(
            f"  mcts wins {report.wins_a}/50"
            f" (random {report.wins_b}, draws {report.draws})"
        )
        assert report.wins_a + report.wins_b + report.draws == 50
        assert report.wins_a >= 45


def test_c07_throughput_floor(tmp_path):
    with _Criterion("throughput: gomoku random playouts", 60.0):
        game_file = tmp_path / "gomoku.lud"
        game_file.write_text(game_text("gomoku"), "utf-8")
        name, count, rate = cli.perf_bench(str(game_file), 3.0)
        print(f"  {name}: {count} playouts, {rate:.0f}/s (comparison to other systems not asserted)")
        assert rate >= 1000.0


def test_c08_stats_invariants():
    with _Criterion("stats invariants over 100 randomized searches", 120.0):
        gomoku = load_game(game_text("gomoku"))
        amazons = load_game(game_text("amazons"))
        rng = random.Random(31337)
        violations = 0
        for case in range(100):
            game = gomoku if case % 2 == 0 else amazons
            state = engine.initial_state(game)
            for _ in range(rng.randrange(0, 9)):
                if state.status.kind != "ongoing":
                    break
                moves = engine.legal_moves(game, state)
                state = engine._apply(game, state, moves[rng.randrange(len(moves))])
            if state.status.kind != "ongoing":
                continue
            iterations = rng.randrange(1, 250)
            spec = AgentSpec("mcts", iterations=iterations, seed=case)
            _move, stats = select_move(spec, game, state)
            if sum(e.visits for e in stats.entries) != iterations:
                violations += 1
            if any(not -1.0 <= e.mean_value <= 1.0 for e in stats.entries):
                violations += 1
            if len(stats.entries) != len(engine.legal_moves(game, state)):
                violations += 1
        assert violations == 0


def test_c09_api_contract(live_server):
    with _Criterion("API contract over a live server", 60.0):
        base = live_server
        assert client.get(base, "/api/games").body == sorted(GAME_NAMES)

        # happy path: create -> human move -> agent move -> analyze
        created = client.post(
            base,
            "/api/match",
            {
                "game": "gomoku",
                "seats": {
                    "1": {"kind": "human"},
                    "2": {"kind": "mcts", "iterations": 120, "seed": 7},
                },
            },
        )
        assert created.status == 200 and set(created.body) == {"id"}
        match_id = created.body["id"]

        view = client.get(base, f"/api/match/{match_id}").body
        assert set(view) == {
            "kind", "side", "contents", "mover", "turn", "replaySite",
            "status", "legalMoves", "historyLength",
        }
        assert set(view["legalMoves"][0]) == {"kind", "piece", "to"}

        moved = client.post(
            base, f"/api/match/{match_id}/move",
            {"kind": "place", "piece": "Ball1", "to": 112},
        )
        assert moved.status == 200 and moved.body["contents"] == {"112": "Ball1"}

        ai = client.post(base, f"/api/match/{match_id}/ai-move")
        assert ai.status == 200 and set(ai.body) == {"move", "state", "stats"}
        stats = ai.body["stats"]
        assert set(stats) == {"entries", "totalIterations", "elapsedMs"}
        assert set(stats["entries"][0]) == {"move", "visits", "meanValue", "color", "radius"}
        assert sum(e["visits"] for e in stats["entries"]) == 120

        analyzed = client.post(base, f"/api/match/{match_id}/analyze", {"iterations": 40})
        assert analyzed.status == 200 and set(analyzed.body) == {"stats"}

        # enumerated error codes
        bad_game = client.post(
            base, "/api/match", {"game": "nope", "seats": {"1": {"kind": "human"}, "2": {"kind": "human"}}}
        )
        assert (bad_game.status, bad_game.body["error"]) == (400, "UnknownGame")

        bad_seats = client.post(base, "/api/match", {"game": "gomoku", "seats": {"1": {"kind": "human"}}})
        assert (bad_seats.status, bad_seats.body["error"]) == (400, "BadSeatAssignment")

        missing = client.get(base, "/api/match/ffffffffffffffff")
        assert (missing.status, missing.body["error"]) == (404, "UnknownMatch")

        hot = client.post(
            base, "/api/match",
            {"game": "gomoku", "seats": {"1": {"kind": "random", "seed": 1}, "2": {"kind": "human"}}},
        ).body["id"]
        not_seat = client.post(
            base, f"/api/match/{hot}/move", {"kind": "place", "piece": "Ball1", "to": 0}
        )
        assert (not_seat.status, not_seat.body["error"]) == (400, "NotYourSeat")

        not_agent = client.post(base, f"/api/match/{hot}/ai-move")
        assert not_agent.status == 200
        not_agent = client.post(base, f"/api/match/{hot}/ai-move")
        assert (not_agent.status, not_agent.body["error"]) == (400, "NotAgentSeat")

        illegal = client.post(
            base, f"/api/match/{match_id}/move",
            {"kind": "place", "piece": "Ball1", "to": 112},
        )
        assert (illegal.status, illegal.body["error"]) == (400, "IllegalMove")

        # play a hot-seat tictactoe to completion for MatchOver
        over_id = client.post(
            base, "/api/match",
            {"game": "tictactoe", "seats": {"1": {"kind": "human"}, "2": {"kind": "human"}}},
        ).body["id"]
        for piece, to in (("Ball1", 0), ("Ball2", 3), ("Ball1", 1), ("Ball2", 4), ("Ball1", 2)):
            ok = client.post(
                base, f"/api/match/{over_id}/move", {"kind": "place", "piece": piece, "to": to}
            )
            assert ok.status == 200
        finished = client.get(base, f"/api/match/{over_id}").body
        assert finished["status"] == {"kind": "win", "player": 1}
        post_over = client.post(
            base, f"/api/match/{over_id}/move", {"kind": "place", "piece": "Ball2", "to": 8}
        )
        assert (post_over.status, post_over.body["error"]) == (400, "MatchOver")


def test_c10_qr_lint():
    with _Criterion("QR size lint on gomoku.lud", 10.0):
        size = formatted_size(parse_text(game_text("gomoku")))
        print(f"  formatted gomoku.lud: {size} bytes (limit {QR_BYTE_LIMIT})")
        assert size <= QR_BYTE_LIMIT
