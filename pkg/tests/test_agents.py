import math
import random

import pytest

import oracles
from micro_ludii import engine
from micro_ludii.agents import (
    AgentSpec,
    SearchStats,
    select_move,
    ucb1,
    value_to_color,
    visit_to_radius,
)
from micro_ludii.engine import Move, TerminalState


def _place(state, game, site):
    piece = f"Ball{state.mover}"
    return engine.apply(game, state, Move(engine.PLACE, piece, None, site))


def _state_from_board(board, mover):
    contents = tuple(None if v == 0 else f"Ball{v}" for v in board)
    turn = sum(1 for v in board if v)
    return engine.GameState(contents, mover, turn, None, engine.ONGOING)


def test_random_agent_is_seed_deterministic(tictactoe):
    state = engine.initial_state(tictactoe)
    spec = AgentSpec("random", seed=5)
    first = select_move(spec, tictactoe, state)
    second = select_move(spec, tictactoe, state)
    assert first[0] == second[0]
    assert first[1].entries == second[1].entries


def test_random_agent_stats_shape(tictactoe):
    state = engine.initial_state(tictactoe)
    move, stats = select_move(AgentSpec("random", seed=1), tictactoe, state)
    assert stats.total_iterations == 1
    assert len(stats.entries) == 9
    assert sum(e.visits for e in stats.entries) == 1
    (visited,) = [e for e in stats.entries if e.visits == 1]
    assert visited.move == move


def test_terminal_state_raises(tictactoe):
    state = engine.initial_state(tictactoe)
    for site in (0, 3, 1, 4, 2):
        state = _place(state, tictactoe, site)
    with pytest.raises(TerminalState):
        select_move(AgentSpec("random", seed=0), tictactoe, state)
    with pytest.raises(TerminalState):
        select_move(AgentSpec("mcts", iterations=10, seed=0), tictactoe, state)


def test_mcts_single_legal_move_takes_all_visits(tictactoe):
    state = engine.initial_state(tictactoe)
    for site in (0, 1, 2, 3, 5, 4, 7, 8):  # leaves only site 6; nobody has won
        state = _place(state, tictactoe, site)
    assert state.status.kind == "ongoing"
    moves = engine.legal_moves(tictactoe, state)
    assert len(moves) == 1
    move, stats = select_move(AgentSpec("mcts", iterations=50, seed=3), tictactoe, state)
    assert move == moves[0]
    assert stats.entries[0].visits == 50
    assert stats.total_iterations == 50


def test_mcts_finds_winning_moves_on_sampled_positions(tictactoe):
    positions = oracles.reachable_ongoing_positions(3, 3)
    tactical = [
        (board, mover)
        for board, mover in positions
        if oracles.winning_sites(board, mover, 3, 3)
    ]
    rng = random.Random(2024)
    sample = rng.sample(tactical, 40)
    spec = AgentSpec("mcts", iterations=2000, seed=11)
    memo: dict = {}
    for board, mover in sample:
        state = _state_from_board(board, mover)
        wins = set(oracles.minimax_winning_sites(board, mover, 3, 3, memo))
        move, _stats = select_move(spec, tictactoe, state)
        assert move.to in wins  # the full sweep lives in the acceptance suite


def test_mcts_is_deterministic(gomoku9):
    state = engine.initial_state(gomoku9)
    state = _place(state, gomoku9, 40)
    spec = AgentSpec("mcts", iterations=300, seed=9)
    move_a, stats_a = select_move(spec, gomoku9, state)
    move_b, stats_b = select_move(spec, gomoku9, state)
    assert move_a == move_b
    assert stats_a.entries == stats_b.entries
    assert stats_a.total_iterations == stats_b.total_iterations


@pytest.mark.parametrize("iterations", [1, 9, 50, 400])
def test_stats_conservation(tictactoe, iterations):
    state = engine.initial_state(tictactoe)
    _move, stats = select_move(
        AgentSpec("mcts", iterations=iterations, seed=2), tictactoe, state
    )
    assert len(stats.entries) == 9  # one entry per legal move, zero-visit included
    assert sum(e.visits for e in stats.entries) == iterations
    assert all(-1.0 <= e.mean_value <= 1.0 for e in stats.entries)


def test_one_iteration_visits_exactly_one_entry(tictactoe):
    state = engine.initial_state(tictactoe)
    _move, stats = select_move(AgentSpec("mcts", iterations=1, seed=0), tictactoe, state)
    visited = [e for e in stats.entries if e.visits]
    assert len(visited) == 1
    assert visited[0].visits == 1


def test_zero_sum_two_ply_forced_outcomes(tictactoe):
    # mover 1 to play; only site 8 is free after this line, and playing it wins
    board = (1, 2, 1,
             2, 1, 2,
             2, 1, 0)
    state = _state_from_board(board, 1)
    move, stats = select_move(AgentSpec("mcts", iterations=64, seed=4), tictactoe, state)
    assert move.to == 8
    (entry,) = stats.entries
    assert entry.mean_value == 1.0  # every simulation is an immediate win for the mover

    # forced loss: both empty sites lead to mover 1 completing a line, so
    # every simulated continuation scores -1 for mover 2
    board = (1, 1, 0,
             1, 2, 2,
             0, 2, 1)
    state = _state_from_board(board, 2)
    _move, stats = select_move(AgentSpec("mcts", iterations=64, seed=4), tictactoe, state)
    assert [e.visits > 0 for e in stats.entries] == [True, True]
    assert all(e.mean_value == -1.0 for e in stats.entries)


def test_ucb1_prefers_underexplored_children():
    crowded = ucb1(0.5, 100, 200, math.sqrt(2))
    sparse = ucb1(0.5, 2, 200, math.sqrt(2))
    assert sparse > crowded


def test_ucb1_argmax_invariance_for_equal_means():
    # With equal mean values the maximizer is the least-visited child, a
    # property preserved by scaling every count by a common factor.
    c = math.sqrt(2)
    visits = [3, 17, 5, 9]
    parent = sum(visits)
    for k in (2, 7, 100):
        base = [ucb1(0.0, v, parent, c) for v in visits]
        scaled = [ucb1(0.0, k * v, k * parent, c) for v in visits]
        assert base.index(max(base)) == scaled.index(max(scaled))


def test_strength_smoke_mcts_beats_random(gomoku9):
    """Tiny strength check; the 50-game floor runs in the acceptance suite."""
    mcts_wins = 0
    for g in range(4):
        state = engine.initial_state(gomoku9)
        seats = {1: "mcts", 2: "random"} if g % 2 == 0 else {1: "random", 2: "mcts"}
        specs = {
            "mcts": AgentSpec("mcts", iterations=300, seed=g),
            "random": AgentSpec("random", seed=100 + g),
        }
        while state.status.kind == "ongoing":
            label = seats[state.mover]
            move, _ = select_move(specs[label], gomoku9, state)
            state = engine.apply(gomoku9, state, move)
        if state.status.kind == "win" and seats[state.status.player] == "mcts":
            mcts_wins += 1
    assert mcts_wins >= 3


# --- overlay helpers --------------------------------------------------------

def test_color_endpoints():
    assert value_to_color(1.0) == (0, 0, 255)
    assert value_to_color(0.0) == (128, 0, 128)
    assert value_to_color(-1.0) == (255, 0, 0)


def test_color_clamps_out_of_range_values():
    assert value_to_color(2.5) == (0, 0, 255)
    assert value_to_color(-9.0) == (255, 0, 0)


def test_color_is_piecewise_linear_and_monotone():
    values = [i / 10 - 1.0 for i in range(21)]
    colors = [value_to_color(v) for v in values]
    reds = [c[0] for c in colors]
    blues = [c[2] for c in colors]
    assert reds == sorted(reds, reverse=True)
    assert blues == sorted(blues)
    assert all(c[1] == 0 for c in colors)


def test_radius_endpoints_and_quarter_point():
    assert visit_to_radius(0, 100, 0.15, 0.45) == pytest.approx(0.15)
    assert visit_to_radius(100, 100, 0.15, 0.45) == pytest.approx(0.45)
    assert visit_to_radius(25, 100, 0.15, 0.45) == pytest.approx(0.30)


def test_radius_is_monotone():
    radii = [visit_to_radius(v, 50, 0.1, 0.5) for v in range(51)]
    assert radii == sorted(radii)


def test_radius_input_validation():
    with pytest.raises(ValueError):
        visit_to_radius(5, 0, 0.1, 0.5)
    with pytest.raises(ValueError):
        visit_to_radius(-1, 10, 0.1, 0.5)
    with pytest.raises(ValueError):
        visit_to_radius(11, 10, 0.1, 0.5)


def test_mcts_requires_at_least_one_iteration(tictactoe):
    import micro_ludii.engine as eng

    state = eng.initial_state(tictactoe)
    with pytest.raises(ValueError):
        select_move(AgentSpec("mcts", iterations=0), tictactoe, state)
    with pytest.raises(ValueError):
        select_move(AgentSpec("alphabeta"), tictactoe, state)
