"""General game agents: uniform random and UCT-MCTS.

Every move selection returns SearchStats with one entry per legal root
move (visit counts and mean values from the root mover's perspective),
which the CLI and the web overlay turn into circles, arrows, and colors.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from . import engine
from .engine import GameDescription, GameState, Move, TerminalState


@dataclass(frozen=True)
class AgentSpec:
    kind: str  # "random" | "mcts"
    iterations: int = 1000
    exploration_c: float = math.sqrt(2)
    seed: int = 0

    def describe(self) -> str:
        if self.kind == "random":
            return f"random(seed={self.seed})"
        return (
            f"mcts(iterations={self.iterations},"
            f" c={self.exploration_c:.4f}, seed={self.seed})"
        )


@dataclass(frozen=True)
class StatsEntry:
    move: Move
    visits: int
    mean_value: float  # root mover's perspective, in [-1, 1]


@dataclass(frozen=True)
class SearchStats:
    entries: tuple[StatsEntry, ...]
    total_iterations: int
    elapsed_ms: float = field(compare=False, default=0.0)


def ucb1(mean_value: float, child_visits: int, parent_visits: int, c: float) -> float:
    """The selection score: exploitation plus the exploration bonus."""
    return mean_value + c * math.sqrt(math.log(parent_visits) / child_visits)


class _Node:
    __slots__ = ("state", "perspective", "untried", "next_untried", "children", "visits", "value")

    def __init__(self, state: GameState, perspective: int, untried: list[Move]):
        self.state = state
        self.perspective = perspective
        self.untried = untried
        self.next_untried = 0
        self.children: list[_Node] = []
        self.visits = 0
        self.value = 0.0


def _reward(status: engine.Status, player: int) -> float:
    if status.kind == "win":
        return 1.0 if status.player == player else -1.0
    return 0.0


def _search(
    game: GameDescription,
    state: GameState,
    root_moves: list[Move],
    iterations: int,
    c: float,
    rng: random.Random,
) -> _Node:
    root = _Node(state, state.mover, root_moves)
    log = math.log
    sqrt = math.sqrt
    for _ in range(iterations):
        node = root
        path = [root]
        while True:
            node_state = node.state
            if node_state.status.kind != "ongoing":
                result = node_state.status
                break
            if node.next_untried < len(node.untried):
                move = node.untried[node.next_untried]
                node.next_untried += 1
                child_state = engine._apply(game, node_state, move)
                terminal = child_state.status.kind != "ongoing"
                child = _Node(
                    child_state,
                    node_state.mover,
                    [] if terminal else engine.legal_moves(game, child_state),
                )
                node.children.append(child)
                path.append(child)
                if terminal:
                    result = child_state.status
                else:
                    result = engine._rollout(game, child_state, rng).status
                break
            # fully expanded: descend along the best UCB1 score
            log_n = log(node.visits)
            best = None
            best_score = -math.inf
            for child in node.children:
                score = child.value / child.visits + c * sqrt(log_n / child.visits)
                if score > best_score:
                    best_score = score
                    best = child
            node = best
            path.append(node)
        for visited in path:
            visited.visits += 1
            visited.value += _reward(result, visited.perspective)
    return root


def _stats_from_root(root: _Node, iterations: int, elapsed_ms: float) -> SearchStats:
    entries = []
    for i, move in enumerate(root.untried):
        if i < len(root.children):
            child = root.children[i]
            entries.append(StatsEntry(move, child.visits, child.value / child.visits))
        else:
            entries.append(StatsEntry(move, 0, 0.0))
    return SearchStats(tuple(entries), iterations, elapsed_ms)


def select_move(
    spec: AgentSpec, game: GameDescription, state: GameState
) -> tuple[Move, SearchStats]:
    """Pick a move for the current state and report per-move search stats."""
    if state.status.kind != "ongoing":
        raise TerminalState(f"game is over: {state.status}")
    moves = engine.legal_moves(game, state)
    started = time.perf_counter()
    rng = random.Random(spec.seed)

    if spec.kind == "random":
        chosen = moves[rng.randrange(len(moves))]
        entries = tuple(
            StatsEntry(m, 1 if m == chosen else 0, 0.0) for m in moves
        )
        elapsed = (time.perf_counter() - started) * 1000.0
        return chosen, SearchStats(entries, 1, elapsed)

    if spec.kind != "mcts":
        raise ValueError(f"unknown agent kind {spec.kind!r}")
    if spec.iterations < 1:
        raise ValueError("mcts needs at least one iteration")

    root = _search(game, state, moves, spec.iterations, spec.exploration_c, rng)
    best_index = 0
    best_visits = -1
    for i, child in enumerate(root.children):
        if child.visits > best_visits:
            best_visits = child.visits
            best_index = i
    elapsed = (time.perf_counter() - started) * 1000.0
    return moves[best_index], _stats_from_root(root, spec.iterations, elapsed)


def value_to_color(mean_value: float) -> tuple[int, int, int]:
    """Red (losing) through purple (neutral) to blue (winning)."""
    v = max(-1.0, min(1.0, mean_value))
    if v <= 0.0:
        t = v + 1.0  # 0 at red, 1 at purple
        return (round(255 - 127 * t), 0, round(128 * t))
    return (round(128 * (1.0 - v)), 0, round(128 + 127 * v))


def visit_to_radius(visits: int, max_visits: int, r_min: float, r_max: float) -> float:
    """Square-root visit scaling between r_min and r_max, in cell units."""
    if max_visits < 1:
        raise ValueError("max_visits must be at least 1")
    if not 0 <= visits <= max_visits:
        raise ValueError("visits must lie in [0, max_visits]")
    return r_min + (r_max - r_min) * math.sqrt(visits / max_visits)
