"""micro-ludii: a miniature general game system.

Game rules are written as ludeme trees in `.lud` files, compiled into
playable engines, and played by general agents (uniform random and
UCT-MCTS) whose per-action search statistics drive a board overlay in
the CLI report and the browser UI.
"""

__version__ = "0.1.0"
