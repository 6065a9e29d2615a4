import json
import math

import pytest

from micro_ludii import cli, engine
from micro_ludii.games import game_text
from micro_ludii.lang import load_game


@pytest.fixture()
def game_dir(tmp_path):
    for name in ("gomoku", "gomoku-9", "tictactoe", "amazons"):
        (tmp_path / f"{name}.lud").write_text(game_text(name), "utf-8")
    return tmp_path


def test_parse_agent_forms():
    spec = cli.parse_agent("mcts:500:7")
    assert (spec.kind, spec.iterations, spec.seed) == ("mcts", 500, 7)
    assert spec.exploration_c == pytest.approx(math.sqrt(2))
    assert cli.parse_agent("random").kind == "random"
    assert cli.parse_agent("mcts").iterations == 1000
    assert cli.parse_agent("mcts::9").seed == 9
    with pytest.raises(cli.CliError):
        cli.parse_agent("alphabeta")
    with pytest.raises(cli.CliError):
        cli.parse_agent("mcts:10:2:9")
    with pytest.raises(cli.CliError):
        cli.parse_agent("mcts:0")


def test_run_match_counts_and_trials(game_dir, tmp_path):
    out = tmp_path / "trials"
    report = cli.run_match(
        str(game_dir / "tictactoe.lud"),
        cli.parse_agent("random:1:1"),
        cli.parse_agent("random:1:2"),
        games=6,
        base_seed=1,
        out_dir=str(out),
    )
    assert report.games_played == 6
    assert report.wins_a + report.wins_b + report.draws == 6
    assert [r.seed for r in report.per_game] == [1, 2, 3, 4, 5, 6]
    assert [r.first for r in report.per_game] == ["a", "b", "a", "b", "a", "b"]
    files = sorted(out.glob("*.trial.json"))
    assert len(files) == 6
    # every trial replays to its recorded final status
    game = load_game(game_text("tictactoe"))
    for path, record in zip(files, report.per_game):
        trial = engine.load_trial(path.read_bytes())
        final = engine.replay_trial(game, trial)
        assert final.status == trial.final_status
        assert len(trial.moves) == record.move_count


def test_single_game_match(game_dir, tmp_path):
    report = cli.run_match(
        str(game_dir / "tictactoe.lud"),
        cli.parse_agent("random"),
        cli.parse_agent("random"),
        games=1,
        base_seed=5,
        out_dir=str(tmp_path / "t"),
    )
    assert report.games_played == 1
    assert report.wins_a + report.wins_b + report.draws == 1
    assert len(list((tmp_path / "t").glob("*.trial.json"))) == 1


def test_report_body_is_deterministic(game_dir, tmp_path):
    def run(out):
        return cli.run_match(
            str(game_dir / "gomoku-9.lud"),
            cli.parse_agent("mcts:50:3"),
            cli.parse_agent("random:1:4"),
            games=2,
            base_seed=9,
            out_dir=str(out),
        ).to_text()

    a = run(tmp_path / "a")
    b = run(tmp_path / "b")
    assert a.replace(str(tmp_path / "a"), "OUT") == b.replace(str(tmp_path / "b"), "OUT")


def test_play_command_exit_zero(game_dir, tmp_path, capsys):
    code = cli.main(
        [
            "play",
            "--game", str(game_dir / "tictactoe.lud"),
            "--agent-a", "random:1:1",
            "--agent-b", "random:1:2",
            "--games", "2",
            "--seed", "3",
            "--out-dir", str(tmp_path / "out"),
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "game: TicTacToe" in captured.out
    assert "wins-a:" in captured.out
    assert "elapsed-seconds:" in captured.err
    assert "elapsed" not in captured.out


def test_compile_failure_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.lud"
    bad.write_text('(game "X" (mode 3))', "utf-8")
    code = cli.main(
        ["play", "--game", str(bad), "--agent-a", "random", "--agent-b", "random"]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exit_status(capsys):
    code = cli.main(["check", "--game", "/nonexistent/nope.lud"])
    assert code == 2


def test_bench_smoke(game_dir, capsys):
    code = cli.main(
        ["bench", "--game", str(game_dir / "tictactoe.lud"), "--seconds", "0.2"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "game: TicTacToe" in out
    rate = float(out.split("playouts-per-second: ")[1].strip())
    assert rate > 0


def test_check_reports_size_and_qr_fit(game_dir, capsys):
    code = cli.main(["check", "--game", str(game_dir / "gomoku.lud")])
    out = capsys.readouterr().out
    assert code == 0
    assert "game: Gomoku" in out
    size = int(out.split("formatted-bytes: ")[1].split("\n")[0])
    assert 0 < size <= 2953
    assert "qr-fit: yes" in out


def test_check_warns_over_qr_limit(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(cli, "QR_BYTE_LIMIT", 64)
    path = tmp_path / "gomoku.lud"
    path.write_text(game_text("gomoku"), "utf-8")
    code = cli.main(["check", "--game", str(path)])
    out = capsys.readouterr().out
    assert code == 0  # soft lint never fails the compile
    assert "qr-fit: NO" in out


def test_trial_files_are_valid_documents(game_dir, tmp_path):
    cli.run_match(
        str(game_dir / "amazons.lud"),
        cli.parse_agent("random:1:1"),
        cli.parse_agent("random:1:2"),
        games=1,
        base_seed=1,
        out_dir=str(tmp_path / "tr"),
    )
    (path,) = (tmp_path / "tr").glob("*.trial.json")
    doc = json.loads(path.read_text())
    assert set(doc) == {"game", "side", "seed", "moves", "finalStatus"}
    assert doc["game"] == "Amazons"
    assert doc["side"] == 10
