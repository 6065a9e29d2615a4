import json

import pytest

from micro_ludii import engine
from micro_ludii.engine import MalformedTrial, Move, Trial


def test_round_trip_gomoku_trial(gomoku9):
    _final, trial = engine.playout_random(gomoku9, engine.initial_state(gomoku9), 42)
    data = engine.save_trial(trial)
    assert engine.load_trial(data) == trial


def test_round_trip_amazons_trial(amazons):
    _final, trial = engine.playout_random(amazons, engine.initial_state(amazons), 7)
    data = engine.save_trial(trial)
    loaded = engine.load_trial(data)
    assert loaded == trial
    assert any(m.kind == engine.SLIDE and m.from_site is not None for m in loaded.moves)


def test_field_names_are_pinned(gomoku9):
    _final, trial = engine.playout_random(gomoku9, engine.initial_state(gomoku9), 1)
    doc = json.loads(engine.save_trial(trial))
    assert set(doc) == {"game", "side", "seed", "moves", "finalStatus"}
    assert set(doc["moves"][0]) == {"kind", "piece", "to"}


def test_truncated_bytes_are_malformed(gomoku9):
    _final, trial = engine.playout_random(gomoku9, engine.initial_state(gomoku9), 3)
    data = engine.save_trial(trial)
    with pytest.raises(MalformedTrial):
        engine.load_trial(data[: len(data) // 2])


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("seed"),
        lambda d: d.pop("finalStatus"),
        lambda d: d.update(side="ten"),
        lambda d: d["moves"].append({"kind": "hop", "piece": "Ball1", "to": 0}),
        lambda d: d["moves"].append({"kind": "slide", "piece": "Queen1", "to": 0}),
        lambda d: d["moves"].append({"kind": "place", "piece": "Ball1", "from": 1, "to": 0}),
        lambda d: d.update(finalStatus={"kind": "win", "player": 9}),
        lambda d: d.update(finalStatus={"kind": "sideways"}),
    ],
)
def test_schema_violations_are_malformed(gomoku9, mutate):
    _final, trial = engine.playout_random(gomoku9, engine.initial_state(gomoku9), 5)
    doc = json.loads(engine.save_trial(trial))
    mutate(doc)
    with pytest.raises(MalformedTrial):
        engine.load_trial(json.dumps(doc).encode())


def test_not_even_json():
    with pytest.raises(MalformedTrial):
        engine.load_trial(b"\xff\xfe garbage")
    with pytest.raises(MalformedTrial):
        engine.load_trial(b"[1, 2, 3]")


@pytest.mark.parametrize("seed", [0, 11, 202])
def test_replay_reproduces_the_playout_exactly(gomoku9, seed):
    final, trial = engine.playout_random(gomoku9, engine.initial_state(gomoku9), seed)
    replayed = engine.replay_trial(gomoku9, engine.load_trial(engine.save_trial(trial)))
    assert replayed == final
    assert replayed.status == trial.final_status


@pytest.mark.parametrize("seed", [0, 9])
def test_replay_amazons_trials(amazons, seed):
    final, trial = engine.playout_random(amazons, engine.initial_state(amazons), seed)
    replayed = engine.replay_trial(amazons, trial)
    assert replayed == final
    assert replayed.status == trial.final_status


def test_trial_metadata(gomoku9):
    final, trial = engine.playout_random(gomoku9, engine.initial_state(gomoku9), 77)
    assert trial.game == "Gomoku-9"
    assert trial.side == 9
    assert trial.seed == 77
    assert trial.final_status == final.status


def test_handcrafted_trial_round_trip():
    trial = Trial(
        "Amazons",
        10,
        12345678901234567890 % (2**64),
        (Move("slide", "Queen1", 30, 41), Move("shoot", "Dot0", None, 52)),
        engine.ONGOING,
    )
    assert engine.load_trial(engine.save_trial(trial)) == trial
