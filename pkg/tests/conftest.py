import threading

import pytest

from micro_ludii import server
from micro_ludii.games import game_text
from micro_ludii.lang import load_game


@pytest.fixture(scope="session")
def gomoku():
    return load_game(game_text("gomoku"))


@pytest.fixture(scope="session")
def gomoku9():
    return load_game(game_text("gomoku-9"))


@pytest.fixture(scope="session")
def tictactoe():
    return load_game(game_text("tictactoe"))


@pytest.fixture(scope="session")
def amazons():
    return load_game(game_text("amazons"))


@pytest.fixture()
def live_server():
    srv = server.create_server("127.0.0.1", 0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    host, port = srv.server_address[:2]
    try:
        yield f"http://{host}:{port}"
    finally:
        srv.shutdown()
        srv.server_close()
        thread.join(timeout=5)
