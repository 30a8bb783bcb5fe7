from __future__ import annotations

import json

import pytest

from gocycles.fixtures import (FIXTURES, fixture_names, get_fixture,
                               load_replay_file, packaged_fixture_path)
from gocycles.verify import replay_fixture_data


@pytest.mark.parametrize("name", [n for n in fixture_names()
                                  if FIXTURES[n].moves])
def test_packaged_fixture_files_replay(name):
    path = packaged_fixture_path(name)
    assert path.exists(), f"fixture file missing: {path}"
    board, moves, expect, loaded_name = load_replay_file(path)
    assert loaded_name == name
    assert expect is not None
    report = replay_fixture_data(name, board, moves, expect)
    assert report.ok, report.wall_notes


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_files_match_definitions(name):
    """The committed JSON stays in sync with the builder output."""
    fixture = get_fixture(name)
    doc = json.loads(packaged_fixture_path(name).read_text())
    from gocycles.board import board_from_dict
    assert board_from_dict(doc["board"]) == fixture.board()
    assert [(m["edge"], m["direction"]) for m in doc["moves"]] == list(fixture.moves)


def test_unknown_fixture_name():
    with pytest.raises(KeyError):
        get_fixture("no-such-game")


def test_replay_file_with_generator(tmp_path):
    doc = {"board": {"cycle": 4},
           "moves": [{"edge": 0, "direction": "F"}]}
    path = tmp_path / "replay.json"
    path.write_text(json.dumps(doc))
    board, moves, expect, name = load_replay_file(path)
    assert board.n_edges == 4
    assert len(moves) == 1 and expect is None
