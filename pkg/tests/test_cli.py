from __future__ import annotations

import json

from gocycles.cli import main
from gocycles.fixtures import packaged_fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_gen_cycle(capsys):
    code, out = run(capsys, "gen", "cycle", "5")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 5
    assert len(doc["edges"]) == 5
    assert len(doc["cells"]) == 1


def test_gen_cactus_inline(capsys):
    code, out = run(capsys, "gen", "cactus", '{"cycles":[5,7],"joins":[[0,0,1,0]]}')
    assert code == 0
    assert len(json.loads(out)["edges"]) == 12


def test_solve_with_generator(capsys):
    code, out = run(capsys, "solve", "--gen",
                    'cactus:{"cycles":[3,5],"joins":[[0,0,1,0]]}')
    assert code == 0
    doc = json.loads(out)
    assert doc["winner"] == 1
    assert doc["best_move"] is not None


def test_solve_deterministic_output(capsys):
    _, first = run(capsys, "solve", "--gen", "cycle:6")
    _, second = run(capsys, "solve", "--gen", "cycle:6")
    assert first == second


def test_symmetry_output(capsys):
    code, out = run(capsys, "symmetry", "--gen",
                    'cactus:{"cycles":[5,9,7],"joins":[[1,7,0,0],[1,3,2,0]]}')
    assert code == 0
    doc = json.loads(out)
    assert doc["si_parity"] == "ODD"
    assert len(doc["axis_set"]["si_edges"]) == 3
    assert doc["involutions"] is None  # guarded: 19 vertices


def test_verify_suite_exit_code(capsys):
    code, out = run(capsys, "verify", "cycle-parity")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 7
    assert all(l["result"] == "PROVED" for l in lines)
    assert lines[0]["claim"] == "cycle-parity:n=3"


def test_verify_deterministic_output(capsys):
    _, first = run(capsys, "verify", "unmarkable")
    _, second = run(capsys, "verify", "unmarkable")
    assert first == second


def test_replay_packaged_fixture(capsys):
    code, out = run(capsys, "replay", "two-odd-cycles-game")
    assert code == 0
    assert json.loads(out)["result"] == "PROVED"


def test_replay_path(capsys):
    path = packaged_fixture_path("three-cycles-odd-si-game")
    code, out = run(capsys, "replay", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["winner"] == 1 and doc["moves"] == 17


def test_replay_missing_file(capsys):
    assert main(["replay", "definitely-not-here.json"]) == 2


def test_usage_error_board_required(capsys):
    assert main(["solve"]) == 2


def test_gen_bad_spec(capsys):
    assert main(["gen", "cactus", '{"cycles":[2]}']) == 2
