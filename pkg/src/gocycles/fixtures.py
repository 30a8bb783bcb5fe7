"""Committed game records and reference boards.

Each fixture is a full game (or board) transcribed onto the deterministic
ids produced by the cactus builder.  The JSON files under ``fixtures/`` are
generated from the definitions here (``write_fixture_files``) and committed;
every file notes which join positions were chosen, since gluing the same
cycles at different positions yields non-isomorphic boards.

Replay file schema: ``{"board": <board json>, "moves": [{"edge": e,
"direction": "F"|"B"}, ...], "expect": {...}}`` -- ``board`` may instead be
``{"cactus": <spec>}`` or ``{"cycle": n}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .board import (Board, CactusSpec, Cell, Edge, Vertex, board_from_dict,
                    board_to_dict, build_cactus, make_cycle_board)
from .rules import Move


@dataclass(frozen=True)
class Fixture:
    name: str
    note: str
    spec: Optional[CactusSpec]
    moves: tuple[tuple[int, str], ...]
    expect: Optional[dict] = None
    board_literal: Optional[dict] = None

    def board(self) -> Board:
        if self.spec is not None:
            return build_cactus(self.spec)
        assert self.board_literal is not None
        return board_from_dict(self.board_literal)

    def move_list(self) -> list[Move]:
        return [Move.from_dict({"edge": e, "direction": d}) for e, d in self.moves]


def k4_board() -> Board:
    """Complete graph on 4 vertices with its three bounded triangular cells."""
    vertices = [Vertex(0, 0.0, 0.0), Vertex(1, 0.0, 1.0),
                Vertex(2, -1.0, -0.7), Vertex(3, 1.0, -0.7)]
    edges = [Edge(0, 0, 1), Edge(1, 0, 2), Edge(2, 0, 3),
             Edge(3, 1, 2), Edge(4, 1, 3), Edge(5, 2, 3)]
    cells = [Cell(0, (0, 1, 2)), Cell(1, (0, 3, 1)), Cell(2, (0, 2, 3))]
    return Board(vertices, edges, cells)


def two_cycle_spec(m: int, n: int) -> CactusSpec:
    return CactusSpec((m, n), ((0, 0, 1, 0),))


def odd_chain_spec() -> CactusSpec:
    """Five-, nine- and seven-cycle chain; the middle cycle carries the side
    cycles at positions 7 and 3 so its lone degree-respecting reflection swaps
    the two join vertices."""
    return CactusSpec((5, 9, 7), ((1, 7, 0, 0), (1, 3, 2, 0)))


def even_chain_spec() -> CactusSpec:
    """Like :func:`odd_chain_spec` with an eight-cycle in the middle; joins at
    positions 6 and 2 sit diametrically opposite, so vertex-fixing reflections
    exist and no self-involutive edge appears on the middle cycle."""
    return CactusSpec((5, 8, 7), ((1, 6, 0, 0), (1, 2, 2, 0)))


def uncovered_join_spec() -> CactusSpec:
    """Four cycles where one degree-4 vertex cannot lie on any
    degree-respecting reflection axis (the fourth cycle hangs off the
    seven-cycle, dragging its axis away from the seven/nine join)."""
    return CactusSpec((5, 9, 7, 5),
                      ((1, 7, 0, 0), (1, 3, 2, 0), (2, 6, 3, 0)))


def repaired_join_spec() -> CactusSpec:
    """The board of :func:`uncovered_join_spec` with an extra seven-cycle
    attached, which shifts the inner seven-cycle's axis back through the
    previously uncovered join vertex."""
    return CactusSpec((5, 9, 7, 5, 7),
                      ((1, 7, 0, 0), (1, 3, 2, 0), (2, 6, 3, 0), (2, 1, 4, 0)))


def uncovered_join_vertex() -> int:
    """The join vertex no axis can cover on the uncovered-join board."""
    return 8


def uncovered_join_drawn_axes(board: Board):
    """The hand-picked per-cycle axes for the uncovered-join board: each
    five-cycle reflects through its own join, the nine-cycle through the
    vertex opposite its joins (pairing them), and the seven-cycle through
    the vertex opposite its join-join edge.  Partnering degrees respect
    Property 1 but the nine/seven join vertex lies on no axis."""
    from .symmetry import axis_with_fixed_vertex, make_axis_set
    return make_axis_set(board, {
        0: axis_with_fixed_vertex(board, 0, 0),
        1: axis_with_fixed_vertex(board, 1, 10),
        2: axis_with_fixed_vertex(board, 2, 15),
        3: axis_with_fixed_vertex(board, 3, 18),
    })


def uncovered_join_breaking_line() -> list[Move]:
    """Opponent line that drives the mmr strategy into dictating a sink at
    the uncovered join vertex (the strategy's replies are interleaved by the
    session; these are the first player's moves only)."""
    return [Move.from_dict(m) for m in (
        {"edge": 20, "direction": "B"},   # into the join from the seven-cycle
        {"edge": 14, "direction": "B"},   # second arrow into the join
        {"edge": 7, "direction": "F"},    # third arrow into the join
        {"edge": 11, "direction": "F"},   # mirror of this dictates the fourth
    )]


FIXTURES: dict[str, Fixture] = {}


def _add(fixture: Fixture) -> None:
    FIXTURES[fixture.name] = fixture


_add(Fixture(
    name="two-odd-cycles-game",
    note="Five- and seven-cycle joined at vertex 0 (both cycles at position "
         "0).  Ten recorded moves; the mirroring side dodges a death move "
         "via the seven-cycle's axis-fixed edge and completes the five-cycle.",
    spec=two_cycle_spec(5, 7),
    moves=((0, "B"), (4, "F"), (6, "F"), (10, "F"), (9, "F"),
           (7, "F"), (1, "B"), (8, "F"), (3, "B"), (2, "B")),
    expect={"result": "cycle", "winner": 2, "moves": 10, "cell": 0},
))

_add(Fixture(
    name="three-cycles-odd-si-game",
    note="Chain of cycles 5-9-7 (three axis-fixed edges).  Player 1 opens on "
         "the middle cycle's axis-fixed edge and mirrors thereafter, winning "
         "by completing the nine-cycle on move 17.",
    spec=odd_chain_spec(),
    moves=((5, "F"), (10, "F"), (9, "F"), (11, "B"), (8, "F"), (12, "F"),
           (7, "F"), (0, "B"), (4, "F"), (1, "B"), (17, "F"), (15, "B"),
           (19, "B"), (14, "B"), (20, "F"), (13, "B"), (6, "F")),
    expect={"result": "cycle", "winner": 1, "moves": 17, "cell": 1},
))

_add(Fixture(
    name="three-cycles-even-si-game",
    note="Chain of cycles 5-8-7 (two axis-fixed edges).  Player 2 mirrors "
         "throughout, absorbs the death threat on the five-cycle by pairing "
         "the two axis-fixed edges, and completes the eight-cycle on move 16.",
    spec=even_chain_spec(),
    moves=((9, "F"), (8, "F"), (10, "B"), (7, "F"), (11, "F"), (6, "F"),
           (0, "B"), (4, "F"), (1, "B"), (16, "F"), (14, "B"), (18, "B"),
           (13, "B"), (19, "F"), (5, "F"), (12, "B")),
    expect={"result": "cycle", "winner": 2, "moves": 16, "cell": 1},
))

_add(Fixture(
    name="triangle-reply-on-triangle-game",
    note="Triangle plus five-cycle joined at vertex 0.  The second player's "
         "first reply lands on the triangle, so the first player feeds a "
         "third arrow into the join and wins by making the last move.",
    spec=two_cycle_spec(3, 5),
    moves=((0, "B"), (2, "B"), (3, "B"), (6, "F"), (4, "B")),
    expect={"result": "last_move", "winner": 1, "moves": 5},
))

_add(Fixture(
    name="triangle-reply-near-join-game",
    note="Triangle plus five-cycle.  The second player's first reply touches "
         "the join's neighbourhood on the big cycle; the first player "
         "mirrors it across the join and later completes the five-cycle.",
    spec=two_cycle_spec(3, 5),
    moves=((0, "B"), (3, "F"), (7, "B"), (5, "F"), (2, "B"), (6, "F"), (4, "F")),
    expect={"result": "cycle", "winner": 1, "moves": 7, "cell": 1},
))

_add(Fixture(
    name="triangle-reply-far-game",
    note="Triangle plus five-cycle.  The second player's first reply stays "
         "far from the join; the first player locks the triangle and "
         "saturates the join, winning by the last move.",
    spec=two_cycle_spec(3, 5),
    moves=((0, "B"), (5, "B"), (2, "B"), (3, "F"), (7, "B")),
    expect={"result": "last_move", "winner": 1, "moves": 5},
))

_add(Fixture(
    name="k4-board",
    note="Complete graph on four vertices with three bounded triangular "
         "cells; not a cactus (edges shared between cells).",
    spec=None,
    moves=(),
    expect=None,
    board_literal=board_to_dict(k4_board()),
))


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def get_fixture(name: str) -> Fixture:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return FIXTURES[name]


def fixture_to_replay_doc(fixture: Fixture) -> dict:
    doc: dict = {"name": fixture.name, "note": fixture.note}
    if fixture.spec is not None:
        doc["generator"] = {"cactus": fixture.spec.to_dict()}
    doc["board"] = board_to_dict(fixture.board())
    doc["moves"] = [{"edge": e, "direction": d} for e, d in fixture.moves]
    if fixture.expect is not None:
        doc["expect"] = fixture.expect
    return doc


def write_fixture_files(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in fixture_names():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(fixture_to_replay_doc(FIXTURES[name]), indent=2) + "\n")
        written.append(path)
    return written


def packaged_fixture_path(name: str) -> Path:
    return Path(str(resources.files("gocycles") / "fixtures" / f"{name}.json"))


def load_replay_file(path: Path | str) -> tuple[Board, list[Move], Optional[dict], str]:
    """Load a replay document: (board, moves, expectation, name)."""
    doc = json.loads(Path(path).read_text())
    board_doc = doc.get("board")
    if board_doc is None:
        raise ValueError("replay file lacks a board")
    if "cactus" in board_doc:
        board = build_cactus(CactusSpec.from_dict(board_doc["cactus"]))
    elif "cycle" in board_doc:
        board = make_cycle_board(int(board_doc["cycle"]))
    else:
        board = board_from_dict(board_doc)
    moves = [Move.from_dict(m) for m in doc.get("moves", [])]
    return board, moves, doc.get("expect"), doc.get("name", Path(path).stem)
