"""Command line entry point: generators, solver, symmetry analysis,
verification suites, fixture replay, and the HTTP server.

Exit codes: 0 on success (all claims PROVED), 1 on a refuted claim or a
failed replay, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .board import (Board, BoardError, CactusSpec, InvalidSpecError,
                    board_to_dict, build_cactus, make_cycle_board, parse_board)
from .rules import Position, replay
from .solver import solve_board
from .symmetry import (UnsupportedBoardError, find_involutions, select_axis_set,
                       si_parity_invariance_check)
from . import fixtures as fx
from . import verify as verify_mod


def _board_from_gen(spec: str) -> Board:
    kind, _, rest = spec.partition(":")
    if kind == "cycle":
        return make_cycle_board(int(rest))
    if kind == "cactus":
        if rest.startswith("@"):
            rest = Path(rest[1:]).read_text()
        return build_cactus(CactusSpec.from_dict(json.loads(rest)))
    raise ValueError(f"unknown generator {spec!r} (use cycle:N or cactus:JSON)")


def _load_board(args) -> Board:
    if getattr(args, "board", None):
        return parse_board(Path(args.board).read_text())
    if getattr(args, "gen", None):
        return _board_from_gen(args.gen)
    raise ValueError("a board is required: pass --board FILE or --gen SPEC")


def _emit(doc, out: Optional[str]) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_gen(args) -> int:
    if args.kind == "cycle":
        board = make_cycle_board(int(args.arg))
    else:
        text = args.arg
        if text.startswith("@") or Path(text).exists():
            text = Path(text.lstrip("@")).read_text()
        board = build_cactus(CactusSpec.from_dict(json.loads(text)))
    _emit(board_to_dict(board), args.out)
    return 0


def _cmd_solve(args) -> int:
    board = _load_board(args)
    result = solve_board(board, args.budget, threads=args.threads)
    _emit(result.to_dict(), args.out)
    return 0 if not result.budget_exhausted else 1


def _cmd_symmetry(args) -> int:
    board = _load_board(args)
    doc: dict = {"vertices": board.n_vertices, "edges": board.n_edges,
                 "cells": board.n_cells}
    try:
        involutions = find_involutions(board)
        doc["involutions"] = [inv.to_dict() for inv in involutions]
    except UnsupportedBoardError as exc:
        doc["involutions"] = None
        doc["involutions_note"] = str(exc)
    try:
        axes = select_axis_set(board)
        doc["axis_set"] = axes.to_dict() if axes else None
        doc["si_parity"] = axes.si_parity if axes else None
        if args.enumerate and axes is not None:
            doc["parity_invariance"] = si_parity_invariance_check(board).to_dict()
    except UnsupportedBoardError as exc:
        doc["axis_set"] = None
        doc["axis_note"] = str(exc)
    _emit(doc, args.out)
    return 0


def _strip_notes(doc: dict) -> dict:
    doc.pop("notes", None)
    return doc


def _cmd_verify(args) -> int:
    reports = verify_mod.run_suite(args.suite, budget=args.budget,
                                   seed=args.seed, playouts=args.playouts)
    lines = [json.dumps(_strip_notes(r.to_dict()), sort_keys=True) for r in reports]
    text = "\n".join(lines)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    bad = [r for r in reports if not r.ok]
    for r in bad:
        print(f"refuted: {r.claim}", file=sys.stderr)
    return 0 if not bad else 1


def _cmd_replay(args) -> int:
    path = Path(args.fixture)
    if not path.exists():
        candidate = fx.packaged_fixture_path(args.fixture)
        if candidate.exists():
            path = candidate
        else:
            print(f"no such fixture file or name: {args.fixture}", file=sys.stderr)
            return 2
    board, moves, expect, name = fx.load_replay_file(path)
    if expect is None:
        state = replay(board, moves)
        over = Position.from_state(state).outcome()
        _emit({"name": name, "moves": len(moves), "outcome": over.kind.name,
               "winner": over.winner}, args.out)
        return 0
    report = verify_mod.replay_fixture_data(name, board, moves, expect)
    _emit(report.to_dict(), args.out)
    return 0 if report.ok else 1


def _cmd_serve(args) -> int:
    import uvicorn
    from .server import create_app
    data_dir = args.data_dir or os.environ.get("GOC_DATA_DIR")
    app = create_app(Path(data_dir) if data_dir else None, cors=args.cors)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goc",
        description="Game of Cycles: generators, solver, symmetry analysis, "
                    "strategy verification, replay, and game server.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a board as JSON")
    p.add_argument("kind", choices=("cycle", "cactus"))
    p.add_argument("arg", help="cycle length, inline cactus JSON, or @spec-file")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    def board_opts(p):
        p.add_argument("--board", help="board JSON file")
        p.add_argument("--gen", help="generator spec: cycle:N or cactus:JSON|cactus:@file")

    p = sub.add_parser("solve", help="winner and best move by exhaustive search")
    board_opts(p)
    p.add_argument("--budget", type=int, default=None, help="node limit")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("symmetry", help="involutions, axis set and parity")
    board_opts(p)
    p.add_argument("--enumerate", action="store_true",
                   help="also enumerate all valid axis sets")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_symmetry)

    p = sub.add_parser("verify", help="run a verification suite (JSONL report)")
    p.add_argument("suite", nargs="?", default="all",
                   choices=verify_mod.SUITE_NAMES)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--playouts", type=int, default=100_000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("replay", help="replay a fixture file or packaged fixture")
    p.add_argument("fixture", help="path to a replay JSON, or a packaged fixture name")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("serve", help="run the HTTP game server")
    p.add_argument("--port", type=int, default=8737)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="session snapshot directory (or GOC_DATA_DIR)")
    p.add_argument("--cors", action="store_true", help="enable permissive CORS (dev)")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BoardError, InvalidSpecError, UnsupportedBoardError, ValueError,
            OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
