"""HTTP/JSON game service backing the web client.

Sessions live in memory; every mutation snapshots ``{board, history, engine,
engine_role}`` to the data directory, and on boot snapshots are reloaded by
replaying the history through the rule kernel, so stored state can never
desynchronize from the rules.  Per-session mutations are serialized with a
lock; views are plain dicts rebuilt from the immutable state.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .board import Board, BoardError, CactusSpec, InvalidSpecError, board_from_dict, \
    board_to_dict, build_cactus, make_cycle_board
from .rules import (Direction, GameState, Move, RuleViolation, apply_move,
                    edge_status, new_game, outcome, vertex_status)
from .solver import outcome_labels
from .strategy import (StrategyFailure, StrategyInapplicable, StrategyKind,
                       StrategySession, new_session, next_move)

ANALYSIS_BUDGET = 2_000_000


@dataclass
class GameSession:
    id: str
    board: Board
    state: GameState
    engine: Optional[StrategyKind]
    engine_role: int
    engine_session: Optional[StrategySession]
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    def __init__(self, data_dir: Optional[Path]):
        self.data_dir = data_dir
        self.sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        if data_dir is not None:
            data_dir.mkdir(parents=True, exist_ok=True)
            self._restore()

    def _restore(self) -> None:
        assert self.data_dir is not None
        for path in sorted(self.data_dir.glob("*.json")):
            try:
                doc = json.loads(path.read_text())
                board = board_from_dict(doc["board"])
                engine = StrategyKind(doc["engine"]) if doc.get("engine") else None
                engine_role = int(doc.get("engine_role") or 2)
                state = new_game(board)
                for move_doc in doc.get("history", []):
                    state = apply_move(state, Move.from_dict(move_doc))
                engine_session = (new_session(board, engine, engine_role)
                                  if engine else None)
                self.sessions[path.stem] = GameSession(
                    path.stem, board, state, engine, engine_role, engine_session)
            except Exception:
                continue  # a corrupt snapshot must not block boot

    def persist(self, session: GameSession) -> None:
        if self.data_dir is None:
            return
        doc = {
            "board": board_to_dict(session.board),
            "history": [m.to_dict() for m in session.state.history],
            "engine": session.engine.value if session.engine else None,
            "engine_role": session.engine_role,
        }
        (self.data_dir / f"{session.id}.json").write_text(json.dumps(doc))

    def create(self, board: Board, engine: Optional[StrategyKind],
               engine_role: int) -> GameSession:
        engine_session = new_session(board, engine, engine_role) if engine else None
        session = GameSession(secrets.token_hex(16), board, new_game(board),
                              engine, engine_role, engine_session)
        with self._lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> GameSession:
        session = self.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown game id")
        return session


def _status_doc(state: GameState) -> dict:
    over = outcome(state)
    return {"kind": over.kind.name, "winner": over.winner, "cell": over.cell}


def _view(session: GameSession) -> dict:
    state = session.state
    board = session.board
    letters = {0: "U", 1: "F", 2: "B"}
    edges = []
    for e in range(board.n_edges):
        st = edge_status(state, e)
        edges.append({
            "id": e,
            "mark": letters[state.marks[e]],
            "markable": st.markable,
            "currently_playable": st.currently_playable,
            "directions": {
                d.as_letter(): {
                    "legal": st.legal[d],
                    "completes": st.completes_cycle[d],
                    "death": st.death[d],
                } for d in (Direction.FORWARD, Direction.BACKWARD)
            },
        })
    vertices = []
    for v in range(board.n_vertices):
        st = vertex_status(state, v)
        vertices.append({
            "id": v, "in": st.in_count, "out": st.out_count,
            "unmarked": st.unmarked_count,
            "sink": st.is_sink, "source": st.is_source,
            "almost_sink": st.is_almost_sink, "almost_source": st.is_almost_source,
        })
    return {
        "id": session.id,
        "board": board_to_dict(board),
        "marks": [letters[m] for m in state.marks],
        "history": [m.to_dict() for m in state.history],
        "to_move": state.player_to_move,
        "status": _status_doc(state),
        "engine": session.engine.value if session.engine else None,
        "engine_role": session.engine_role if session.engine else None,
        "edges": edges,
        "vertices": vertices,
    }


def _board_from_request(doc: dict) -> Board:
    try:
        if "board" in doc and doc["board"] is not None:
            return board_from_dict(doc["board"])
        if "cactus" in doc and doc["cactus"] is not None:
            return build_cactus(CactusSpec.from_dict(doc["cactus"]))
        if "cycle" in doc and doc["cycle"] is not None:
            return make_cycle_board(int(doc["cycle"]))
    except (BoardError, InvalidSpecError, ValueError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"invalid board: {exc}")
    raise HTTPException(status_code=400,
                        detail="request needs one of: board, cactus, cycle")


def _engine_move(session: GameSession) -> Optional[dict]:
    """Apply the engine's reply if the game is ongoing and it is its turn."""
    state = session.state
    if session.engine_session is None or outcome(state).is_over:
        return None
    if state.player_to_move != session.engine_role:
        return None
    move = next_move(session.engine_session, state)
    session.state = apply_move(state, move)
    return move.to_dict()


def create_app(data_dir: Optional[Path] = None, cors: bool = False) -> FastAPI:
    app = FastAPI(title="Game of Cycles server")
    store = SessionStore(data_dir)
    app.state.store = store

    if cors:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=["*"],
                           allow_methods=["*"], allow_headers=["*"])

    @app.post("/api/games")
    def create_game(doc: dict):
        board = _board_from_request(doc)
        engine = None
        if doc.get("engine"):
            try:
                engine = StrategyKind(doc["engine"])
            except ValueError:
                raise HTTPException(status_code=400,
                                    detail=f"unknown engine {doc['engine']!r}")
        engine_role = int(doc.get("engine_role") or 2)
        if engine_role not in (1, 2):
            raise HTTPException(status_code=400, detail="engine_role must be 1 or 2")
        try:
            session = store.create(board, engine, engine_role)
        except StrategyInapplicable as exc:
            raise HTTPException(status_code=422,
                                detail=f"strategy inapplicable: {exc.reason}")
        with session.lock:
            reply = None
            if engine is not None and engine_role == 1:
                reply = _engine_move(session)
            store.persist(session)
            view = _view(session)
        body = {"id": session.id, "view": view}
        if reply is not None:
            body["engine_reply"] = reply
        return JSONResponse(body, status_code=201)

    @app.get("/api/games/{game_id}")
    def get_game(game_id: str):
        session = store.get(game_id)
        with session.lock:
            return _view(session)

    @app.post("/api/games/{game_id}/moves")
    def post_move(game_id: str, doc: dict):
        session = store.get(game_id)
        try:
            move = Move.from_dict(doc)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=f"malformed move: {exc}")
        with session.lock:
            state = session.state
            if outcome(state).is_over:
                raise HTTPException(status_code=409, detail="game is finished")
            if session.engine is not None and \
                    state.player_to_move == session.engine_role:
                raise HTTPException(status_code=409, detail="not your turn")
            if not (0 <= move.edge < session.board.n_edges):
                raise HTTPException(status_code=422,
                                    detail=f"edge {move.edge} out of range")
            try:
                session.state = apply_move(state, move)
            except RuleViolation as exc:
                raise HTTPException(status_code=422, detail={
                    "violation": exc.constraint,
                    "vertex": exc.vertex,
                    "move": move.to_dict(),
                })
            engine_reply = None
            engine_error = None
            try:
                engine_reply = _engine_move(session)
            except StrategyFailure as exc:
                engine_error = str(exc)
            store.persist(session)
            body = {"view": _view(session)}
            if engine_reply is not None:
                body["engine_reply"] = engine_reply
            if engine_error is not None:
                body["engine_error"] = engine_error
            return body

    @app.get("/api/games/{game_id}/analysis")
    def get_analysis(game_id: str, budget: int = ANALYSIS_BUDGET):
        session = store.get(game_id)
        with session.lock:
            state = session.state
            status = _status_doc(state)
            if outcome(state).is_over:
                return {"status": status, "move_labels": None,
                        "winner_from_here": None, "nodes": 0,
                        "budget_exhausted": False}
            labels = outcome_labels(state, budget)
            doc = labels.to_dict()
            winner = None
            if not labels.budget_exhausted:
                mover = state.player_to_move
                winner = mover if any(v == "WINNING" for v in labels.labels.values()) \
                    else (2 if mover == 1 else 1)
            return {"status": status, "move_labels": doc["labels"],
                    "winner_from_here": winner, "nodes": doc["nodes"],
                    "budget_exhausted": doc["budget_exhausted"]}

    webui_dir = Path(__file__).parent / "webui"
    if webui_dir.exists():
        app.mount("/", StaticFiles(directory=str(webui_dir), html=True),
                  name="webui")
    else:
        @app.get("/")
        def index():
            return JSONResponse({"name": "Game of Cycles server",
                                 "api": "/api/games"})

    return app
