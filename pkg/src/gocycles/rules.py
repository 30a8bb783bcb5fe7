"""Rule kernel for the Game of Cycles.

Players alternate marking unmarked edges with an arrow, subject to the
sink-source rule: no vertex may end up with all incident edges pointing in
(a sink) or all pointing out (a source).  The first player to complete a
cycle cell (all boundary edges marked coherently clockwise or
counterclockwise) or to make the last possible move wins.

Everything here is a pure function of (state, inputs); states are values and
safe to share.  :class:`Position` is the mutable play-out cursor the solver,
strategies and verification walks use internally, with O(1) push/pop.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Optional, Sequence

from .board import Board


class Direction(IntEnum):
    FORWARD = 1   # u -> v of the canonical edge
    BACKWARD = 2  # v -> u

    @property
    def opposite(self) -> "Direction":
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD

    def as_letter(self) -> str:
        return "F" if self is Direction.FORWARD else "B"

    @staticmethod
    def from_letter(letter: str) -> "Direction":
        if letter in ("F", "f", "forward", "FORWARD"):
            return Direction.FORWARD
        if letter in ("B", "b", "backward", "BACKWARD"):
            return Direction.BACKWARD
        raise ValueError(f"unknown direction {letter!r}")


FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD
UNMARKED = 0


@dataclass(frozen=True, order=True)
class Move:
    edge: int
    direction: Direction

    def to_dict(self) -> dict:
        return {"edge": self.edge, "direction": self.direction.as_letter()}

    @staticmethod
    def from_dict(doc: dict) -> "Move":
        return Move(int(doc["edge"]), Direction.from_letter(str(doc["direction"])))


class RuleViolation(Exception):
    """An attempted move breaks a rule; ``constraint`` names which one."""

    def __init__(self, move: Move, constraint: str, vertex: Optional[int] = None):
        self.move = move
        self.constraint = constraint
        self.vertex = vertex
        at = f" at vertex {vertex}" if vertex is not None else ""
        super().__init__(f"illegal move {move}: {constraint}{at}")


class GameState:
    """Immutable game position: a board plus one mark per edge.

    The player to move is derived from the marked count: Player 1 moves on
    even counts.  ``history`` is optional and used for replay and strategies.
    """

    __slots__ = ("board", "marks", "history")

    def __init__(self, board: Board, marks: Optional[Sequence[int]] = None,
                 history: tuple[Move, ...] = ()):
        self.board = board
        self.marks = tuple(marks) if marks is not None else (UNMARKED,) * board.n_edges
        self.history = history
        if len(self.marks) != board.n_edges:
            raise ValueError("marks vector does not match the board")

    @property
    def marked_count(self) -> int:
        return sum(1 for m in self.marks if m != UNMARKED)

    @property
    def player_to_move(self) -> int:
        return 1 if self.marked_count % 2 == 0 else 2

    @property
    def last_move(self) -> Optional[Move]:
        return self.history[-1] if self.history else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameState):
            return NotImplemented
        return self.board == other.board and self.marks == other.marks

    def __hash__(self) -> int:
        return hash((id(self.board), self.marks))

    def __repr__(self) -> str:
        return f"GameState(marked={self.marked_count}/{len(self.marks)})"


def new_game(board: Board) -> GameState:
    return GameState(board)


@dataclass(frozen=True)
class VertexStatus:
    in_count: int
    out_count: int
    unmarked_count: int
    is_sink: bool
    is_source: bool
    is_almost_sink: bool
    is_almost_source: bool


@dataclass(frozen=True)
class EdgeStatus:
    """Per-direction legality/completion/death flags plus the derived
    markable / unmarkable / currently-playable classification."""

    legal: dict
    completes_cycle: dict
    death: dict
    markable: bool
    unmarkable: bool
    currently_playable: bool


class OutcomeKind(IntEnum):
    ONGOING = 0
    WIN_BY_CYCLE = 1
    WIN_BY_LAST_MOVE = 2


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    winner: Optional[int] = None
    cell: Optional[int] = None

    @property
    def is_over(self) -> bool:
        return self.kind is not OutcomeKind.ONGOING


ONGOING = Outcome(OutcomeKind.ONGOING)


class Position:
    """Mutable cursor over a board with incremental bookkeeping.

    Tracks per-vertex arrow counts and per-cell (marked, walk-aligned)
    counters so legality, completion and death checks are O(1) or O(cells).
    ``push``/``pop`` apply and revert moves without copying.
    """

    __slots__ = ("board", "marks", "in_cnt", "out_cnt", "cell_marked",
                 "cell_aligned", "trail", "_ends", "_deg", "_eca", "_cell_size")

    def __init__(self, board: Board, marks: Optional[Sequence[int]] = None):
        self.board = board
        self.marks = bytearray(board.n_edges) if marks is None else bytearray(marks)
        self._ends = [(e.u, e.v) for e in board.edges]
        self._deg = board.degree
        self._eca = board.edge_cells_aligned
        self._cell_size = [len(c.walk) for c in board.cells]
        self.in_cnt = [0] * board.n_vertices
        self.out_cnt = [0] * board.n_vertices
        self.cell_marked = [0] * board.n_cells
        self.cell_aligned = [0] * board.n_cells
        self.trail: list[tuple[int, int]] = []
        for e, m in enumerate(self.marks):
            if m != UNMARKED:
                self._account(e, m, +1)

    @classmethod
    def from_state(cls, state: GameState) -> "Position":
        return cls(state.board, state.marks)

    def _account(self, edge: int, mark: int, sign: int) -> None:
        u, v = self._ends[edge]
        tail, head = (u, v) if mark == FORWARD else (v, u)
        self.out_cnt[tail] += sign
        self.in_cnt[head] += sign
        for cell, aligned in self._eca[edge]:
            self.cell_marked[cell] += sign
            if (mark == FORWARD) == aligned:
                self.cell_aligned[cell] += sign

    def push(self, edge: int, direction: int) -> None:
        self.marks[edge] = direction
        self._account(edge, direction, +1)
        self.trail.append((edge, direction))

    def pop(self) -> None:
        edge, direction = self.trail.pop()
        self._account(edge, direction, -1)
        self.marks[edge] = UNMARKED

    @property
    def marked_count(self) -> int:
        return sum(1 for m in self.marks if m != UNMARKED)

    @property
    def player_to_move(self) -> int:
        return 1 if self.marked_count % 2 == 0 else 2

    def marks_key(self) -> bytes:
        return bytes(self.marks)

    def is_legal(self, edge: int, direction: int) -> bool:
        if self.marks[edge] != UNMARKED:
            return False
        u, v = self._ends[edge]
        tail, head = (u, v) if direction == FORWARD else (v, u)
        return (self.in_cnt[head] < self._deg[head] - 1
                and self.out_cnt[tail] < self._deg[tail] - 1)

    def illegal_reason(self, edge: int, direction: int) -> tuple[str, Optional[int]]:
        """(constraint, vertex) for an illegal move; raises if the move is legal."""
        if self.marks[edge] != UNMARKED:
            return "edge already marked", None
        u, v = self._ends[edge]
        tail, head = (u, v) if direction == FORWARD else (v, u)
        if self.in_cnt[head] >= self._deg[head] - 1:
            return "sink", head
        if self.out_cnt[tail] >= self._deg[tail] - 1:
            return "source", tail
        raise ValueError("move is legal")

    def completes(self, edge: int, direction: int) -> bool:
        """Would marking (edge, direction) finish a coherent cycle cell?"""
        if self.marks[edge] != UNMARKED:
            return False
        for cell, aligned in self._eca[edge]:
            if self.cell_marked[cell] != self._cell_size[cell] - 1:
                continue
            with_walk = (direction == FORWARD) == aligned
            if with_walk and self.cell_aligned[cell] == self._cell_size[cell] - 1:
                return True
            if not with_walk and self.cell_aligned[cell] == 0:
                return True
        return False

    def completed_cell(self) -> Optional[int]:
        for cell, size in enumerate(self._cell_size):
            if self.cell_marked[cell] == size and \
                    self.cell_aligned[cell] in (0, size):
                return cell
        return None

    def legal_moves(self) -> list[tuple[int, int]]:
        out = []
        for e in range(len(self.marks)):
            if self.marks[e] != UNMARKED:
                continue
            if self.is_legal(e, FORWARD):
                out.append((e, FORWARD))
            if self.is_legal(e, BACKWARD):
                out.append((e, BACKWARD))
        return out

    def has_legal_move(self) -> bool:
        for e in range(len(self.marks)):
            if self.marks[e] == UNMARKED and (
                    self.is_legal(e, FORWARD) or self.is_legal(e, BACKWARD)):
                return True
        return False

    def first_completing_move(self) -> Optional[tuple[int, int]]:
        """Lowest (edge, direction) legal move that completes a cell."""
        best: Optional[tuple[int, int]] = None
        for cell, size in enumerate(self._cell_size):
            if self.cell_marked[cell] != size - 1:
                continue
            aligned_cnt = self.cell_aligned[cell]
            if aligned_cnt not in (0, size - 1):
                continue
            for e, aligned in self.board.cell_edges[cell]:
                if self.marks[e] == UNMARKED:
                    want_with_walk = aligned_cnt == size - 1
                    if want_with_walk:
                        d = FORWARD if aligned else BACKWARD
                    else:
                        d = BACKWARD if aligned else FORWARD
                    if self.is_legal(e, d) and (best is None or (e, d) < best):
                        best = (e, d)
                    break
        return best

    def is_death(self, edge: int, direction: int) -> bool:
        """Does this (legal) move hand the opponent an immediate completion?"""
        self.push(edge, direction)
        try:
            return self.first_completing_move() is not None
        finally:
            self.pop()

    def is_safe(self, edge: int, direction: int) -> bool:
        """Legal and either completes a cell or is not a death move."""
        if not self.is_legal(edge, direction):
            return False
        return self.completes(edge, direction) or not self.is_death(edge, direction)

    def outcome(self) -> Outcome:
        cell = self.completed_cell()
        prev = 1 if self.marked_count % 2 == 1 else 2
        if cell is not None:
            return Outcome(OutcomeKind.WIN_BY_CYCLE, prev, cell)
        if not self.has_legal_move():
            return Outcome(OutcomeKind.WIN_BY_LAST_MOVE, prev)
        return ONGOING


# -- public rule operations --------------------------------------------------

def vertex_status(state: GameState, v: int) -> VertexStatus:
    board = state.board
    if not (0 <= v < board.n_vertices):
        raise ValueError(f"vertex id {v} out of range")
    inc = outc = unm = 0
    for eid in board.adjacency[v]:
        mark = state.marks[eid]
        if mark == UNMARKED:
            unm += 1
            continue
        e = board.edges[eid]
        head = e.v if mark == FORWARD else e.u
        if head == v:
            inc += 1
        else:
            outc += 1
    deg = board.degree[v]
    return VertexStatus(
        in_count=inc, out_count=outc, unmarked_count=unm,
        is_sink=deg >= 1 and inc == deg,
        is_source=deg >= 1 and outc == deg,
        is_almost_sink=inc == deg - 1 and unm == 1,
        is_almost_source=outc == deg - 1 and unm == 1,
    )


def is_legal(state: GameState, move: Move) -> bool:
    _check_edge(state.board, move.edge)
    return Position.from_state(state).is_legal(move.edge, move.direction)


def legal_moves(state: GameState) -> list[Move]:
    pos = Position.from_state(state)
    return [Move(e, Direction(d)) for e, d in pos.legal_moves()]


def completed_cycle_cell(state: GameState) -> Optional[int]:
    return Position.from_state(state).completed_cell()


def is_death_move(state: GameState, move: Move) -> bool:
    pos = Position.from_state(state)
    if not pos.is_legal(move.edge, move.direction):
        constraint, vertex = pos.illegal_reason(move.edge, move.direction)
        raise RuleViolation(move, constraint, vertex)
    return pos.is_death(move.edge, move.direction)


def edge_status(state: GameState, edge: int) -> EdgeStatus:
    _check_edge(state.board, edge)
    pos = Position.from_state(state)
    legal = {}
    completes = {}
    death = {}
    for d in (Direction.FORWARD, Direction.BACKWARD):
        legal[d] = pos.is_legal(edge, d)
        completes[d] = pos.completes(edge, d)
        death[d] = legal[d] and pos.is_death(edge, d)
    markable = legal[Direction.FORWARD] or legal[Direction.BACKWARD]
    playable = any(legal[d] and (completes[d] or not death[d])
                   for d in (Direction.FORWARD, Direction.BACKWARD))
    return EdgeStatus(legal=legal, completes_cycle=completes, death=death,
                      markable=markable, unmarkable=not markable,
                      currently_playable=playable)


def apply_move(state: GameState, move: Move) -> GameState:
    _check_edge(state.board, move.edge)
    pos = Position.from_state(state)
    if not pos.is_legal(move.edge, move.direction):
        constraint, vertex = pos.illegal_reason(move.edge, move.direction)
        raise RuleViolation(move, constraint, vertex)
    marks = list(state.marks)
    marks[move.edge] = int(move.direction)
    return GameState(state.board, marks, state.history + (move,))


def outcome(state: GameState) -> Outcome:
    return Position.from_state(state).outcome()


def replay(board: Board, moves: Iterable[Move]) -> GameState:
    """Apply a move sequence from the empty board, validating each move."""
    state = new_game(board)
    for move in moves:
        state = apply_move(state, move)
    return state


def _check_edge(board: Board, edge: int) -> None:
    if not (0 <= edge < board.n_edges):
        raise ValueError(f"edge id {edge} out of range")
