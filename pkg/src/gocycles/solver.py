"""Exhaustive perfect-play solver.

Plain win/loss depth-first search with an immediate-completion shortcut and a
transposition table keyed on the marks vector alone (the player to move is
recovered from the parity of the marked count).  No game-sum decompositions:
the cycle-completion win condition breaks normal-play additivity, so
correctness comes from brute search.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .board import Board
from .rules import Direction, GameState, Move, Position, new_game

DEFAULT_BUDGET = 50_000_000


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SolveResult:
    winner: Optional[int]
    best_move: Optional[Move]
    nodes_expanded: int
    table_size: int
    budget_exhausted: bool

    def to_dict(self) -> dict:
        return {
            "winner": self.winner,
            "best_move": self.best_move.to_dict() if self.best_move else None,
            "nodes": self.nodes_expanded,
            "table_size": self.table_size,
            "budget_exhausted": self.budget_exhausted,
        }


class _Searcher:
    def __init__(self, board: Board, budget: int, use_memo: bool = True):
        self.pos = Position(board)
        self.memo: dict[bytes, bool] = {}
        self.nodes = 0
        self.budget = budget
        self.use_memo = use_memo

    def load(self, marks) -> None:
        self.pos = Position(self.pos.board, marks)

    def mover_wins(self) -> bool:
        """True when the player to move wins the current position."""
        pos = self.pos
        key = pos.marks_key() if self.use_memo else None
        if key is not None:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted
        result = False
        if pos.first_completing_move() is not None:
            result = True
        else:
            for e, d in pos.legal_moves():
                pos.push(e, d)
                try:
                    opponent_wins = self.mover_wins()
                finally:
                    pos.pop()
                if not opponent_wins:
                    result = True
                    break
        if key is not None:
            self.memo[key] = result
        return result


def solve_state(state: GameState, budget: Optional[int] = None,
                use_memo: bool = True, threads: int = 1) -> SolveResult:
    """Decide the winner from ``state`` and pick a deterministic best move.

    The best move is the lowest (edge id, direction) winning move for a won
    position, or the lowest-id legal move when every move loses.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    searcher = _Searcher(state.board, budget, use_memo)
    searcher.load(state.marks)
    pos = searcher.pos

    over = pos.outcome()
    if over.is_over:
        return SolveResult(over.winner, None, 0, 0, False)

    if threads > 1:
        return _solve_parallel(state, budget, threads)

    mover = pos.player_to_move
    other = 2 if mover == 1 else 1
    best: Optional[Move] = None
    mover_wins = False
    try:
        for e, d in pos.legal_moves():
            if pos.completes(e, d):
                wins = True
            else:
                pos.push(e, d)
                try:
                    wins = not searcher.mover_wins()
                finally:
                    pos.pop()
            if wins:
                mover_wins = True
                best = Move(e, Direction(d))
                break
    except BudgetExhausted:
        return SolveResult(None, None, searcher.nodes, len(searcher.memo), True)
    if not mover_wins:
        e, d = pos.legal_moves()[0]
        best = Move(e, Direction(d))
    return SolveResult(mover if mover_wins else other, best,
                       searcher.nodes, len(searcher.memo), False)


def solve_board(board: Board, budget: Optional[int] = None,
                use_memo: bool = True, threads: int = 1) -> SolveResult:
    return solve_state(new_game(board), budget, use_memo, threads)


@dataclass(frozen=True)
class MoveLabels:
    labels: dict
    nodes: int
    budget_exhausted: bool

    def to_dict(self) -> dict:
        return {
            "labels": [{"move": m.to_dict(), "label": lab}
                       for m, lab in sorted(self.labels.items())],
            "nodes": self.nodes,
            "budget_exhausted": self.budget_exhausted,
        }


def outcome_labels(state: GameState, budget: Optional[int] = None) -> MoveLabels:
    """Label every legal move WINNING or LOSING for the player to move.

    On budget exhaustion the map is partial and flagged.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    searcher = _Searcher(state.board, budget)
    searcher.load(state.marks)
    pos = searcher.pos
    labels: dict[Move, str] = {}
    exhausted = False
    for e, d in pos.legal_moves():
        if pos.completes(e, d):
            labels[Move(e, Direction(d))] = "WINNING"
            continue
        pos.push(e, d)
        try:
            wins = not searcher.mover_wins()
        except BudgetExhausted:
            exhausted = True
            break
        finally:
            pos.pop()
        labels[Move(e, Direction(d))] = "WINNING" if wins else "LOSING"
    return MoveLabels(labels, searcher.nodes, exhausted)


def _child_task(args) -> tuple[tuple[int, int], Optional[bool], int]:
    board, marks, move, budget = args
    searcher = _Searcher(board, budget)
    searcher.load(marks)
    e, d = move
    searcher.pos.push(e, d)
    try:
        wins = not searcher.mover_wins()
    except BudgetExhausted:
        return move, None, searcher.nodes
    return move, wins, searcher.nodes


def _solve_parallel(state: GameState, budget: int, threads: int) -> SolveResult:
    """Parallelize over root moves; winner and best move match sequential."""
    pos = Position.from_state(state)
    mover = pos.player_to_move
    other = 2 if mover == 1 else 1
    moves = pos.legal_moves()
    completing = [m for m in moves if pos.completes(*m)]
    if completing:
        won = sorted(completing)[0]
        return SolveResult(mover, Move(won[0], Direction(won[1])), 0, 0, False)
    tasks = [(state.board, bytes(pos.marks), m, budget) for m in moves]
    nodes = 0
    results: dict[tuple[int, int], Optional[bool]] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for move, wins, n in pool.map(_child_task, tasks):
            results[move] = wins
            nodes += n
    if any(w is None for w in results.values()):
        return SolveResult(None, None, nodes, 0, True)
    winning = sorted(m for m, w in results.items() if w)
    if winning:
        e, d = winning[0]
        return SolveResult(mover, Move(e, Direction(d)), nodes, 0, False)
    e, d = moves[0]
    return SolveResult(other, Move(e, Direction(d)), nodes, 0, False)
