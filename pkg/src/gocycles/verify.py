"""Verification harness: exhaustive strategy checks and runnable claim suites.

``verify_strategy`` walks the full game tree with the strategy's moves forced
and the opponent branching over every legal move; a claim is PROVED when
every leaf is a win for the strategy's role and no dictation failure fires.
Counterexamples are complete move lines replaying to the reported failure.

The ``check_*`` functions package the solver- and strategy-level claims the
project ships with (cycle parity, terminal unmarkable parity, two joined
cycles, axis-set strategies, triangle boards, fixture replays) as one report
per claim, suitable for JSONL output.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .board import Board, CactusSpec, build_cactus, make_cycle_board
from .rules import (BACKWARD, FORWARD, Direction, Move, Position, UNMARKED,
                    replay)
from .solver import solve_board
from .strategy import (StrategyFailure, StrategyKind, TriangleCase,
                       classify_triangle_reply, dictate, new_session)
from .symmetry import (AxisSet, select_axis_set, si_parity_invariance_check)

DEFAULT_VERIFY_BUDGET = 50_000_000

PROVED = "PROVED"
REFUTED = "REFUTED"
BUDGET = "BUDGET"


class _BudgetStop(Exception):
    pass


@dataclass
class VerificationReport:
    claim: str
    board: str
    result: str
    counterexample: Optional[tuple[Move, ...]] = None
    failure: Optional[dict] = None
    leaves_checked: int = 0
    nodes: int = 0
    wall_notes: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.result == PROVED

    def to_dict(self) -> dict:
        doc = {
            "claim": self.claim,
            "board": self.board,
            "result": self.result,
            "leaves": self.leaves_checked,
            "nodes": self.nodes,
        }
        if self.counterexample is not None:
            doc["counterexample"] = [m.to_dict() for m in self.counterexample]
        if self.failure is not None:
            failure = dict(self.failure)
            if isinstance(failure.get("dictated"), Move):
                failure["dictated"] = failure["dictated"].to_dict()
            doc["failure"] = failure
        if self.wall_notes:
            doc["notes"] = self.wall_notes
        doc.update(self.extra)
        return doc


def verify_strategy(board: Board, kind: StrategyKind | str, role: int, *,
                    axis_set: Optional[AxisSet] = None,
                    pairing_seed: Optional[int] = None,
                    budget: Optional[int] = None,
                    si_invariant_check: bool = False,
                    claim: str = "") -> VerificationReport:
    """Exhaustively verify that ``kind`` wins as ``role`` on ``board``.

    The strategy's moves are forced through the dictation core; the opponent
    tries every legal move.  Memoized on the marks vector (plus the triangle
    branch marker, which is not derivable from marks).
    """
    session = new_session(board, kind, role, axis_set=axis_set,
                          pairing_seed=pairing_seed)
    budget = DEFAULT_VERIFY_BUDGET if budget is None else budget
    pos = Position(board)
    memo: dict = {}
    stats = {"nodes": 0, "leaves": 0}
    is_triangle = session.kind is StrategyKind.TRIANGLE

    def playable_si_parity_ok() -> bool:
        count = 0
        for s in session.si_edges:
            if pos.marks[s] != UNMARKED:
                continue
            for d in (FORWARD, BACKWARD):
                if pos.is_legal(s, d) and (pos.completes(s, d) or not pos.is_death(s, d)):
                    count += 1
                    break
        return count % 2 == 0

    def strategy_step(last_move: Optional[Move], case: TriangleCase):
        """None when the subtree is won; else (tail_moves, failure_info)."""
        try:
            mv = dictate(session, pos, last_move, case)
        except StrategyFailure as exc:
            stats["leaves"] += 1
            return [], {"rule": exc.rule, "dictated": exc.dictated,
                        "vertex": exc.vertex}
        if not pos.is_legal(mv.edge, mv.direction):
            stats["leaves"] += 1
            return [], {"rule": "dictated move is illegal", "dictated": mv,
                        "vertex": None}
        pos.push(mv.edge, mv.direction)
        try:
            if si_invariant_check and not playable_si_parity_ok():
                stats["leaves"] += 1
                return [mv], {"rule": "playable self-involutive edges not in pairs",
                              "dictated": mv, "vertex": None}
            if pos.completed_cell() is not None or not pos.has_legal_move():
                stats["leaves"] += 1
                return None
            bad = opponent_step(case)
            if bad is None:
                return None
            return [mv] + bad[0], bad[1]
        finally:
            pos.pop()

    def opponent_step(case: TriangleCase):
        key = (pos.marks_key(), case) if is_triangle else pos.marks_key()
        hit = memo.get(key)
        if hit is not None:
            return None if hit is True else hit
        stats["nodes"] += 1
        if stats["nodes"] > budget:
            raise _BudgetStop
        for e, d in pos.legal_moves():
            mv = Move(e, Direction(d))
            pos.push(e, d)
            try:
                branch_case = case
                if is_triangle and case is TriangleCase.UNDECIDED:
                    branch_case = classify_triangle_reply(session, mv)
                if pos.completed_cell() is not None:
                    stats["leaves"] += 1
                    bad = ([mv], {"rule": "opponent completed a cycle cell",
                                  "dictated": None, "vertex": None})
                elif not pos.has_legal_move():
                    stats["leaves"] += 1
                    bad = ([mv], {"rule": "opponent made the last move",
                                  "dictated": None, "vertex": None})
                else:
                    sub = strategy_step(mv, branch_case)
                    bad = None if sub is None else ([mv] + sub[0], sub[1])
            finally:
                pos.pop()
            if bad is not None:
                memo[key] = bad
                return bad
        memo[key] = True
        return None

    start = time.perf_counter()
    try:
        if role == 1:
            bad = strategy_step(None, TriangleCase.UNDECIDED)
        else:
            bad = opponent_step(TriangleCase.UNDECIDED)
    except _BudgetStop:
        return VerificationReport(claim or f"{kind}:{role}", _describe(board), BUDGET,
                                  leaves_checked=stats["leaves"], nodes=stats["nodes"])
    elapsed = time.perf_counter() - start
    notes = f"{elapsed:.2f}s, memo={len(memo)}"
    if bad is None:
        return VerificationReport(claim or f"{kind}:{role}", _describe(board), PROVED,
                                  leaves_checked=stats["leaves"], nodes=stats["nodes"],
                                  wall_notes=notes)
    return VerificationReport(claim or f"{kind}:{role}", _describe(board), REFUTED,
                              counterexample=tuple(bad[0]), failure=bad[1],
                              leaves_checked=stats["leaves"], nodes=stats["nodes"],
                              wall_notes=notes)


def replay_counterexample(board: Board, kind: StrategyKind | str, role: int,
                          moves: Iterable[Move], *,
                          axis_set: Optional[AxisSet] = None,
                          pairing_seed: Optional[int] = None) -> dict:
    """Re-run a counterexample, confirming the strategy's moves match and
    returning how the line ends ("loss" outcome or "failure" info)."""
    session = new_session(board, kind, role, axis_set=axis_set,
                          pairing_seed=pairing_seed)
    pos = Position(board)
    case = TriangleCase.UNDECIDED
    moves = list(moves)
    for i, mv in enumerate(moves):
        mover = 1 if pos.marked_count % 2 == 0 else 2
        if session.kind is StrategyKind.TRIANGLE and pos.marked_count == 1:
            case = classify_triangle_reply(session, mv)
        if mover == role:
            dictated = dictate(session, pos,
                               moves[i - 1] if i > 0 else None, case)
            if dictated != mv:
                raise AssertionError(
                    f"counterexample move {i + 1} is {mv}, strategy dictates {dictated}")
        if not pos.is_legal(mv.edge, mv.direction):
            raise AssertionError(f"counterexample move {i + 1} ({mv}) is illegal")
        pos.push(mv.edge, mv.direction)
    over = pos.outcome()
    if over.is_over:
        if over.winner == role:
            raise AssertionError("counterexample line ends in a strategy win")
        return {"end": "loss", "outcome": over}
    try:
        dictate(session, pos, moves[-1] if moves else None, case)
    except StrategyFailure as exc:
        return {"end": "failure", "rule": exc.rule, "dictated": exc.dictated,
                "vertex": exc.vertex}
    raise AssertionError("counterexample line is not terminal for the strategy")


# -- claim suites -------------------------------------------------------------

def _describe(board: Board) -> str:
    sizes = "+".join(str(len(c.walk)) for c in board.cells)
    return f"cells[{sizes}] V={board.n_vertices} E={board.n_edges}"


def two_cycle_board(m: int, n: int) -> Board:
    return build_cactus(CactusSpec((m, n), ((0, 0, 1, 0),)))


def check_cycle_parity(n_max: int = 9, budget: Optional[int] = None) -> list[VerificationReport]:
    """Single cycle boards are decided by parity: odd lengths go to Player 1."""
    reports = []
    for n in range(3, n_max + 1):
        expected = 1 if n % 2 == 1 else 2
        result = solve_board(make_cycle_board(n), budget)
        ok = result.winner == expected
        reports.append(VerificationReport(
            claim=f"cycle-parity:n={n}", board=f"cycle[{n}]",
            result=PROVED if ok else (BUDGET if result.budget_exhausted else REFUTED),
            nodes=result.nodes_expanded,
            extra={"expected_winner": expected, "solver_winner": result.winner}))
    return reports


def check_unmarkable_parity(n: int) -> VerificationReport:
    """Terminal positions of a cycle board that end by exhaustion always leave
    an even number of unmarked (hence unmarkable) edges."""
    if n > 9:
        raise ValueError("state-space guard: n must be at most 9")
    board = make_cycle_board(n)
    pos = Position(board)
    seen: set[bytes] = set()
    histogram: dict[int, int] = {}
    violations = 0

    def dfs() -> None:
        nonlocal violations
        key = pos.marks_key()
        if key in seen:
            return
        seen.add(key)
        if pos.completed_cell() is not None:
            return
        moves = pos.legal_moves()
        if not moves:
            unmarked = sum(1 for m in pos.marks if m == UNMARKED)
            histogram[unmarked] = histogram.get(unmarked, 0) + 1
            if unmarked % 2 != 0:
                violations += 1
            return
        for e, d in moves:
            pos.push(e, d)
            dfs()
            pos.pop()

    dfs()
    return VerificationReport(
        claim=f"unmarkable-even:n={n}", board=f"cycle[{n}]",
        result=PROVED if violations == 0 else REFUTED,
        leaves_checked=sum(histogram.values()), nodes=len(seen),
        extra={"terminal_unmarked_histogram": dict(sorted(histogram.items())),
               "violations": violations})


def expected_two_cycle_winner(m: int, n: int) -> int:
    """Different parity goes to Player 1; matching parity to Player 2."""
    return 1 if (m % 2) != (n % 2) else 2


def check_two_cycle_table(m_lo: int = 4, m_hi: int = 7, *,
                          strategy_edge_limit: int = 12,
                          budget: Optional[int] = None) -> list[VerificationReport]:
    """Winners for two cycles joined at a vertex, cross-checked between the
    solver and exhaustive strategy verification where affordable."""
    reports = []
    for m in range(m_lo, m_hi + 1):
        for n in range(m, m_hi + 1):
            board = two_cycle_board(m, n)
            expected = expected_two_cycle_winner(m, n)
            result = solve_board(board, budget)
            ok = result.winner == expected
            extra = {"expected_winner": expected, "solver_winner": result.winner}
            if ok and m + n <= strategy_edge_limit:
                strat = verify_strategy(board, StrategyKind.MODIFIED_MR, expected,
                                        budget=budget)
                extra["strategy"] = strat.result
                ok = strat.ok
            reports.append(VerificationReport(
                claim=f"two-cycle:m={m}:n={n}", board=_describe(board),
                result=PROVED if ok else REFUTED,
                nodes=result.nodes_expanded, extra=extra))
    return reports


def check_axis_strategy(board: Board, name: str, *,
                        budget: Optional[int] = None,
                        solver_edge_limit: int = 14) -> VerificationReport:
    """Axis selection, parity prediction and exhaustive strategy verification
    on one cactus board, with solver agreement when within reach."""
    axes = select_axis_set(board)
    if axes is None:
        return VerificationReport(claim=f"axis-strategy:{name}", board=_describe(board),
                                  result=REFUTED,
                                  wall_notes="no valid axis set exists")
    role = 1 if len(axes.si_edges) % 2 == 1 else 2
    report = verify_strategy(board, StrategyKind.MODIFIED_MR, role, budget=budget,
                             claim=f"axis-strategy:{name}")
    report.extra["si_edges"] = list(axes.si_edges)
    report.extra["si_parity"] = axes.si_parity
    report.extra["predicted_winner"] = role
    if report.ok and board.n_edges <= solver_edge_limit:
        solved = solve_board(board, budget)
        report.extra["solver_winner"] = solved.winner
        if solved.winner != role:
            report.result = REFUTED
            report.wall_notes += " solver disagrees"
    return report


def check_triangle_family(n_lo: int = 4, n_hi: int = 8, *,
                          budget: Optional[int] = None) -> list[VerificationReport]:
    """A triangle joined to any larger cycle is a first-player win, giving
    even-edge boards won by Player 1."""
    reports = []
    for n in range(n_lo, n_hi + 1):
        board = build_cactus(CactusSpec((3, n), ((0, 0, 1, 0),)))
        result = solve_board(board, budget)
        strat = verify_strategy(board, StrategyKind.TRIANGLE, 1, budget=budget,
                                claim=f"triangle:n={n}")
        if strat.ok and result.winner != 1:
            strat.result = REFUTED
            strat.wall_notes += " solver disagrees"
        strat.extra.update({
            "solver_winner": result.winner,
            "edges": board.n_edges,
            "edge_parity": "EVEN" if board.n_edges % 2 == 0 else "ODD",
        })
        reports.append(strat)
    return reports


def check_si_parity_invariance(boards: Iterable[tuple[str, Board]]) -> list[VerificationReport]:
    reports = []
    for name, board in boards:
        rep = si_parity_invariance_check(board)
        reports.append(VerificationReport(
            claim=f"si-parity:{name}", board=_describe(board),
            result=PROVED if rep.invariant and rep.axis_sets > 0 else REFUTED,
            extra=rep.to_dict()))
    return reports


def check_random_playouts(boards: Iterable[tuple[str, Board]], n_playouts: int,
                          seed: int = 0) -> VerificationReport:
    """Random legal playouts must never pass through a sink or a source.

    Statuses are recomputed from scratch each move as an oracle independent
    of the incremental counters that legality checking uses.
    """
    rng = random.Random(seed)
    board_list = list(boards)
    violations = 0
    moves_played = 0
    for i in range(n_playouts):
        name, board = board_list[i % len(board_list)]
        pos = Position(board)
        while True:
            if pos.completed_cell() is not None:
                break
            moves = pos.legal_moves()
            if not moves:
                break
            e, d = rng.choice(moves)
            pos.push(e, d)
            moves_played += 1
            if _has_sink_or_source(board, pos.marks):
                violations += 1
                break
    return VerificationReport(
        claim="random-playouts", board=f"{len(board_list)} boards",
        result=PROVED if violations == 0 else REFUTED,
        leaves_checked=n_playouts, nodes=moves_played,
        extra={"violations": violations})


def _has_sink_or_source(board: Board, marks) -> bool:
    for v in range(board.n_vertices):
        deg = board.degree[v]
        inc = outc = 0
        for eid in board.adjacency[v]:
            mark = marks[eid]
            if mark == UNMARKED:
                continue
            e = board.edges[eid]
            head = e.v if mark == FORWARD else e.u
            if head == v:
                inc += 1
            else:
                outc += 1
        if deg >= 1 and (inc == deg or outc == deg):
            return True
    return False


def check_memo_equivalence(boards: Iterable[tuple[str, Board]],
                           budget: Optional[int] = None) -> list[VerificationReport]:
    """Solving with and without the transposition table agrees."""
    reports = []
    for name, board in boards:
        with_memo = solve_board(board, budget)
        without = solve_board(board, budget, use_memo=False)
        ok = with_memo.winner == without.winner and with_memo.winner is not None
        reports.append(VerificationReport(
            claim=f"memo-equivalence:{name}", board=_describe(board),
            result=PROVED if ok else REFUTED,
            nodes=without.nodes_expanded,
            extra={"with_memo": with_memo.winner, "without_memo": without.winner}))
    return reports


def check_failure_reproduction(budget: Optional[int] = None) -> list[VerificationReport]:
    """The uncovered-join board: axis selection must fail, the strategy under
    the drawn axes must be refuted with a dictated sink at the uncovered join
    vertex, and attaching one more cycle must repair both."""
    from . import fixtures as fx
    reports = []

    bad = build_cactus(fx.uncovered_join_spec())
    selected = select_axis_set(bad)
    reports.append(VerificationReport(
        claim="axis-selection-absent:uncovered-join", board=_describe(bad),
        result=PROVED if selected is None else REFUTED,
        wall_notes="" if selected is None else "unexpected axis set found"))

    drawn = fx.uncovered_join_drawn_axes(bad)
    refutation = verify_strategy(bad, StrategyKind.MODIFIED_MR, 2, axis_set=drawn,
                                 budget=budget, claim="strategy-breaks:uncovered-join")
    # exhibit the counterexample whose dictated move sinks the uncovered join
    # vertex: drive the session down the breaking line and collect its replies
    session = new_session(bad, StrategyKind.MODIFIED_MR, 2, axis_set=drawn)
    pos = Position(bad)
    line: list[Move] = []
    sink_failure: Optional[dict] = None
    try:
        for attack in fx.uncovered_join_breaking_line():
            pos.push(attack.edge, attack.direction)
            line.append(attack)
            reply = dictate(session, pos, attack)
            pos.push(reply.edge, reply.direction)
            line.append(reply)
    except StrategyFailure as exc:
        sink_failure = {"rule": exc.rule, "dictated": exc.dictated,
                        "vertex": exc.vertex}
    target = fx.uncovered_join_vertex()
    ok = (refutation.result == REFUTED and sink_failure is not None
          and sink_failure.get("vertex") == target
          and "sink" in sink_failure.get("rule", ""))
    reports.append(VerificationReport(
        claim="dictated-sink-at-join:uncovered-join", board=_describe(bad),
        result=PROVED if ok else REFUTED,
        counterexample=tuple(line), failure=sink_failure,
        nodes=refutation.nodes,
        extra={"strategy_verdict": refutation.result,
               "uncovered_vertex": target}))

    repaired = build_cactus(fx.repaired_join_spec())
    reports.append(check_axis_strategy(repaired, "repaired-join", budget=budget))
    return reports


def replay_fixture(path) -> VerificationReport:
    """Replay a fixture file (or packaged fixture name) against its
    recorded expectation."""
    from pathlib import Path
    from . import fixtures as fx
    p = Path(path)
    if not p.exists():
        p = fx.packaged_fixture_path(str(path))
    board, moves, expect, name = fx.load_replay_file(p)
    if expect is None:
        raise ValueError(f"fixture {name} carries no expectation to check")
    return replay_fixture_data(name, board, moves, expect)


def replay_fixture_data(name: str, board: Board, moves: list[Move],
                        expect: dict) -> VerificationReport:
    """Replay a recorded game and check the expected terminal outcome."""
    state = replay(board, moves)  # raises on any illegal move
    over = Position.from_state(state).outcome()
    problems = []
    if len(moves) != expect.get("moves", len(moves)):
        problems.append(f"expected {expect['moves']} moves, replayed {len(moves)}")
    kind = {"cycle": 1, "last_move": 2}[expect["result"]]
    if over.kind.value != kind:
        problems.append(f"outcome kind {over.kind.name} != expected {expect['result']}")
    if over.winner != expect["winner"]:
        problems.append(f"winner {over.winner} != expected {expect['winner']}")
    if "cell" in expect and over.cell != expect["cell"]:
        problems.append(f"completed cell {over.cell} != expected {expect['cell']}")
    return VerificationReport(
        claim=f"replay:{name}", board=_describe(board),
        result=PROVED if not problems else REFUTED,
        leaves_checked=1, nodes=len(moves),
        wall_notes="; ".join(problems),
        extra={"moves": len(moves), "winner": over.winner,
               "outcome": over.kind.name})


# -- suite registry -----------------------------------------------------------

def playout_boards() -> list[tuple[str, Board]]:
    """Mixed bag of generated cactus boards for randomized playouts."""
    boards: list[tuple[str, Board]] = []
    for n in (4, 5, 6, 7, 8):
        boards.append((f"cycle{n}", make_cycle_board(n)))
    for m, n in ((4, 5), (5, 7), (3, 5), (3, 7), (4, 6)):
        boards.append((f"join{m}-{n}", two_cycle_board(m, n)))
    from . import fixtures as fx
    boards.append(("chain5-9-7", build_cactus(fx.odd_chain_spec())))
    boards.append(("chain5-8-7", build_cactus(fx.even_chain_spec())))
    return boards


def small_solver_boards() -> list[tuple[str, Board]]:
    """Every generated board with at most 10 edges, plus the K4 reference."""
    from . import fixtures as fx
    boards: list[tuple[str, Board]] = []
    for n in range(3, 11):
        boards.append((f"cycle{n}", make_cycle_board(n)))
    for m in range(3, 8):
        for n in range(m, 8):
            if m + n <= 10:
                boards.append((f"join{m}-{n}", two_cycle_board(m, n)))
    boards.append(("k4", fx.k4_board()))
    return boards


def si_parity_boards(max_len: int = 8) -> list[tuple[str, Board]]:
    """All two- and three-cycle cactus shapes with cycle lengths 4..max_len,
    up to symmetry of the join positions."""
    boards: list[tuple[str, Board]] = []
    for m in range(4, max_len + 1):
        for n in range(m, max_len + 1):
            boards.append((f"join{m}-{n}", two_cycle_board(m, n)))
    for mid in range(4, max_len + 1):
        for a in range(4, max_len + 1):
            for b in range(a, max_len + 1):
                for sep in range(1, mid // 2 + 1):
                    spec = CactusSpec((a, mid, b), ((1, 0, 0, 0), (1, sep, 2, 0)))
                    boards.append((f"chain{a}-{mid}-{b}:sep{sep}", build_cactus(spec)))
        # three cycles sharing one vertex
        for a in range(4, max_len + 1):
            for b in range(a, max_len + 1):
                spec = CactusSpec((mid, a, b), ((0, 0, 1, 0), (0, 0, 2, 0)))
                boards.append((f"star{mid}-{a}-{b}", build_cactus(spec)))
    return boards


def run_suite(name: str, *, budget: Optional[int] = None, seed: int = 0,
              playouts: int = 100_000) -> list[VerificationReport]:
    """Run one named verification suite (or ``all``)."""
    from . import fixtures as fx
    if name == "cycle-parity":
        return check_cycle_parity(9, budget)
    if name == "unmarkable":
        return [check_unmarkable_parity(n) for n in range(3, 9)]
    if name == "two-cycle":
        return check_two_cycle_table(4, 7, budget=budget)
    if name == "main":
        return [
            check_axis_strategy(build_cactus(fx.odd_chain_spec()),
                               "three-cycle-odd", budget=budget),
            check_axis_strategy(build_cactus(fx.even_chain_spec()),
                               "three-cycle-even", budget=budget),
        ]
    if name == "triangle":
        return check_triangle_family(4, 8, budget=budget)
    if name == "failure":
        return check_failure_reproduction(budget)
    if name == "replays":
        reports = []
        for fixture_name in fx.fixture_names():
            fixture = fx.get_fixture(fixture_name)
            if fixture.moves:
                reports.append(replay_fixture_data(
                    fixture_name, fixture.board(), fixture.move_list(),
                    fixture.expect))
        return reports
    if name == "properties":
        reports = [check_random_playouts(playout_boards(), playouts, seed)]
        reports.extend(check_memo_equivalence(small_solver_boards(), budget))
        reports.extend(check_si_parity_invariance(si_parity_boards()))
        return reports
    if name == "all":
        out = []
        for suite in ("cycle-parity", "unmarkable", "two-cycle", "main",
                      "triangle", "failure", "replays", "properties"):
            out.extend(run_suite(suite, budget=budget, seed=seed,
                                 playouts=playouts))
        return out
    raise ValueError(f"unknown suite {name!r}")


SUITE_NAMES = ("cycle-parity", "unmarkable", "two-cycle", "main", "triangle",
               "failure", "replays", "properties", "all")
