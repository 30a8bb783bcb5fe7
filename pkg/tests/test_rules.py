from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gocycles.board import build_cactus, make_cycle_board
from gocycles.rules import (Direction, Move, OutcomeKind, RuleViolation,
                            apply_move, completed_cycle_cell, edge_status,
                            is_death_move, is_legal, legal_moves, new_game,
                            outcome, replay, vertex_status)
from gocycles import fixtures as fx

F, B = Direction.FORWARD, Direction.BACKWARD


def mv(edge, d):
    return Move(edge, d)


def test_vertex_status_fresh(c5):
    state = new_game(c5)
    for v in range(5):
        st_ = vertex_status(state, v)
        assert (st_.in_count, st_.out_count, st_.unmarked_count) == (0, 0, 2)
        assert not (st_.is_sink or st_.is_source or st_.is_almost_sink
                    or st_.is_almost_source)


def test_sink_detected_on_triangle():
    board = make_cycle_board(3)
    # both edges at vertex 1 pointing toward it: marks applied directly,
    # bypassing legality, to exercise the classifier
    state = new_game(board)
    state = state.__class__(board, [int(F), int(B), 0])  # 0->1, 2->1
    st1 = vertex_status(state, 1)
    assert st1.is_sink and not st1.is_source


def test_almost_sink_on_degree_three(k4):
    state = new_game(k4)
    state = apply_move(state, mv(0, F))   # 0 -> 1
    state = apply_move(state, mv(3, B))   # 2 -> 1
    st1 = vertex_status(state, 1)
    assert st1.in_count == 2 and st1.unmarked_count == 1
    assert st1.is_almost_sink


def test_fresh_triangle_all_moves_legal():
    board = make_cycle_board(3)
    assert len(legal_moves(new_game(board))) == 6


def test_fresh_cycle_has_2n_moves(c5):
    assert len(legal_moves(new_game(c5))) == 10


def test_sink_creating_move_is_illegal():
    board = make_cycle_board(3)
    state = replay(board, [mv(0, F)])            # 0 -> 1
    assert not is_legal(state, mv(1, B))         # 2 -> 1 would sink vertex 1
    with pytest.raises(RuleViolation) as err:
        apply_move(state, mv(1, B))
    assert err.value.constraint == "sink"
    assert err.value.vertex == 1


def test_coherent_completion_is_legal_and_wins():
    board = make_cycle_board(4)
    state = replay(board, [mv(0, F), mv(1, F), mv(2, F)])
    assert is_legal(state, mv(3, B))  # 3 -> 0 completes the directed cycle
    done = apply_move(state, mv(3, B))
    over = outcome(done)
    assert over.kind is OutcomeKind.WIN_BY_CYCLE
    assert over.cell == 0
    assert over.winner == 2


def test_completed_cycle_cell_on_k4(k4):
    # triangle 0 -> 3 -> 2 -> 0 is the third bounded cell
    state = replay(k4, [mv(2, F), mv(5, B), mv(1, B)])
    assert completed_cycle_cell(state) == 2


def test_incoherent_marks_do_not_complete():
    board = make_cycle_board(4)
    # classifier works on any marks vector: three with the walk, one against
    state = new_game(board).__class__(board, [int(F), int(F), int(B), int(B)])
    assert completed_cycle_cell(state) is None
    # and a fully coherent vector completes
    state = new_game(board).__class__(board, [int(F), int(F), int(F), int(B)])
    assert completed_cycle_cell(state) == 0


def test_fresh_board_has_no_death_moves(c5):
    state = new_game(c5)
    assert completed_cycle_cell(state) is None
    for move in legal_moves(state):
        assert not is_death_move(state, move)


def test_death_move_detection_on_c4():
    board = make_cycle_board(4)
    state = replay(board, [mv(0, F), mv(1, F)])
    assert is_death_move(state, mv(2, F))       # opponent then completes edge 3
    assert not is_legal(state, mv(2, B))        # 3 -> 2 would sink vertex 2
    assert is_legal(state, mv(3, B))
    assert is_death_move(state, mv(3, B))       # opponent then completes edge 2


def test_death_move_requires_legality(c5):
    state = replay(c5, [mv(0, F)])
    with pytest.raises(RuleViolation):
        is_death_move(state, mv(0, F))


def test_mirror_escape_position_death_moves(two_odd_board):
    fixture = fx.get_fixture("two-odd-cycles-game")
    moves = fixture.move_list()
    state = replay(two_odd_board, moves[:7])
    # the mirrored reply on the five-cycle hands over an immediate win
    assert is_death_move(state, mv(3, B))
    # after nine moves the winning reply must be available
    state9 = replay(two_odd_board, moves[:9])
    assert mv(2, B) in legal_moves(state9)


def test_unmarkable_edge_between_two_almost_sinks():
    board = make_cycle_board(4)
    state = replay(board, [mv(3, B), mv(1, B)])  # 3->0 and 2->1
    st0 = edge_status(state, 0)
    assert st0.unmarkable and not st0.markable
    assert not st0.currently_playable
    # terminal: both remaining edges unmarkable, an even count
    over = outcome(state)
    assert over.kind is OutcomeKind.WIN_BY_LAST_MOVE
    assert over.winner == 2


def test_edge_status_fresh(c5):
    st0 = edge_status(new_game(c5), 0)
    assert st0.markable and st0.currently_playable and not st0.unmarkable


def test_edge_status_completion_flag():
    board = make_cycle_board(4)
    state = replay(board, [mv(0, F), mv(1, F), mv(2, F)])
    st3 = edge_status(state, 3)
    assert st3.currently_playable
    assert st3.completes_cycle[B] and not st3.completes_cycle[F]
    assert st3.legal[B]


def test_apply_move_rejects_remark(c5):
    state = replay(c5, [mv(0, F)])
    with pytest.raises(RuleViolation) as err:
        apply_move(state, mv(0, B))
    assert "already marked" in err.value.constraint


def test_replay_preserves_history(two_odd_board):
    fixture = fx.get_fixture("two-odd-cycles-game")
    state = replay(two_odd_board, fixture.move_list())
    assert len(state.history) == 10
    assert state.player_to_move == 1  # ten marks, Player 1 nominally next
    assert outcome(state).winner == 2


PLAYOUT_BOARDS = None


def _playout_boards():
    global PLAYOUT_BOARDS
    if PLAYOUT_BOARDS is None:
        PLAYOUT_BOARDS = [
            make_cycle_board(5),
            make_cycle_board(6),
            build_cactus(fx.two_cycle_spec(4, 5)),
            build_cactus(fx.two_cycle_spec(3, 5)),
            fx.k4_board(),
        ]
    return PLAYOUT_BOARDS


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), board_index=st.integers(0, 4))
def test_random_playout_invariants(seed, board_index):
    """No reachable state contains a sink or source; rule classifications are
    mutually consistent along the way."""
    board = _playout_boards()[board_index]
    rng = random.Random(seed)
    state = new_game(board)
    while True:
        for v in range(board.n_vertices):
            vs = vertex_status(state, v)
            assert not vs.is_sink and not vs.is_source
        over = outcome(state)
        moves = legal_moves(state)
        if over.is_over:
            if over.kind is OutcomeKind.WIN_BY_LAST_MOVE:
                assert not moves
                unmarked = sum(1 for m in state.marks if m == 0)
                for e in range(board.n_edges):
                    if state.marks[e] == 0:
                        assert edge_status(state, e).unmarkable
            break
        e = rng.choice(moves)
        state = apply_move(state, e)


def test_terminal_unmarked_parity_small_cycles():
    from gocycles.verify import check_unmarkable_parity
    for n in (4, 5, 6):
        report = check_unmarkable_parity(n)
        assert report.ok, report.extra
    histogram = check_unmarkable_parity(4).extra["terminal_unmarked_histogram"]
    assert histogram.get(2, 0) > 0  # some terminal leaves two unmarkable edges
