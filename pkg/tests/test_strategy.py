from __future__ import annotations

import pytest

from gocycles.board import build_cactus, make_cycle_board
from gocycles.rules import (Direction, Move, Position, apply_move, is_death_move,
                            is_legal, new_game, outcome, replay)
from gocycles.strategy import (StrategyFailure, StrategyInapplicable,
                               TriangleCase, dictate, new_session, next_move,
                               triangle_case)
from gocycles import fixtures as fx

F, B = Direction.FORWARD, Direction.BACKWARD


def follow_fixture(board, kind, role, moves, **session_kwargs):
    """Replay a recorded game, asserting the session dictates exactly the
    recorded moves of its role."""
    session = new_session(board, kind, role, **session_kwargs)
    state = new_game(board)
    for i, move in enumerate(moves):
        if state.player_to_move == role:
            dictated = next_move(session, state)
            assert dictated == move, f"ply {i + 1}: dictated {dictated}, recorded {move}"
            assert is_legal(state, dictated)
        state = apply_move(state, move)
    return state


# -- session preconditions ----------------------------------------------------

def test_mmr_role_must_match_parity(odd_chain, even_chain):
    new_session(odd_chain, "mmr", 1)
    with pytest.raises(StrategyInapplicable):
        new_session(odd_chain, "mmr", 2)
    new_session(even_chain, "mmr", 2)
    with pytest.raises(StrategyInapplicable):
        new_session(even_chain, "mmr", 1)


def test_mmr_inapplicable_without_axes(uncovered_join, k4):
    with pytest.raises(StrategyInapplicable):
        new_session(uncovered_join, "mmr", 2)
    with pytest.raises(StrategyInapplicable):
        new_session(k4, "mmr", 2)


def test_mirror_roles():
    c4 = make_cycle_board(4)
    assert new_session(c4, "mirror", 2).role == 2
    with pytest.raises(StrategyInapplicable):
        new_session(c4, "mirror", 1)
    c5 = make_cycle_board(5)
    session = new_session(c5, "mirror", 1)
    assert session.opening_edge in session.involution.self_involutive_edges
    with pytest.raises(StrategyInapplicable):
        new_session(c5, "mirror", 2)


def test_triangle_preconditions(two_odd_board):
    board = build_cactus(fx.two_cycle_spec(3, 5))
    new_session(board, "triangle", 1)
    with pytest.raises(StrategyInapplicable):
        new_session(board, "triangle", 2)
    with pytest.raises(StrategyInapplicable):
        new_session(two_odd_board, "triangle", 1)


def test_mmr_opening_marks_si_edge(odd_chain):
    session = new_session(odd_chain, "mmr", 1)
    opening = next_move(session, new_game(odd_chain))
    assert opening.edge in session.si_edges


# -- recorded games are reproduced --------------------------------------------

def test_mirror_escape_game_reproduced(two_odd_board):
    fixture = fx.get_fixture("two-odd-cycles-game")
    state = follow_fixture(two_odd_board, "mmr", 2, fixture.move_list())
    assert outcome(state).winner == 2


def test_even_chain_game_reproduced(even_chain):
    fixture = fx.get_fixture("three-cycles-even-si-game")
    state = follow_fixture(even_chain, "mmr", 2, fixture.move_list())
    assert outcome(state).winner == 2


@pytest.mark.parametrize("name,case", [
    ("triangle-reply-on-triangle-game", TriangleCase.CASE_1),
    ("triangle-reply-near-join-game", TriangleCase.CASE_2),
    ("triangle-reply-far-game", TriangleCase.CASE_3),
])
def test_triangle_games_reproduced(name, case):
    fixture = fx.get_fixture(name)
    board = fixture.board()
    moves = fixture.move_list()
    state = follow_fixture(board, "triangle", 1, moves)
    assert outcome(state).winner == 1
    session = new_session(board, "triangle", 1)
    two_ply = replay(board, moves[:2])
    assert triangle_case(session, two_ply) is case


def test_triangle_case_undecided_before_reply():
    board = build_cactus(fx.two_cycle_spec(3, 5))
    session = new_session(board, "triangle", 1)
    assert triangle_case(session, new_game(board)) is TriangleCase.UNDECIDED


# -- dictation specifics -------------------------------------------------------

def test_death_escape_dictates_si_pair(two_odd_board):
    """After the seventh recorded move the mirrored reply would be fatal; the
    dictated move is the paired axis-fixed edge on the other cycle."""
    fixture = fx.get_fixture("two-odd-cycles-game")
    moves = fixture.move_list()
    state = replay(two_odd_board, moves[:7])
    session = new_session(two_odd_board, "mmr", 2)
    dictated = next_move(session, state)
    assert dictated == Move(8, F)
    assert is_death_move(state, Move(3, B))  # the fatal mirror it avoided
    assert not is_death_move(state, dictated)


def test_even_chain_death_escape(even_chain):
    fixture = fx.get_fixture("three-cycles-even-si-game")
    moves = fixture.move_list()
    state = replay(even_chain, moves[:9])
    session = new_session(even_chain, "mmr", 2)
    assert next_move(session, state) == Move(16, F)


def test_strategy_failure_on_uncovered_join(uncovered_join):
    """Driving the opponent's breaking line must end with the strategy
    dictating a sink at the uncovered join vertex."""
    drawn = fx.uncovered_join_drawn_axes(uncovered_join)
    session = new_session(uncovered_join, "mmr", 2, axis_set=drawn)
    pos = Position(uncovered_join)
    last = None
    with pytest.raises(StrategyFailure) as err:
        for attack in fx.uncovered_join_breaking_line():
            assert pos.is_legal(attack.edge, attack.direction)
            pos.push(attack.edge, attack.direction)
            reply = dictate(session, pos, attack)
            pos.push(reply.edge, reply.direction)
    assert err.value.vertex == fx.uncovered_join_vertex()
    assert "sink" in err.value.rule
    assert err.value.dictated == Move(8, B)


def test_mirror_reverse_direction():
    """The mirrored reply reverses the arrow through the partner map."""
    board = build_cactus(fx.two_cycle_spec(5, 7))
    session = new_session(board, "mmr", 2)
    state = replay(board, [Move(0, B)])          # 1 -> 0
    reply = next_move(session, state)
    assert reply == Move(4, F)                   # 0 -> 4, the reversed partner


def test_next_move_requires_own_turn(two_odd_board):
    session = new_session(two_odd_board, "mmr", 2)
    with pytest.raises(ValueError):
        next_move(session, new_game(two_odd_board))


def test_perfect_plays_solver_move():
    board = make_cycle_board(5)
    session = new_session(board, "perfect", 1)
    move = next_move(session, new_game(board))
    from gocycles.solver import solve_board
    assert move == solve_board(board).best_move


def test_session_reconstructible_from_history(even_chain):
    """A fresh session replayed over the same history dictates the same
    move (the server relies on this for persistence)."""
    fixture = fx.get_fixture("three-cycles-even-si-game")
    moves = fixture.move_list()
    state = replay(even_chain, moves[:11])
    first = next_move(new_session(even_chain, "mmr", 2), state)
    second = next_move(new_session(even_chain, "mmr", 2), state)
    assert first == second == moves[11]
