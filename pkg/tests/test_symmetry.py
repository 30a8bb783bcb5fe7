from __future__ import annotations

import itertools

import pytest

from gocycles.board import build_cactus, make_cycle_board
from gocycles.symmetry import (UnsupportedBoardError, enumerate_axes,
                               find_involutions, select_axis_set,
                               si_parity_invariance_check)
from gocycles import fixtures as fx


def brute_force_involutions(board):
    """Oracle: filter all vertex permutations for non-identity involutive
    automorphisms that preserve the cell edge-sets."""
    n = board.n_vertices
    edges = {(e.u, e.v) for e in board.edges}

    def is_edge(a, b):
        return (min(a, b), max(a, b)) in edges

    cells = [frozenset((min(a, b), max(a, b))
                       for a, b in zip(c.walk, c.walk[1:] + c.walk[:1]))
             for c in board.cells]
    found = []
    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        if any(perm[perm[v]] != v for v in range(n)):
            continue
        if any(is_edge(u, v) != is_edge(perm[u], perm[v])
               for u in range(n) for v in range(u + 1, n)):
            continue
        mapped = [frozenset((min(perm[a], perm[b]), max(perm[a], perm[b]))
                            for a, b in cell) for cell in cells]
        if all(m in cells for m in mapped):
            found.append(perm)
    return found


@pytest.mark.parametrize("n,count", [(5, 5), (6, 7)])
def test_involution_counts_match_brute_force(n, count):
    board = make_cycle_board(n)
    involutions = find_involutions(board)
    oracle = brute_force_involutions(board)
    assert len(involutions) == count
    assert sorted(i.vertex_map for i in involutions) == sorted(oracle)


def test_c5_involutions_have_one_si_edge():
    for inv in find_involutions(make_cycle_board(5)):
        assert len(inv.self_involutive_edges) == 1


def test_three_cycle_chain_has_no_usable_involution(odd_chain):
    """The chain admits only single-cycle flips (each fixing whole cells and
    hence swarming with self-involutive edges), so no involution qualifies
    for the mirror-reverse strategy."""
    involutions = find_involutions(odd_chain, max_vertices=19)
    assert len(involutions) == 3
    assert min(len(i.self_involutive_edges) for i in involutions) >= 5
    from gocycles.strategy import StrategyInapplicable, new_session
    for role in (1, 2):
        with pytest.raises(StrategyInapplicable):
            new_session(odd_chain, "mirror", role)


def test_vertex_guard(odd_chain):
    with pytest.raises(UnsupportedBoardError):
        find_involutions(odd_chain)


def test_involution_maps_consistent(k4):
    for inv in find_involutions(k4):
        for e in k4.edges:
            image = inv.edge_map[e.id]
            u, v = inv.vertex_map[e.u], inv.vertex_map[e.v]
            assert {k4.edges[image].u, k4.edges[image].v} == {u, v}
        assert sorted(inv.edge_map) == list(range(k4.n_edges))
        assert sorted(inv.cell_map) == list(range(k4.n_cells))


def test_axes_of_odd_cycle():
    board = make_cycle_board(5)
    axes = enumerate_axes(board, 0)
    assert len(axes) == 5
    for axis in axes:
        assert len(axis.fixed_vertices) == 1
        assert len(axis.fixed_edges) == 1


def test_axes_of_even_cycle():
    board = make_cycle_board(6)
    axes = enumerate_axes(board, 0)
    assert len(axes) == 6
    vertex_axes = [a for a in axes if a.fixed_vertices]
    edge_axes = [a for a in axes if not a.fixed_vertices]
    assert len(vertex_axes) == 3 and len(edge_axes) == 3
    assert all(len(a.fixed_edges) == 0 for a in vertex_axes)
    assert all(len(a.fixed_edges) == 2 for a in edge_axes)


@pytest.mark.parametrize("m", range(3, 10))
def test_axis_partner_maps_are_involutions(m):
    board = make_cycle_board(m)
    for axis in enumerate_axes(board, 0):
        for v, w in axis.vertex_partner.items():
            assert axis.vertex_partner[w] == v
        for e, f in axis.edge_partner.items():
            assert axis.edge_partner[f] == e
        fixed_v = [v for v, w in axis.vertex_partner.items() if v == w]
        assert tuple(sorted(fixed_v)) == tuple(sorted(axis.fixed_vertices))
        if m % 2 == 1:
            assert len(axis.fixed_edges) == 1
        else:
            assert len(axis.fixed_edges) in (0, 2)


def test_axes_reject_shared_edges(k4):
    with pytest.raises(UnsupportedBoardError):
        enumerate_axes(k4, 0)


def test_middle_cycle_axis_pairs_the_joins(odd_chain):
    # cell 1 is the nine-cycle carrying both join vertices (ids 0 and 8)
    axes = enumerate_axes(odd_chain, 1)
    pairing = [a for a in axes if a.vertex_partner.get(8) == 0]
    assert len(pairing) == 1
    assert pairing[0].fixed_vertices == (10,)


def test_select_axis_set_odd_chain(odd_chain):
    axes = select_axis_set(odd_chain)
    assert axes is not None
    assert len(axes.si_edges) == 3
    assert axes.si_parity == "ODD"
    assert axes.property1_ok and axes.property2_ok


def test_select_axis_set_even_chain(even_chain):
    axes = select_axis_set(even_chain)
    assert axes is not None
    assert len(axes.si_edges) == 2
    assert axes.si_parity == "EVEN"


def test_select_axis_set_two_cycles(two_odd_board):
    axes = select_axis_set(two_odd_board)
    assert axes is not None
    assert tuple(axes.si_edges) == (2, 8)


def test_select_axis_set_absent_on_uncovered_join(uncovered_join):
    assert select_axis_set(uncovered_join) is None


def test_select_axis_set_repaired():
    board = build_cactus(fx.repaired_join_spec())
    axes = select_axis_set(board)
    assert axes is not None
    assert len(axes.si_edges) == 5
    assert axes.si_parity == "ODD"


def test_select_rejects_non_cactus(k4):
    with pytest.raises(UnsupportedBoardError):
        select_axis_set(k4)


def test_drawn_axes_violate_coverage(uncovered_join):
    drawn = fx.uncovered_join_drawn_axes(uncovered_join)
    assert drawn.property1_ok
    assert not drawn.property2_ok
    assert len(drawn.si_edges) == 4


def test_parity_invariance_examples(even_chain):
    rep = si_parity_invariance_check(even_chain)
    assert rep.invariant and rep.parities == ("EVEN",)

    rep = si_parity_invariance_check(build_cactus(fx.two_cycle_spec(5, 5)))
    assert rep.invariant and rep.si_counts == (2,)

    rep = si_parity_invariance_check(make_cycle_board(7))
    assert rep.axis_sets == 7
    assert rep.si_counts == (1,) and rep.parities == ("ODD",)


def test_axis_set_json_shape(odd_chain):
    doc = select_axis_set(odd_chain).to_dict()
    assert doc["si_parity"] == "ODD"
    entry = doc["axes"][0]
    assert set(entry) == {"cycle", "fixed", "si_edges"}
    assert "vertex" in entry["fixed"] and "edge" in entry["fixed"]
