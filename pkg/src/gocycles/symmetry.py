"""Symmetry machinery for game boards.

Two kinds of symmetry are modelled:

* global involutions -- non-trivial self-inverse automorphisms of the whole
  board that also preserve the cell structure, found by degree-partitioned
  backtracking (desk-scale boards only);
* per-cycle reflection axes -- the dihedral reflections of a single cycle in
  a cactus board, acting combinatorially on the cycle's vertices and edges.
  Coordinates are ignored: an axis is a reflection of walk positions.

An axis set assigns one reflection to every cycle.  The strategy machinery
cares about two properties: every axis pairs high-degree vertices (degree 4
or more) only with high-degree vertices, and every high-degree vertex is
fixed by at least one chosen axis.  Self-involutive (axis-fixed) edges and
their parity drive who wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .board import Board, validate_structure

EVEN = "EVEN"
ODD = "ODD"


class UnsupportedBoardError(ValueError):
    """The board falls outside what this symmetry operation supports."""


@dataclass(frozen=True)
class Involution:
    """A self-inverse, cell-preserving automorphism with its induced maps."""

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    cell_map: tuple[int, ...]

    @property
    def self_involutive_edges(self) -> tuple[int, ...]:
        return tuple(e for e, img in enumerate(self.edge_map) if img == e)

    @property
    def fixed_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, img in enumerate(self.vertex_map) if img == v)

    def edge_class(self, edge: int) -> str:
        return "SELF_INVOLUTIVE" if self.edge_map[edge] == edge else "PARTNERED"

    def cell_class(self, board: Board, cell: int) -> str:
        if self.cell_map[cell] == cell:
            return "SELF"
        edges = {e for e, _ in board.cell_edges[cell]}
        if any(self.edge_map[e] in edges for e in edges):
            return "PART"
        return "NOWHERE"

    def to_dict(self) -> dict:
        return {
            "vertex_map": list(self.vertex_map),
            "edge_map": list(self.edge_map),
            "cell_map": list(self.cell_map),
            "self_involutive_edges": list(self.self_involutive_edges),
        }


def find_involutions(board: Board, max_vertices: int = 16) -> list[Involution]:
    """All non-identity involutive automorphisms preserving the cell set.

    Backtracking over vertices in id order with degree pruning; output order
    is lexicographic in the vertex map, hence deterministic.  Guarded to
    desk-scale boards.
    """
    n = board.n_vertices
    if n > max_vertices:
        raise UnsupportedBoardError(
            f"involution search is limited to {max_vertices} vertices, board has {n}")
    adj = [set() for _ in range(n)]
    for e in board.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    deg = board.degree
    mapping = [-1] * n
    found: list[Involution] = []

    def extend(v: int) -> None:
        while v < n and mapping[v] != -1:
            v += 1
        if v == n:
            if any(mapping[i] != i for i in range(n)):
                inv = _induced_involution(board, tuple(mapping))
                if inv is not None:
                    found.append(inv)
            return
        for w in range(n):
            if deg[w] != deg[v]:
                continue
            if mapping[w] not in (-1, v):
                continue
            if w == v and mapping[v] not in (-1, v):
                continue
            ok = True
            for u in range(n):
                if mapping[u] == -1 or u == v:
                    continue
                if (u in adj[v]) != (mapping[u] in adj[w]):
                    ok = False
                    break
            if ok and w != v and (v in adj[w]) != (w in adj[v]):
                ok = False
            if not ok:
                continue
            prev_v, prev_w = mapping[v], mapping[w]
            mapping[v] = w
            mapping[w] = v
            extend(v + 1)
            mapping[v] = prev_v
            mapping[w] = prev_w
            if w != v:
                mapping[v] = -1

    extend(0)
    return found


def _induced_involution(board: Board, vertex_map: tuple[int, ...]) -> Optional[Involution]:
    """Lift a vertex involution to edges and cells; None if cells break."""
    edge_map = []
    for e in board.edges:
        a, b = vertex_map[e.u], vertex_map[e.v]
        try:
            edge_map.append(board.edge_between(a, b))
        except Exception:
            return None
    cell_edge_sets = [frozenset(e for e, _ in board.cell_edges[c.id]) for c in board.cells]
    lookup = {s: i for i, s in enumerate(cell_edge_sets)}
    cell_map = []
    for c in board.cells:
        image = frozenset(edge_map[e] for e, _ in board.cell_edges[c.id])
        target = lookup.get(image)
        if target is None:
            return None
        cell_map.append(target)
    return Involution(vertex_map, tuple(edge_map), tuple(cell_map))


@dataclass(frozen=True)
class Axis:
    """A combinatorial reflection of one cycle (cell) of the board.

    ``spin`` is the reflection constant: walk position k maps to
    (spin - k) mod m.  Odd cycles fix one vertex and one edge midpoint; even
    cycles fix either two vertices or two edge midpoints.
    """

    cycle: int
    spin: int
    fixed_vertices: tuple[int, ...]
    fixed_edges: tuple[int, ...]
    vertex_partner: dict
    edge_partner: dict

    @property
    def self_involutive_edges(self) -> tuple[int, ...]:
        return self.fixed_edges

    def to_dict(self) -> dict:
        fixed: dict = {}
        if len(self.fixed_vertices) == 1:
            fixed["vertex"] = self.fixed_vertices[0]
        elif self.fixed_vertices:
            fixed["vertices"] = list(self.fixed_vertices)
        if len(self.fixed_edges) == 1:
            fixed["edge"] = self.fixed_edges[0]
        elif self.fixed_edges:
            fixed["edges"] = list(self.fixed_edges)
        return {"cycle": self.cycle, "fixed": fixed,
                "si_edges": list(self.fixed_edges)}


def enumerate_axes(board: Board, cycle: int) -> list[Axis]:
    """All m reflections of an m-cycle cell, in deterministic order.

    Axes that fix vertices come first (by smallest fixed walk position),
    then pure edge axes (by smallest fixed edge position).  No property
    filtering happens here.
    """
    if not (0 <= cycle < board.n_cells):
        raise ValueError(f"cell id {cycle} out of range")
    for e, _ in board.cell_edges[cycle]:
        if len(board.edge_cells[e]) != 1:
            raise UnsupportedBoardError(
                f"edge {e} of cell {cycle} is shared with another cell")
    walk = board.cells[cycle].walk
    m = len(walk)
    step_edge = [e for e, _ in board.cell_edges[cycle]]  # edge at walk step k

    axes = []
    for spin in range(m):
        fixed_pos = [k for k in range(m) if (2 * k - spin) % m == 0]
        fixed_steps = [k for k in range(m) if (2 * k + 1 - spin) % m == 0]
        vp = {}
        ep = {}
        for k in range(m):
            vp[walk[k]] = walk[(spin - k) % m]
            ep[step_edge[k]] = step_edge[(spin - k - 1) % m]
        axes.append(Axis(
            cycle=cycle,
            spin=spin,
            fixed_vertices=tuple(walk[k] for k in fixed_pos),
            fixed_edges=tuple(step_edge[k] for k in fixed_steps),
            vertex_partner=vp,
            edge_partner=ep,
        ))

    def order(axis: Axis):
        if axis.fixed_vertices:
            return (0, min(walk.index(v) for v in axis.fixed_vertices), axis.spin)
        return (1, min(step_edge.index(e) for e in axis.fixed_edges), axis.spin)

    axes.sort(key=order)
    return axes


@dataclass(frozen=True)
class AxisSet:
    """One chosen axis per cycle, with the derived bookkeeping."""

    axes: dict
    property1_ok: bool
    property2_ok: bool
    si_edges: tuple[int, ...]
    si_parity: str

    def edge_partner(self, edge: int) -> int:
        for axis in self.axes.values():
            if edge in axis.edge_partner:
                return axis.edge_partner[edge]
        raise KeyError(f"edge {edge} not covered by any axis")

    def axis_of_edge(self, board: Board, edge: int) -> Axis:
        cell = board.edge_cells[edge][0]
        return self.axes[cell]

    def to_dict(self) -> dict:
        return {
            "axes": [self.axes[c].to_dict() for c in sorted(self.axes)],
            "si_edges": list(self.si_edges),
            "si_parity": self.si_parity,
            "property1_ok": self.property1_ok,
            "property2_ok": self.property2_ok,
        }


def axis_respects_degrees(board: Board, axis: Axis) -> bool:
    """Property 1 for one axis: no high-degree vertex partnered with a
    degree-2 vertex."""
    for v, w in axis.vertex_partner.items():
        if (board.degree[v] >= 4) != (board.degree[w] >= 4):
            return False
    return True


def make_axis_set(board: Board, axes_by_cell: dict) -> AxisSet:
    """Assemble an AxisSet from explicit per-cycle choices and compute the
    property flags (no filtering: broken sets are representable)."""
    if sorted(axes_by_cell) != list(range(board.n_cells)):
        raise UnsupportedBoardError("an axis is required for every cell")
    prop1 = all(axis_respects_degrees(board, axis) for axis in axes_by_cell.values())
    high = [v for v in range(board.n_vertices) if board.degree[v] >= 4]
    covered = set()
    for axis in axes_by_cell.values():
        covered.update(axis.fixed_vertices)
    prop2 = all(v in covered for v in high)
    si = sorted(e for axis in axes_by_cell.values() for e in axis.fixed_edges)
    return AxisSet(dict(axes_by_cell), prop1, prop2, tuple(si),
                   EVEN if len(si) % 2 == 0 else ODD)


def _axis_set_candidates(board: Board) -> list[list[Axis]]:
    report = validate_structure(board)
    if not (report.is_cactus and report.is_triangle_free
            and report.every_edge_in_exactly_one_cycle):
        raise UnsupportedBoardError(
            "axis selection needs a triangle-free cactus in which every edge "
            "belongs to exactly one cycle")
    return [[axis for axis in enumerate_axes(board, c)
             if axis_respects_degrees(board, axis)]
            for c in range(board.n_cells)]


def select_axis_set(board: Board) -> Optional[AxisSet]:
    """First axis assignment (deterministic order) meeting both properties,
    or None when the backtracking space is exhausted."""
    per_cell = _axis_set_candidates(board)
    if any(not c for c in per_cell):
        return None
    high = {v for v in range(board.n_vertices) if board.degree[v] >= 4}
    cells_of_vertex: dict[int, set[int]] = {v: set() for v in high}
    for c in range(board.n_cells):
        for v in set(board.cells[c].walk):
            if v in high:
                cells_of_vertex[v].add(c)

    choice: list[Optional[Axis]] = [None] * board.n_cells

    def feasible(upto: int) -> bool:
        # every high-degree vertex must still be coverable
        for v, cells in cells_of_vertex.items():
            if any(c < upto and choice[c] is not None
                   and v in choice[c].fixed_vertices for c in cells):
                continue
            if all(c < upto for c in cells):
                return False
        return True

    def assign(c: int) -> Optional[AxisSet]:
        if c == board.n_cells:
            result = make_axis_set(board, {i: a for i, a in enumerate(choice)})
            return result if result.property2_ok else None
        for axis in per_cell[c]:
            choice[c] = axis
            if feasible(c + 1):
                result = assign(c + 1)
                if result is not None:
                    return result
            choice[c] = None
        return None

    return assign(0)


def enumerate_axis_sets(board: Board) -> list[AxisSet]:
    """Every axis assignment satisfying both properties (desk scale)."""
    per_cell = _axis_set_candidates(board)
    results: list[AxisSet] = []
    if any(not c for c in per_cell):
        return results

    choice: list[Optional[Axis]] = [None] * board.n_cells

    def assign(c: int) -> None:
        if c == board.n_cells:
            candidate = make_axis_set(board, {i: a for i, a in enumerate(choice)})
            if candidate.property2_ok:
                results.append(candidate)
            return
        for axis in per_cell[c]:
            choice[c] = axis
            assign(c + 1)
            choice[c] = None

    assign(0)
    return results


@dataclass(frozen=True)
class ParityInvarianceReport:
    axis_sets: int
    si_counts: tuple[int, ...]
    parities: tuple[str, ...]
    invariant: bool

    def to_dict(self) -> dict:
        return {"axis_sets": self.axis_sets, "si_counts": list(self.si_counts),
                "parities": list(self.parities), "invariant": self.invariant}


def si_parity_invariance_check(board: Board) -> ParityInvarianceReport:
    """Enumerate every valid axis set and check they agree on SI parity."""
    sets = enumerate_axis_sets(board)
    counts = sorted({len(s.si_edges) for s in sets})
    parities = sorted({s.si_parity for s in sets})
    return ParityInvarianceReport(len(sets), tuple(counts), tuple(parities),
                                  len(parities) <= 1)


def axis_with_fixed_vertex(board: Board, cycle: int, vertex: int) -> Axis:
    """The reflection of ``cycle`` fixing ``vertex`` (unique for odd cycles)."""
    for axis in enumerate_axes(board, cycle):
        if vertex in axis.fixed_vertices:
            return axis
    raise UnsupportedBoardError(f"no axis of cell {cycle} fixes vertex {vertex}")


def axis_with_fixed_edge(board: Board, cycle: int, edge: int) -> Axis:
    """The reflection of ``cycle`` fixing ``edge``."""
    for axis in enumerate_axes(board, cycle):
        if edge in axis.fixed_edges:
            return axis
    raise UnsupportedBoardError(f"no axis of cell {cycle} fixes edge {edge}")
