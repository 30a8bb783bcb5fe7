"""Board model for the Game of Cycles: vertices, edges and explicit cells.

A game board is a simple connected planar graph together with its bounded
cells, each cell given explicitly as a counterclockwise boundary walk over
vertex ids.  Cells are trusted input: no planarity testing or face
computation happens here.  Boards are immutable after construction and safe
to share between threads.

Generators are provided for single cycle boards and for cactus boards built
from cycles glued together at vertices, plus a JSON interchange format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence


class BoardError(ValueError):
    """Raised for malformed boards or board documents.

    ``path`` points at the offending element, e.g. ``cells[2].walk``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class InvalidSpecError(ValueError):
    """Raised for malformed cactus specs."""


@dataclass(frozen=True)
class Vertex:
    id: int
    x: Optional[float] = None
    y: Optional[float] = None


@dataclass(frozen=True)
class Edge:
    """Undirected edge with canonically ordered endpoints (u < v).

    The canonical orientation "forward" means u -> v.
    """

    id: int
    u: int
    v: int


@dataclass(frozen=True)
class Cell:
    """Bounded face, stored as a counterclockwise closed walk of vertex ids."""

    id: int
    walk: tuple[int, ...]


class Board:
    """Immutable game board with derived incidence structures.

    Derived attributes:
      adjacency[v]   -- tuple of incident edge ids
      degree[v]      -- len(adjacency[v])
      edge_cells[e]  -- tuple of cell ids containing edge e
      cell_edges[c]  -- tuple of (edge_id, aligned) pairs around the walk,
                        aligned being True when the walk traverses u -> v
    """

    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge],
                 cells: Sequence[Cell]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.cells = tuple(cells)
        self._validate_ids()
        self._edge_by_pair: dict[tuple[int, int], int] = {}
        for e in self.edges:
            if e.u == e.v:
                raise BoardError("loop edge", f"edges[{e.id}]")
            if not (0 <= e.u < len(self.vertices)) or not (0 <= e.v < len(self.vertices)):
                raise BoardError("endpoint out of range", f"edges[{e.id}]")
            if e.u >= e.v:
                raise BoardError("endpoints not canonically ordered (u < v)", f"edges[{e.id}]")
            if (e.u, e.v) in self._edge_by_pair:
                raise BoardError(f"duplicate edge ({e.u},{e.v})", f"edges[{e.id}]")
            self._edge_by_pair[(e.u, e.v)] = e.id

        adjacency: list[list[int]] = [[] for _ in self.vertices]
        for e in self.edges:
            adjacency[e.u].append(e.id)
            adjacency[e.v].append(e.id)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self.degree = tuple(len(a) for a in self.adjacency)

        cell_edges: list[tuple[tuple[int, bool], ...]] = []
        edge_cells: list[list[int]] = [[] for _ in self.edges]
        edge_cells_aligned: list[list[tuple[int, bool]]] = [[] for _ in self.edges]
        for c in self.cells:
            if len(c.walk) < 3:
                raise BoardError("cell walk shorter than 3", f"cells[{c.id}].walk")
            seen_edges: set[int] = set()
            around: list[tuple[int, bool]] = []
            for i, a in enumerate(c.walk):
                b = c.walk[(i + 1) % len(c.walk)]
                eid = self._edge_by_pair.get((min(a, b), max(a, b)))
                if eid is None:
                    raise BoardError(f"walk step ({a},{b}) is not an edge",
                                     f"cells[{c.id}].walk[{i}]")
                if eid in seen_edges:
                    raise BoardError(f"edge {eid} repeated inside one walk",
                                     f"cells[{c.id}].walk[{i}]")
                seen_edges.add(eid)
                around.append((eid, a < b))
                edge_cells[eid].append(c.id)
                edge_cells_aligned[eid].append((c.id, a < b))
            cell_edges.append(tuple(around))
        self.cell_edges = tuple(cell_edges)
        self.edge_cells = tuple(tuple(cs) for cs in edge_cells)
        self.edge_cells_aligned = tuple(tuple(cs) for cs in edge_cells_aligned)
        for eid, cs in enumerate(self.edge_cells):
            if len(cs) > 2:
                raise BoardError("edge belongs to more than 2 cells", f"edges[{eid}]")
        self._check_connected()

    def _validate_ids(self) -> None:
        for i, v in enumerate(self.vertices):
            if v.id != i:
                raise BoardError(f"vertex id {v.id} at index {i} (ids must be dense)",
                                 f"vertices[{i}]")
        for i, e in enumerate(self.edges):
            if e.id != i:
                raise BoardError(f"edge id {e.id} at index {i} (ids must be dense)",
                                 f"edges[{i}]")
        for i, c in enumerate(self.cells):
            if c.id != i:
                raise BoardError(f"cell id {c.id} at index {i} (ids must be dense)",
                                 f"cells[{i}]")

    def _check_connected(self) -> None:
        if not self.vertices:
            raise BoardError("board has no vertices")
        seen = {0}
        stack = [0]
        ends = {e.id: (e.u, e.v) for e in self.edges}
        while stack:
            v = stack.pop()
            for eid in self.adjacency[v]:
                u, w = ends[eid]
                nxt = w if v == u else u
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(self.vertices):
            raise BoardError("graph is not connected")

    # -- lookups -----------------------------------------------------------

    def edge_between(self, a: int, b: int) -> int:
        """Edge id joining vertices a and b (order-insensitive)."""
        eid = self._edge_by_pair.get((min(a, b), max(a, b)))
        if eid is None:
            raise BoardError(f"no edge between {a} and {b}")
        return eid

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Board):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.cells == other.cells)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, self.cells))

    def __repr__(self) -> str:
        return (f"Board(V={self.n_vertices}, E={self.n_edges}, "
                f"cells={self.n_cells})")


@dataclass(frozen=True)
class CactusSpec:
    """Cycles glued at single vertices.

    ``joins`` entries are (cycle_a, pos_a, cycle_b, pos_b): the vertex at
    position pos_b of cycle_b is glued onto the vertex at position pos_a of
    cycle_a.  The join relation must form a tree over cycle indices, which
    guarantees the cactus property.
    """

    cycles: tuple[int, ...]
    joins: tuple[tuple[int, int, int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.cycles:
            raise InvalidSpecError("spec needs at least one cycle")
        for i, m in enumerate(self.cycles):
            if m < 3:
                raise InvalidSpecError(f"cycles[{i}]={m} is below the minimum length 3")
        k = len(self.cycles)
        if len(self.joins) != k - 1:
            raise InvalidSpecError(
                f"{k} cycles need exactly {k - 1} joins to form a tree, got {len(self.joins)}")
        parent = list(range(k))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j, (a, pa, b, pb) in enumerate(self.joins):
            for side, (cyc, pos) in enumerate(((a, pa), (b, pb))):
                if not (0 <= cyc < k):
                    raise InvalidSpecError(f"joins[{j}]: cycle index {cyc} out of range")
                if not (0 <= pos < self.cycles[cyc]):
                    raise InvalidSpecError(f"joins[{j}]: position {pos} out of range "
                                           f"for cycle of length {self.cycles[cyc]}")
            if a == b:
                raise InvalidSpecError(f"joins[{j}]: cycle joined to itself")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise InvalidSpecError(f"joins[{j}]: join relation contains a cycle")
            parent[ra] = rb

    @staticmethod
    def from_dict(doc: dict) -> "CactusSpec":
        try:
            cycles = tuple(int(m) for m in doc["cycles"])
            joins = tuple(tuple(int(x) for x in j) for j in doc.get("joins", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpecError(f"malformed cactus spec: {exc}") from exc
        for j in joins:
            if len(j) != 4:
                raise InvalidSpecError(f"join {j} must have 4 entries")
        return CactusSpec(cycles, joins)  # type: ignore[arg-type]

    def to_dict(self) -> dict:
        return {"cycles": list(self.cycles), "joins": [list(j) for j in self.joins]}


@dataclass(frozen=True)
class StructureReport:
    """Classification flags from :func:`validate_structure`."""

    is_cactus: bool
    is_triangle_free: bool
    every_edge_in_exactly_one_cycle: bool
    min_degree: int
    high_degree_vertices: tuple[int, ...]


def make_cycle_board(n: int) -> Board:
    """Cycle board on n vertices: n edges and a single cell, laid out on a
    regular n-gon (counterclockwise)."""
    if n < 3:
        raise BoardError(f"cycle length must be at least 3, got {n}")
    vertices = [Vertex(k, math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
                for k in range(n)]
    edges = [Edge(k, k, k + 1) for k in range(n - 1)] + [Edge(n - 1, 0, n - 1)]
    return Board(vertices, edges, [Cell(0, tuple(range(n)))])


def build_cactus(spec: CactusSpec) -> Board:
    """Assemble a cactus board from the spec.

    Vertex ids are assigned deterministically: cycles are scanned in spec
    order, positions 0..m-1 within each, and every glue class gets an id the
    first time one of its slots is seen.  Edge ids follow the same scan, one
    edge per walk step, so each spec cycle becomes exactly one cell.
    """
    k = len(spec.cycles)
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(slot: tuple[int, int]) -> tuple[int, int]:
        parent.setdefault(slot, slot)
        while parent[slot] != slot:
            parent[slot] = parent[parent[slot]]
            slot = parent[slot]
        return slot

    for a, pa, b, pb in spec.joins:
        ra, rb = find((a, pa)), find((b, pb))
        if ra != rb:
            parent[ra] = rb

    vertex_of: dict[tuple[int, int], int] = {}
    n_vertices = 0
    for ci, m in enumerate(spec.cycles):
        for pos in range(m):
            root = find((ci, pos))
            if root not in vertex_of:
                vertex_of[root] = n_vertices
                n_vertices += 1

    def vid(ci: int, pos: int) -> int:
        return vertex_of[find((ci, pos))]

    edges: list[Edge] = []
    cells: list[Cell] = []
    for ci, m in enumerate(spec.cycles):
        ids = [vid(ci, pos) for pos in range(m)]
        if len(set(ids)) != m:
            raise InvalidSpecError(f"cycle {ci} has glued-together positions")
        for pos in range(m):
            a, b = ids[pos], ids[(pos + 1) % m]
            edges.append(Edge(len(edges), min(a, b), max(a, b)))
        cells.append(Cell(ci, tuple(ids)))

    coords = _cactus_layout(spec, vid, n_vertices)
    vertices = [Vertex(i, *coords[i]) for i in range(n_vertices)]
    return Board(vertices, edges, cells)


def _cactus_layout(spec: CactusSpec, vid, n_vertices: int) -> list[tuple[float, float]]:
    """Render-only radial layout: each cycle is a regular polygon with unit
    edges, children hang off their join vertex away from the parent center."""
    coords: list[Optional[tuple[float, float]]] = [None] * n_vertices
    centers: dict[int, tuple[float, float]] = {}

    def radius(m: int) -> float:
        return 1.0 / (2.0 * math.sin(math.pi / m))

    def place(ci: int, anchor_pos: int, anchor_xy: tuple[float, float],
              center: tuple[float, float]) -> None:
        m = spec.cycles[ci]
        r = radius(m)
        base = math.atan2(anchor_xy[1] - center[1], anchor_xy[0] - center[0])
        centers[ci] = center
        for pos in range(m):
            ang = base + 2 * math.pi * ((pos - anchor_pos) % m) / m
            xy = (center[0] + r * math.cos(ang), center[1] + r * math.sin(ang))
            v = vid(ci, pos)
            if coords[v] is None:
                coords[v] = xy

    neighbours: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(spec.cycles))}
    for a, pa, b, pb in spec.joins:
        neighbours[a].append((b, pb, pa))
        neighbours[b].append((a, pa, pb))

    r0 = radius(spec.cycles[0])
    place(0, 0, (r0, 0.0), (0.0, 0.0))
    placed = {0}
    queue = [0]
    spread: dict[int, int] = {}
    while queue:
        ci = queue.pop(0)
        for cj, pos_j, pos_i in neighbours[ci]:
            if cj in placed:
                continue
            v = vid(ci, pos_i)
            anchor = coords[v]
            assert anchor is not None
            cx, cy = centers[ci]
            dx, dy = anchor[0] - cx, anchor[1] - cy
            norm = math.hypot(dx, dy) or 1.0
            # several children on one vertex fan out instead of overlapping
            n_prev = spread.get(v, 0)
            spread[v] = n_prev + 1
            rot = n_prev * (math.pi / 3)
            ux = (dx * math.cos(rot) - dy * math.sin(rot)) / norm
            uy = (dx * math.sin(rot) + dy * math.cos(rot)) / norm
            rj = radius(spec.cycles[cj])
            place(cj, pos_j, anchor, (anchor[0] + ux * rj, anchor[1] + uy * rj))
            placed.add(cj)
            queue.append(cj)
    return [xy if xy is not None else (0.0, 0.0) for xy in coords]


def validate_structure(board: Board) -> StructureReport:
    """Pure classification of a board against the cactus-family properties."""
    cell_vsets = [set(c.walk) for c in board.cells]
    pairwise_ok = True
    for i in range(len(cell_vsets)):
        for j in range(i + 1, len(cell_vsets)):
            if len(cell_vsets[i] & cell_vsets[j]) > 1:
                pairwise_ok = False

    # cell / cut-vertex incidence: cells plus vertices lying in >= 2 cells
    cells_of_vertex: dict[int, list[int]] = {}
    for c in board.cells:
        for v in set(c.walk):
            cells_of_vertex.setdefault(v, []).append(c.id)
    shared = [v for v, cs in cells_of_vertex.items() if len(cs) >= 2]
    n_nodes = len(board.cells) + len(shared)
    n_links = sum(len(cells_of_vertex[v]) for v in shared)
    # connectivity of the incidence graph via union-find over cells
    parent = list(range(len(board.cells)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comp = len(board.cells) + len(shared)
    for v in shared:
        first = cells_of_vertex[v][0]
        comp -= 1  # vertex node merges into its first cell
        for other in cells_of_vertex[v][1:]:
            ra, rb = find(first), find(other)
            if ra != rb:
                parent[ra] = rb
                comp -= 1
    incidence_is_tree = (n_links == n_nodes - 1 and comp == 1) if n_nodes > 0 else True
    if len(board.cells) <= 1:
        incidence_is_tree = True

    every_edge_once = all(len(cs) == 1 for cs in board.edge_cells)
    return StructureReport(
        is_cactus=pairwise_ok and incidence_is_tree,
        is_triangle_free=all(len(c.walk) != 3 for c in board.cells),
        every_edge_in_exactly_one_cycle=every_edge_once,
        min_degree=min(board.degree),
        high_degree_vertices=tuple(v for v in range(board.n_vertices)
                                   if board.degree[v] >= 4),
    )


# -- JSON interchange -------------------------------------------------------

def board_to_dict(board: Board) -> dict:
    verts = []
    for v in board.vertices:
        rec: dict = {"id": v.id}
        if v.x is not None and v.y is not None:
            rec["x"] = v.x
            rec["y"] = v.y
        verts.append(rec)
    return {
        "vertices": verts,
        "edges": [{"id": e.id, "u": e.u, "v": e.v} for e in board.edges],
        "cells": [{"id": c.id, "walk": list(c.walk)} for c in board.cells],
    }


def board_from_dict(doc: dict) -> Board:
    if not isinstance(doc, dict):
        raise BoardError("board document must be an object")
    for key in ("vertices", "edges", "cells"):
        if key not in doc or not isinstance(doc[key], list):
            raise BoardError("missing or non-array field", key)
    vertices = []
    for i, rec in enumerate(doc["vertices"]):
        try:
            vertices.append(Vertex(int(rec["id"]),
                                   float(rec["x"]) if "x" in rec else None,
                                   float(rec["y"]) if "y" in rec else None))
        except (KeyError, TypeError, ValueError) as exc:
            raise BoardError(f"malformed vertex: {exc}", f"vertices[{i}]") from exc
    edges = []
    for i, rec in enumerate(doc["edges"]):
        try:
            edges.append(Edge(int(rec["id"]), int(rec["u"]), int(rec["v"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise BoardError(f"malformed edge: {exc}", f"edges[{i}]") from exc
    cells = []
    for i, rec in enumerate(doc["cells"]):
        try:
            cells.append(Cell(int(rec["id"]), tuple(int(v) for v in rec["walk"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise BoardError(f"malformed cell: {exc}", f"cells[{i}]") from exc
    return Board(vertices, edges, cells)


def serialize_board(board: Board) -> str:
    return json.dumps(board_to_dict(board), indent=2)


def parse_board(text: str) -> Board:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BoardError(f"invalid JSON: {exc}") from exc
    return board_from_dict(doc)
