"""Game of Cycles: engine, solver, symmetry machinery, strategies and a
verification harness for boards built from cycles glued at vertices."""

from .board import (Board, BoardError, CactusSpec, Cell, Edge, InvalidSpecError,
                    StructureReport, Vertex, build_cactus, make_cycle_board,
                    parse_board, serialize_board, validate_structure)
from .rules import (Direction, GameState, Move, Outcome, OutcomeKind,
                    RuleViolation, apply_move, completed_cycle_cell, edge_status,
                    is_death_move, is_legal, legal_moves, new_game, outcome,
                    replay, vertex_status)
from .solver import SolveResult, outcome_labels, solve_board, solve_state
from .strategy import (StrategyFailure, StrategyInapplicable, StrategyKind,
                       StrategySession, TriangleCase, new_session, next_move,
                       triangle_case)
from .symmetry import (Axis, AxisSet, Involution, UnsupportedBoardError,
                       enumerate_axes, find_involutions, select_axis_set,
                       si_parity_invariance_check)

__version__ = "0.1.0"
