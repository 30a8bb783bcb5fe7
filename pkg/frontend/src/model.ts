// Pure view-model helpers: move-log formatting, transcripts and simple
// move picking.  No DOM access here so everything is unit-testable.

import type { DirectionLetter, GameView, MoveDoc } from "./api.js";

export function isFinished(view: GameView): boolean {
  return view.status.kind !== "ONGOING";
}

export function humanRole(view: GameView): number {
  if (view.engine_role === null) return view.to_move;
  return view.engine_role === 1 ? 2 : 1;
}

/** Move-log lines numbered from 1; odd numbers belong to Player 1. */
export function moveLogLines(view: GameView): string[] {
  return view.history.map((move, i) => {
    const player = i % 2 === 0 ? 1 : 2;
    const edge = view.board.edges[move.edge];
    const [from, to] =
      move.direction === "F" ? [edge.u, edge.v] : [edge.v, edge.u];
    return `${i + 1}. P${player}  ${from} → ${to}  (edge ${move.edge} ${move.direction})`;
  });
}

export function resultBanner(view: GameView): string | null {
  if (!isFinished(view)) return null;
  const how =
    view.status.kind === "WIN_BY_CYCLE"
      ? `completes cell ${view.status.cell}`
      : "makes the last move";
  return `Player ${view.status.winner} wins (${how})`;
}

/** Replay document accepted by `goc replay`. */
export function transcript(view: GameView): object {
  return { board: view.board, moves: view.history };
}

/**
 * Lowest playable move: first edge with a direction that is legal and
 * either completes a cell or is not a death move; falls back to any legal
 * direction when only death moves remain.
 */
export function firstPlayableMove(view: GameView): MoveDoc | null {
  const directions: DirectionLetter[] = ["F", "B"];
  for (const edge of view.edges) {
    if (edge.mark !== "U") continue;
    for (const d of directions) {
      const info = edge.directions[d];
      if (info.legal && (info.completes || !info.death)) {
        return { edge: edge.id, direction: d };
      }
    }
  }
  for (const edge of view.edges) {
    if (edge.mark !== "U") continue;
    for (const d of directions) {
      if (edge.directions[d].legal) return { edge: edge.id, direction: d };
    }
  }
  return null;
}

/** A winning move if one exists, otherwise any safe move (for the hint UI). */
export function pickHint(view: GameView): MoveDoc | null {
  for (const edge of view.edges) {
    if (edge.mark !== "U") continue;
    for (const d of ["F", "B"] as DirectionLetter[]) {
      const info = edge.directions[d];
      if (info.legal && info.completes) return { edge: edge.id, direction: d };
    }
  }
  return firstPlayableMove(view);
}
