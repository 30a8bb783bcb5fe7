// Game controller: owns the current view, talks to the server, and surfaces
// results/errors through callbacks so it can run without a DOM (the tests
// drive it headless).

import { ApiError, GameClient, type CreateGameRequest, type GameView, type MoveDoc } from "./api.js";
import { isFinished } from "./model.js";

export interface ControllerEvents {
  onView(view: GameView): void;
  onToast(message: string): void;
  onEngineReply?(move: MoveDoc): void;
}

export function describeApiError(error: unknown): string {
  if (error instanceof ApiError) {
    if (typeof error.detail === "string") return error.detail;
    if (error.detail && typeof error.detail === "object") {
      const doc = error.detail as Record<string, unknown>;
      if ("violation" in doc) {
        const vertex = doc.vertex != null ? ` at vertex ${doc.vertex}` : "";
        return `illegal move: ${doc.violation}${vertex}`;
      }
      return JSON.stringify(doc);
    }
  }
  return String(error);
}

export class GameController {
  view: GameView | null = null;

  constructor(
    private readonly client: GameClient,
    private readonly events: ControllerEvents,
  ) {}

  async newGame(request: CreateGameRequest): Promise<boolean> {
    try {
      const created = await this.client.createGame(request);
      this.view = created.view;
      this.events.onView(created.view);
      return true;
    } catch (error) {
      this.events.onToast(describeApiError(error));
      return false;
    }
  }

  /** True when the human may move now. */
  myTurn(): boolean {
    if (!this.view || isFinished(this.view)) return false;
    if (this.view.engine === null) return true;
    return this.view.to_move !== this.view.engine_role;
  }

  async play(move: MoveDoc): Promise<boolean> {
    if (!this.view) return false;
    if (this.view.marks[move.edge] !== "U") {
      // optimistic local guard: the only legality the client decides itself
      this.events.onToast("that edge is already marked");
      return false;
    }
    try {
      const response = await this.client.postMove(this.view.id, move);
      this.view = response.view;
      if (response.engine_reply && this.events.onEngineReply) {
        this.events.onEngineReply(response.engine_reply);
      }
      if (response.engine_error) {
        this.events.onToast(`engine stuck: ${response.engine_error}`);
      }
      this.events.onView(response.view);
      return true;
    } catch (error) {
      this.events.onToast(describeApiError(error));
      return false;
    }
  }

  async refresh(): Promise<void> {
    if (!this.view) return;
    this.view = await this.client.getGame(this.view.id);
    this.events.onView(this.view);
  }
}
