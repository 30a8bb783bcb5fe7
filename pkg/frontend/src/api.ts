// Thin typed client over the game server's JSON API.

export type DirectionLetter = "F" | "B";

export interface MoveDoc {
  edge: number;
  direction: DirectionLetter;
}

export interface DirectionInfo {
  legal: boolean;
  completes: boolean;
  death: boolean;
}

export interface EdgeView {
  id: number;
  mark: "U" | DirectionLetter;
  markable: boolean;
  currently_playable: boolean;
  directions: Record<DirectionLetter, DirectionInfo>;
}

export interface VertexView {
  id: number;
  in: number;
  out: number;
  unmarked: number;
  sink: boolean;
  source: boolean;
  almost_sink: boolean;
  almost_source: boolean;
}

export interface BoardDoc {
  vertices: { id: number; x?: number; y?: number }[];
  edges: { id: number; u: number; v: number }[];
  cells: { id: number; walk: number[] }[];
}

export interface StatusDoc {
  kind: "ONGOING" | "WIN_BY_CYCLE" | "WIN_BY_LAST_MOVE";
  winner: number | null;
  cell: number | null;
}

export interface GameView {
  id: string;
  board: BoardDoc;
  marks: ("U" | DirectionLetter)[];
  history: MoveDoc[];
  to_move: number;
  status: StatusDoc;
  engine: string | null;
  engine_role: number | null;
  edges: EdgeView[];
  vertices: VertexView[];
}

export interface CreateGameRequest {
  board?: BoardDoc;
  cactus?: { cycles: number[]; joins: number[][] };
  cycle?: number;
  engine?: string | null;
  engine_role?: number;
}

export interface MoveResponse {
  view: GameView;
  engine_reply?: MoveDoc;
  engine_error?: string;
}

export interface AnalysisDoc {
  status: StatusDoc;
  move_labels: { move: MoveDoc; label: "WINNING" | "LOSING" }[] | null;
  winner_from_here: number | null;
  nodes: number;
  budget_exhausted: boolean;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const detail =
      body && typeof body === "object" && "detail" in body
        ? (body as { detail: unknown }).detail
        : (body ?? response.statusText);
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class GameClient {
  constructor(private readonly base: string = "") {}

  createGame(req: CreateGameRequest): Promise<{ id: string; view: GameView }> {
    return request(`${this.base}/api/games`, {
      method: "POST",
      body: JSON.stringify(req),
    });
  }

  getGame(id: string): Promise<GameView> {
    return request(`${this.base}/api/games/${id}`);
  }

  postMove(id: string, move: MoveDoc): Promise<MoveResponse> {
    return request(`${this.base}/api/games/${id}/moves`, {
      method: "POST",
      body: JSON.stringify(move),
    });
  }

  analysis(id: string, budget?: number): Promise<AnalysisDoc> {
    const query = budget ? `?budget=${budget}` : "";
    return request(`${this.base}/api/games/${id}/analysis${query}`);
  }
}
