// SVG board rendering with an in-situ direction picker: clicking an edge
// shows the two candidate arrowheads on the edge itself, so the choice of
// direction is made where it matters.

import type { DirectionLetter, GameView, MoveDoc } from "./api.js";
import { fitToBox, layoutPositions, type Point } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 720;
const HEIGHT = 520;

export interface RenderHandlers {
  onMove(move: MoveDoc): void;
}

function el<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

interface PickerState {
  edge: number | null;
}

export class BoardRenderer {
  private picker: PickerState = { edge: null };

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly handlers: RenderHandlers,
  ) {
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  }

  clearPicker(): void {
    this.picker.edge = null;
  }

  render(view: GameView): void {
    const positions = fitToBox(layoutPositions(view.board), WIDTH, HEIGHT);
    this.svg.replaceChildren();
    this.renderCompletedCell(view, positions);
    for (const edge of view.board.edges) {
      this.renderEdge(view, positions, edge.id);
    }
    for (const vertex of view.board.vertices) {
      this.renderVertex(view, positions, vertex.id);
    }
  }

  private renderCompletedCell(view: GameView, positions: Point[]): void {
    if (view.status.kind !== "WIN_BY_CYCLE" || view.status.cell === null) return;
    const walk = view.board.cells[view.status.cell].walk;
    const pts = walk.map((v) => `${positions[v].x},${positions[v].y}`).join(" ");
    this.svg.append(el("polygon", { points: pts, class: "won-cell" }));
  }

  private renderEdge(view: GameView, positions: Point[], id: number): void {
    const { u, v } = view.board.edges[id];
    const a = positions[u];
    const b = positions[v];
    const status = view.edges[id];
    const group = el("g", { class: "edge-group" });

    const line = el("line", {
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
      class: status.mark === "U"
        ? status.markable ? "edge unmarked" : "edge unmarkable"
        : "edge marked",
    });
    group.append(line);

    if (status.mark !== "U") {
      const [from, to] = status.mark === "F" ? [a, b] : [b, a];
      group.append(this.arrowHead(from, to, "arrow"));
      const index = view.history.findIndex((m) => m.edge === id);
      if (index >= 0) {
        const mid = midpoint(a, b, 0.5, 14);
        const label = el("text", { x: mid.x, y: mid.y, class: "move-number" });
        label.textContent = String(index + 1);
        group.append(label);
      }
    } else if (status.markable && view.status.kind === "ONGOING") {
      const hit = el("line", {
        x1: a.x, y1: a.y, x2: b.x, y2: b.y, class: "edge-hit",
      });
      hit.addEventListener("click", () => {
        this.picker.edge = this.picker.edge === id ? null : id;
        this.renderPickerLater();
      });
      group.append(hit);
      if (this.picker.edge === id) {
        this.renderPicker(group, view, a, b, id);
      }
    }
    this.svg.append(group);
  }

  private renderPickerLater(): void {
    // re-render is driven by the controller; a picker toggle only needs a
    // local refresh event
    this.svg.dispatchEvent(new CustomEvent("picker-toggle", { bubbles: true }));
  }

  private renderPicker(
    group: SVGGElement,
    view: GameView,
    a: Point,
    b: Point,
    id: number,
  ): void {
    const status = view.edges[id];
    const options: [DirectionLetter, Point, Point][] = [
      ["F", a, b],
      ["B", b, a],
    ];
    for (const [direction, from, to] of options) {
      const info = status.directions[direction];
      const head = this.arrowHead(from, to, pickClass(info), direction === "F" ? 0.62 : 0.38);
      if (info.legal) {
        head.addEventListener("click", () => {
          this.picker.edge = null;
          this.handlers.onMove({ edge: id, direction });
        });
      }
      group.append(head);
      if (info.legal && info.death && !info.completes) {
        const at = midpoint(from, to, direction === "F" ? 0.62 : 0.38, -12);
        const badge = el("text", { x: at.x, y: at.y, class: "death-badge" });
        badge.textContent = "†"; // dagger: this direction hands over a win
        group.append(badge);
      }
    }
  }

  private arrowHead(from: Point, to: Point, cls: string, t = 0.55): SVGPolygonElement {
    const tip = { x: from.x + (to.x - from.x) * t, y: from.y + (to.y - from.y) * t };
    const angle = Math.atan2(to.y - from.y, to.x - from.x);
    const size = 11;
    const left = {
      x: tip.x - size * Math.cos(angle - Math.PI / 7),
      y: tip.y - size * Math.sin(angle - Math.PI / 7),
    };
    const right = {
      x: tip.x - size * Math.cos(angle + Math.PI / 7),
      y: tip.y - size * Math.sin(angle + Math.PI / 7),
    };
    return el("polygon", {
      points: `${tip.x},${tip.y} ${left.x},${left.y} ${right.x},${right.y}`,
      class: cls,
    });
  }

  private renderVertex(view: GameView, positions: Point[], id: number): void {
    const p = positions[id];
    const status = view.vertices[id];
    const classes = ["vertex"];
    if (status.almost_sink) classes.push("almost-sink");
    if (status.almost_source) classes.push("almost-source");
    const circle = el("circle", { cx: p.x, cy: p.y, r: 7, class: classes.join(" ") });
    const title = el("title");
    title.textContent =
      `vertex ${id}: in ${status.in}, out ${status.out}, unmarked ${status.unmarked}` +
      (status.almost_sink ? " (almost-sink)" : "") +
      (status.almost_source ? " (almost-source)" : "");
    circle.append(title);
    this.svg.append(circle);
  }
}

function pickClass(info: { legal: boolean; completes: boolean; death: boolean }): string {
  if (!info.legal) return "pick illegal";
  if (info.completes) return "pick winning";
  if (info.death) return "pick death";
  return "pick";
}

function midpoint(a: Point, b: Point, t: number, offset: number): Point {
  const x = a.x + (b.x - a.x) * t;
  const y = a.y + (b.y - a.y) * t;
  const len = Math.hypot(b.x - a.x, b.y - a.y) || 1;
  return {
    x: x + (offset * (b.y - a.y)) / len,
    y: y - (offset * (b.x - a.x)) / len,
  };
}
