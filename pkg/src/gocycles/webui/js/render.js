// SVG board rendering with an in-situ direction picker: clicking an edge
// shows the two candidate arrowheads on the edge itself, so the choice of
// direction is made where it matters.
import { fitToBox, layoutPositions } from "./layout.js";
const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 720;
const HEIGHT = 520;
function el(name, attrs = {}) {
    const node = document.createElementNS(SVG_NS, name);
    for (const [key, value] of Object.entries(attrs)) {
        node.setAttribute(key, String(value));
    }
    return node;
}
export class BoardRenderer {
    svg;
    handlers;
    picker = { edge: null };
    constructor(svg, handlers) {
        this.svg = svg;
        this.handlers = handlers;
        svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    }
    clearPicker() {
        this.picker.edge = null;
    }
    render(view) {
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
    renderCompletedCell(view, positions) {
        if (view.status.kind !== "WIN_BY_CYCLE" || view.status.cell === null)
            return;
        const walk = view.board.cells[view.status.cell].walk;
        const pts = walk.map((v) => `${positions[v].x},${positions[v].y}`).join(" ");
        this.svg.append(el("polygon", { points: pts, class: "won-cell" }));
    }
    renderEdge(view, positions, id) {
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
        }
        else if (status.markable && view.status.kind === "ONGOING") {
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
    renderPickerLater() {
        // re-render is driven by the controller; a picker toggle only needs a
        // local refresh event
        this.svg.dispatchEvent(new CustomEvent("picker-toggle", { bubbles: true }));
    }
    renderPicker(group, view, a, b, id) {
        const status = view.edges[id];
        const options = [
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
    arrowHead(from, to, cls, t = 0.55) {
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
    renderVertex(view, positions, id) {
        const p = positions[id];
        const status = view.vertices[id];
        const classes = ["vertex"];
        if (status.almost_sink)
            classes.push("almost-sink");
        if (status.almost_source)
            classes.push("almost-source");
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
function pickClass(info) {
    if (!info.legal)
        return "pick illegal";
    if (info.completes)
        return "pick winning";
    if (info.death)
        return "pick death";
    return "pick";
}
function midpoint(a, b, t, offset) {
    const x = a.x + (b.x - a.x) * t;
    const y = a.y + (b.y - a.y) * t;
    const len = Math.hypot(b.x - a.x, b.y - a.y) || 1;
    return {
        x: x + (offset * (b.y - a.y)) / len,
        y: y - (offset * (b.x - a.x)) / len,
    };
}
