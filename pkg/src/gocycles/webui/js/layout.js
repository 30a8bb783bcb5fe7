// Vertex positions for rendering: board coordinates when present, otherwise
// a small deterministic force-directed layout (render-only, never persisted).
export function layoutPositions(board) {
    const coords = board.vertices.map((v) => v.x !== undefined && v.y !== undefined ? { x: v.x, y: v.y } : null);
    if (coords.every((c) => c !== null)) {
        return coords;
    }
    return forceLayout(board);
}
function forceLayout(board, iterations = 300) {
    const n = board.vertices.length;
    // deterministic seed positions on a circle
    const points = Array.from({ length: n }, (_, i) => ({
        x: Math.cos((2 * Math.PI * i) / n) + 0.01 * i,
        y: Math.sin((2 * Math.PI * i) / n),
    }));
    const k = 1.0; // ideal edge length
    for (let step = 0; step < iterations; step++) {
        const fx = new Array(n).fill(0);
        const fy = new Array(n).fill(0);
        for (let i = 0; i < n; i++) {
            for (let j = i + 1; j < n; j++) {
                const dx = points[i].x - points[j].x;
                const dy = points[i].y - points[j].y;
                const d2 = Math.max(dx * dx + dy * dy, 1e-6);
                const rep = (k * k) / d2;
                fx[i] += dx * rep;
                fy[i] += dy * rep;
                fx[j] -= dx * rep;
                fy[j] -= dy * rep;
            }
        }
        for (const e of board.edges) {
            const dx = points[e.u].x - points[e.v].x;
            const dy = points[e.u].y - points[e.v].y;
            const d = Math.sqrt(Math.max(dx * dx + dy * dy, 1e-6));
            const att = (d * d) / k;
            fx[e.u] -= (dx / d) * att;
            fy[e.u] -= (dy / d) * att;
            fx[e.v] += (dx / d) * att;
            fy[e.v] += (dy / d) * att;
        }
        const temp = 0.05 * (1 - step / iterations) + 0.002;
        for (let i = 0; i < n; i++) {
            const mag = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]) || 1;
            points[i].x += (fx[i] / mag) * Math.min(mag, temp);
            points[i].y += (fy[i] / mag) * Math.min(mag, temp);
        }
    }
    return points;
}
/** Scale arbitrary positions into a width x height box with padding. */
export function fitToBox(points, width, height, pad = 40) {
    const xs = points.map((p) => p.x);
    const ys = points.map((p) => p.y);
    const minX = Math.min(...xs);
    const maxX = Math.max(...xs);
    const minY = Math.min(...ys);
    const maxY = Math.max(...ys);
    const spanX = maxX - minX || 1;
    const spanY = maxY - minY || 1;
    const scale = Math.min((width - 2 * pad) / spanX, (height - 2 * pad) / spanY);
    return points.map((p) => ({
        x: pad + (p.x - minX) * scale + (width - 2 * pad - spanX * scale) / 2,
        // flip y so boards drawn in math coordinates appear upright
        y: height - pad - (p.y - minY) * scale - (height - 2 * pad - spanY * scale) / 2,
    }));
}
