// Thin typed client over the game server's JSON API.
export class ApiError extends Error {
    status;
    detail;
    constructor(status, detail) {
        super(typeof detail === "string" ? detail : JSON.stringify(detail));
        this.status = status;
        this.detail = detail;
    }
}
async function request(url, init) {
    const response = await fetch(url, {
        headers: { "content-type": "application/json" },
        ...init,
    });
    const body = await response.json().catch(() => null);
    if (!response.ok) {
        const detail = body && typeof body === "object" && "detail" in body
            ? body.detail
            : (body ?? response.statusText);
        throw new ApiError(response.status, detail);
    }
    return body;
}
export class GameClient {
    base;
    constructor(base = "") {
        this.base = base;
    }
    createGame(req) {
        return request(`${this.base}/api/games`, {
            method: "POST",
            body: JSON.stringify(req),
        });
    }
    getGame(id) {
        return request(`${this.base}/api/games/${id}`);
    }
    postMove(id, move) {
        return request(`${this.base}/api/games/${id}/moves`, {
            method: "POST",
            body: JSON.stringify(move),
        });
    }
    analysis(id, budget) {
        const query = budget ? `?budget=${budget}` : "";
        return request(`${this.base}/api/games/${id}/analysis${query}`);
    }
}
