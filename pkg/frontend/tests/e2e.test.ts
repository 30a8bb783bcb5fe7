// End-to-end: drive a real server through the client, play a full game
// against the mirror-reverse engine, and feed the transcript back through
// the command-line replay checker.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, GameClient } from "../src/api.js";
import { GameController, describeApiError } from "../src/controller.js";
import { firstPlayableMove, isFinished, moveLogLines, transcript } from "../src/model.js";
import { PRESETS } from "../src/presets.js";

const PORT = 8841;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let workdir: string;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/api/games/nope`);
      if (response.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("server did not come up");
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "goc-webui-"));
  server = spawn("goc", ["serve", "--port", String(PORT), "--data-dir",
    join(workdir, "games")], { stdio: "ignore" });
  await waitForServer();
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("full game against the mirror-reverse engine", () => {
  it("plays the two-odd-cycles preset to the end and the transcript replays",
    async () => {
      const client = new GameClient(BASE);
      const toasts: string[] = [];
      const controller = new GameController(client, {
        onView: () => {},
        onToast: (message) => toasts.push(message),
      });

      const preset = PRESETS.find((p) => p.name.startsWith("Two odd cycles"));
      expect(preset).toBeDefined();
      expect(await controller.newGame(preset!.request)).toBe(true);

      let guard = 0;
      while (controller.view && !isFinished(controller.view) && guard++ < 20) {
        expect(controller.myTurn()).toBe(true);
        const move = firstPlayableMove(controller.view);
        expect(move).not.toBeNull();
        expect(await controller.play(move!)).toBe(true);
      }

      const view = controller.view!;
      expect(isFinished(view)).toBe(true);
      expect(view.status.winner).toBe(2); // the engine holds the win here
      expect(toasts).toEqual([]);

      // the move log alternates players starting with Player 1
      const log = moveLogLines(view);
      expect(log[0]).toContain("P1");
      expect(log[1]).toContain("P2");
      expect(log).toHaveLength(view.history.length);

      // transcript -> replay file -> accepted by the CLI checker
      const replayPath = join(workdir, "transcript.json");
      writeFileSync(replayPath, JSON.stringify(transcript(view)));
      const result = spawnSync("goc", ["replay", replayPath], { encoding: "utf8" });
      expect(result.status).toBe(0);
      const doc = JSON.parse(result.stdout);
      expect(doc.moves).toBe(view.history.length);
      expect(doc.winner).toBe(2);
    }, 60_000);

  it("surfaces the server's reason when an engine preset is inapplicable",
    async () => {
      const client = new GameClient(BASE);
      const toasts: string[] = [];
      const controller = new GameController(client, {
        onView: () => {},
        onToast: (message) => toasts.push(message),
      });
      const preset = PRESETS.find((p) => p.name.includes("inapplicable"));
      expect(preset).toBeDefined();
      expect(await controller.newGame(preset!.request)).toBe(false);
      expect(toasts).toHaveLength(1);
      expect(toasts[0]).toContain("inapplicable");
    }, 30_000);

  it("reports illegal moves with the violated rule", async () => {
    const client = new GameClient(BASE);
    const created = await client.createGame({ cycle: 4 });
    await client.postMove(created.id, { edge: 0, direction: "F" });
    try {
      await client.postMove(created.id, { edge: 0, direction: "B" });
      expect.unreachable("second marking must be rejected");
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).status).toBe(422);
      expect(describeApiError(error)).toContain("already marked");
    }
  }, 30_000);
});
