// Page bootstrap: new-game form, SVG board, move log, banner and toasts.

import { GameClient } from "./api.js";
import { GameController } from "./controller.js";
import { isFinished, moveLogLines, resultBanner, transcript } from "./model.js";
import { PRESETS } from "./presets.js";
import { BoardRenderer } from "./render.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function toast(message: string): void {
  const area = byId<HTMLDivElement>("toasts");
  const node = document.createElement("div");
  node.className = "toast";
  node.textContent = message;
  area.append(node);
  setTimeout(() => node.remove(), 6000);
}

function main(): void {
  const svg = byId<HTMLElement>("board") as unknown as SVGSVGElement;
  const select = byId<HTMLSelectElement>("preset");
  const status = byId<HTMLDivElement>("status");
  const log = byId<HTMLOListElement>("log");
  const banner = byId<HTMLDivElement>("banner");

  for (const [i, preset] of PRESETS.entries()) {
    const option = document.createElement("option");
    option.value = String(i);
    option.textContent = preset.name;
    select.append(option);
  }

  const controller = new GameController(new GameClient(""), {
    onView: (view) => {
      renderer.clearPicker();
      renderer.render(view);
      const over = resultBanner(view);
      banner.textContent = over ?? "";
      banner.className = over ? "banner visible" : "banner";
      status.textContent = isFinished(view)
        ? "game over"
        : controller.myTurn()
          ? `your move (you are Player ${view.to_move})`
          : `engine (${view.engine}) to move`;
      log.replaceChildren(
        ...moveLogLines(view).map((line) => {
          const item = document.createElement("li");
          item.textContent = line;
          return item;
        }),
      );
    },
    onToast: toast,
  });

  const renderer = new BoardRenderer(svg, {
    onMove: (move) => {
      if (!controller.myTurn()) {
        toast("not your turn");
        return;
      }
      void controller.play(move);
    },
  });
  svg.addEventListener("picker-toggle", () => {
    if (controller.view) renderer.render(controller.view);
  });

  byId<HTMLButtonElement>("start").addEventListener("click", () => {
    const preset = PRESETS[Number(select.value)];
    void controller.newGame(preset.request);
  });

  byId<HTMLButtonElement>("download").addEventListener("click", () => {
    if (!controller.view) return;
    const blob = new Blob([JSON.stringify(transcript(controller.view), null, 2)], {
      type: "application/json",
    });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `game-${controller.view.id.slice(0, 8)}.json`;
    link.click();
    URL.revokeObjectURL(link.href);
  });
}

document.addEventListener("DOMContentLoaded", main);
