// Page bootstrap: seat setup, canvas wiring, polling, and the banner.

import { ApiClient } from "./api.js";
import { geometryFor, pixelToSite } from "./board.js";
import { MatchController, POLL_INTERVAL_MS, statusBanner } from "./controller.js";
import { drawBoard, drawOverlay, drawSelection } from "./render.js";
import type { SeatSpec, StateView } from "./types.js";

const CANVAS_SIZE = 640;

const api = new ApiClient("");
let controller: MatchController | null = null;
let pollTimer: number | null = null;

const canvas = document.getElementById("board") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const banner = document.getElementById("banner")!;
const toastBox = document.getElementById("toast")!;
const gameSelect = document.getElementById("game") as HTMLSelectElement;
const seatSelects = {
  1: document.getElementById("seat1") as HTMLSelectElement,
  2: document.getElementById("seat2") as HTMLSelectElement,
};
const iterationsInput = document.getElementById("iterations") as HTMLInputElement;
const newGameButton = document.getElementById("new-game") as HTMLButtonElement;
const analyzeButton = document.getElementById("analyze") as HTMLButtonElement;

function toast(message: string): void {
  toastBox.textContent = message;
  toastBox.classList.add("visible");
  window.setTimeout(() => toastBox.classList.remove("visible"), 1800);
}

function redraw(): void {
  const view = controller?.view;
  if (!view) return;
  const geo = geometryFor(view, CANVAS_SIZE);
  drawBoard(ctx, view, geo, CANVAS_SIZE);
  if (controller!.overlay) {
    drawOverlay(ctx, geo, controller!.overlay);
  }
  const selection = controller!.selection;
  drawSelection(
    ctx,
    geo,
    selection,
    selection === null ? [] : controller!.destinationsFrom(selection),
  );
  banner.textContent = statusBanner(view);
  analyzeButton.disabled = !controller!.isHumanTurn;
}

function seatSpec(player: 1 | 2): SeatSpec {
  const kind = seatSelects[player].value;
  if (kind === "human") return { kind: "human" };
  if (kind === "random") return { kind: "random", seed: Date.now() % 100000 };
  return {
    kind: "mcts",
    iterations: Number(iterationsInput.value) || 1000,
    seed: Date.now() % 100000,
  };
}

function stopPolling(): void {
  if (pollTimer !== null) {
    window.clearInterval(pollTimer);
    pollTimer = null;
  }
}

function startPolling(): void {
  stopPolling();
  pollTimer = window.setInterval(async () => {
    if (!controller || controller.isOver) {
      stopPolling();
      return;
    }
    if (!controller.isHumanTurn) {
      await controller.refresh();
      redraw();
    }
  }, POLL_INTERVAL_MS);
}

async function newGame(): Promise<void> {
  stopPolling();
  const seats: Record<string, SeatSpec> = { "1": seatSpec(1), "2": seatSpec(2) };
  const humans = new Set<number>(
    [1, 2].filter((p) => seats[String(p)].kind === "human"),
  );
  const created = await api.createMatch(gameSelect.value, seats);
  controller = new MatchController(api, created.id, humans, {
    onView: redraw,
    onOverlay: redraw,
    onSelection: redraw,
    onToast: toast,
    onThinking: (busy) => {
      banner.textContent = busy ? "thinking…" : banner.textContent;
    },
  });
  await controller.refresh();
  redraw();
  startPolling();
  void controller.driveAgents().then(redraw);
}

canvas.addEventListener("click", async (event) => {
  if (!controller || !controller.view) return;
  const rect = canvas.getBoundingClientRect();
  const geo = geometryFor(controller.view, CANVAS_SIZE);
  const site = pixelToSite(
    geo,
    ((event.clientX - rect.left) / rect.width) * CANVAS_SIZE,
    ((event.clientY - rect.top) / rect.height) * CANVAS_SIZE,
  );
  if (site === null) return;
  await controller.clickSite(site);
  redraw();
  void controller.driveAgents().then(redraw);
});

newGameButton.addEventListener("click", () => void newGame());
analyzeButton.addEventListener("click", () => {
  if (controller) {
    void controller.analyze(Number(iterationsInput.value) || 1000).then(redraw);
  }
});

async function boot(): Promise<void> {
  const games = await api.games();
  for (const name of games) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    if (name === "gomoku-9") option.selected = true;
    gameSelect.appendChild(option);
  }
  const placeholder: Pick<StateView, "kind" | "side"> = { kind: "goBoard", side: 9 };
  drawBoard(ctx, { ...placeholder, contents: {}, mover: 1, turn: 0, replaySite: null, status: { kind: "ongoing" }, legalMoves: [], historyLength: 0 }, geometryFor(placeholder, CANVAS_SIZE), CANVAS_SIZE);
  banner.textContent = "pick seats and start a game";
}

void boot();
