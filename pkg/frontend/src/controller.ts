// Match flow: click handling, agent turns, polling, and the analysis
// overlay. Deliberately DOM-free; the page wires the hooks to canvas
// rendering and the tests drive clicks directly. Moves are only ever
// taken from the server-reported legal move list, never constructed.

import { ApiClient, ApiError } from "./api.js";
import { buildOverlay, OverlayItem } from "./overlay.js";
import type { MoveJson, StateView } from "./types.js";

export type ControllerHooks = {
  onView?: (view: StateView) => void;
  onOverlay?: (items: OverlayItem[] | null) => void;
  onSelection?: (site: number | null, destinations: number[]) => void;
  onToast?: (message: string) => void;
  onThinking?: (busy: boolean) => void;
};

export const POLL_INTERVAL_MS = 500;

export class MatchController {
  view: StateView | null = null;
  selection: number | null = null;
  overlay: OverlayItem[] | null = null;
  submittedMoves: MoveJson[] = [];
  private busy = false;

  constructor(
    private api: ApiClient,
    readonly matchId: string,
    readonly humanPlayers: Set<number>,
    private hooks: ControllerHooks = {},
  ) {}

  get isHumanTurn(): boolean {
    return (
      this.view !== null &&
      this.view.status.kind === "ongoing" &&
      this.humanPlayers.has(this.view.mover)
    );
  }

  get isOver(): boolean {
    return this.view !== null && this.view.status.kind !== "ongoing";
  }

  private setView(view: StateView): void {
    this.view = view;
    this.hooks.onView?.(view);
  }

  private setOverlay(items: OverlayItem[] | null): void {
    this.overlay = items;
    this.hooks.onOverlay?.(items);
  }

  private select(site: number | null): void {
    this.selection = site;
    this.hooks.onSelection?.(site, site === null ? [] : this.destinationsFrom(site));
  }

  async refresh(): Promise<StateView> {
    const view = await this.api.getState(this.matchId);
    this.setView(view);
    return view;
  }

  /** Sites the currently selected piece may move to (from legal moves). */
  destinationsFrom(site: number): number[] {
    if (!this.view) return [];
    return this.view.legalMoves.filter((m) => m.from === site).map((m) => m.to);
  }

  /** Origin sites that have at least one legal movement. */
  movableOrigins(): Set<number> {
    const origins = new Set<number>();
    for (const move of this.view?.legalMoves ?? []) {
      if (move.from !== undefined) origins.add(move.from);
    }
    return origins;
  }

  /**
   * Handle a click on a board site. Placement games post immediately;
   * movement phases select an own piece first, then its destination;
   * shoot phases post the clicked target. Illegal clicks are ignored
   * with a toast and never reach the server.
   */
  async clickSite(site: number): Promise<void> {
    if (!this.view || this.busy) return;
    if (this.isOver) {
      this.hooks.onToast?.("the match is over");
      return;
    }
    if (!this.isHumanTurn) {
      this.hooks.onToast?.("not your turn");
      return;
    }
    const legal = this.view.legalMoves;
    const phase = legal[0]?.kind;
    if (phase === "place" || phase === "shoot") {
      const move = legal.find((m) => m.to === site);
      if (!move) {
        this.hooks.onToast?.(phase === "place" ? "that site is taken" : "cannot shoot there");
        return;
      }
      await this.submit(move);
      return;
    }
    // movement phase: first click picks one of the mover's pieces
    const origins = this.movableOrigins();
    if (this.selection === null) {
      if (origins.has(site)) {
        this.select(site);
      } else {
        this.hooks.onToast?.("select one of your pieces");
      }
      return;
    }
    if (site === this.selection) {
      this.select(null);
      return;
    }
    const move = legal.find((m) => m.from === this.selection && m.to === site);
    if (move) {
      this.select(null);
      await this.submit(move);
      return;
    }
    if (origins.has(site)) {
      this.select(site); // switch selection to another movable piece
      return;
    }
    this.hooks.onToast?.("not a legal destination");
  }

  private async submit(move: MoveJson): Promise<void> {
    this.busy = true;
    try {
      const view = await this.api.postMove(this.matchId, move);
      this.submittedMoves.push(move);
      this.setOverlay(null);
      this.setView(view);
    } catch (error) {
      if (error instanceof ApiError) {
        this.hooks.onToast?.(`${error.code}: ${error.detail}`);
        await this.refresh();
      } else {
        throw error;
      }
    } finally {
      this.busy = false;
    }
  }

  /** Ask the server for the agent's move; shows its search overlay. */
  async agentTurn(): Promise<void> {
    if (!this.view || this.isOver || this.isHumanTurn) return;
    this.busy = true;
    this.hooks.onThinking?.(true);
    try {
      const reply = await this.api.aiMove(this.matchId);
      this.setView(reply.state);
      this.setOverlay(buildOverlay(reply.stats));
    } finally {
      this.busy = false;
      this.hooks.onThinking?.(false);
    }
  }

  /** What-if search for the human's own turn. */
  async analyze(iterations: number): Promise<void> {
    if (!this.view || this.isOver) return;
    this.hooks.onThinking?.(true);
    try {
      const reply = await this.api.analyze(this.matchId, iterations);
      this.setOverlay(buildOverlay(reply.stats));
    } finally {
      this.hooks.onThinking?.(false);
    }
  }

  /** Run agent turns (with replay chains) until a human must act. */
  async driveAgents(): Promise<void> {
    while (this.view && !this.isOver && !this.isHumanTurn) {
      await this.agentTurn();
    }
  }
}

export function statusBanner(view: StateView): string {
  switch (view.status.kind) {
    case "ongoing":
      return `player ${view.mover} to move`;
    case "draw":
      return "draw";
    case "win":
      return `player ${view.status.player} wins`;
  }
}
