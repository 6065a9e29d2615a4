// Search-statistics overlay: one item per stats entry. Placements and
// shots draw as circles on their target site, movements as arrows, sized
// by visit count and colored by value estimate.

import type { Rgb, StatsEntry, StatsPayload } from "./types.js";

export const R_MIN = 0.15;
export const R_MAX = 0.45;

export type OverlayItem = {
  shape: "circle" | "arrow";
  to: number;
  from?: number;
  radiusOrWidth: number; // cell units
  color: Rgb;
  visits: number;
};

/** Red (-1) through purple (0) to blue (+1), mirroring the server. */
export function valueToColor(meanValue: number): Rgb {
  const v = Math.max(-1, Math.min(1, meanValue));
  if (v <= 0) {
    const t = v + 1;
    return [Math.round(255 - 127 * t), 0, Math.round(128 * t)];
  }
  return [Math.round(128 * (1 - v)), 0, Math.round(128 + 127 * v)];
}

export function visitRadius(visits: number, maxVisits: number): number {
  const denominator = Math.max(1, maxVisits);
  return R_MIN + (R_MAX - R_MIN) * Math.sqrt(visits / denominator);
}

function entryColor(entry: StatsEntry): Rgb {
  return entry.color ?? valueToColor(entry.meanValue);
}

function entryRadius(entry: StatsEntry, maxVisits: number): number {
  return entry.radius ?? visitRadius(entry.visits, maxVisits);
}

/**
 * Build draw-ordered overlay items: ascending visits, so the most
 * visited item paints last and lands on top.
 */
export function buildOverlay(stats: StatsPayload): OverlayItem[] {
  const maxVisits = Math.max(1, ...stats.entries.map((e) => e.visits));
  const items = stats.entries.map((entry): OverlayItem => {
    const arrow = entry.move.kind === "slide";
    return {
      shape: arrow ? "arrow" : "circle",
      to: entry.move.to,
      ...(arrow ? { from: entry.move.from } : {}),
      radiusOrWidth: entryRadius(entry, maxVisits),
      color: entryColor(entry),
      visits: entry.visits,
    };
  });
  return items.sort((a, b) => a.visits - b.visits);
}
