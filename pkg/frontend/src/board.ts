// Board geometry. Sites are row-major with row 0 at the bottom, so the
// canvas y axis flips. goBoard pieces sit on grid intersections,
// chessBoard pieces in cell centers.

import type { StateView } from "./types.js";

export type Geometry = {
  kind: "goBoard" | "chessBoard";
  side: number;
  cell: number; // pixels per cell
  margin: number;
};

export function geometryFor(view: Pick<StateView, "kind" | "side">, canvasSize: number): Geometry {
  const { kind, side } = view;
  const units = kind === "goBoard" ? side + 1 : side + 0.8;
  const cell = Math.floor(canvasSize / units);
  const span = kind === "goBoard" ? (side - 1) * cell : side * cell;
  const margin = Math.floor((canvasSize - span) / 2);
  return { kind, side, cell, margin };
}

export function sitePixel(geo: Geometry, site: number): { x: number; y: number } {
  const row = Math.floor(site / geo.side);
  const col = site % geo.side;
  if (geo.kind === "goBoard") {
    return {
      x: geo.margin + col * geo.cell,
      y: geo.margin + (geo.side - 1 - row) * geo.cell,
    };
  }
  return {
    x: geo.margin + (col + 0.5) * geo.cell,
    y: geo.margin + (geo.side - 1 - row + 0.5) * geo.cell,
  };
}

export function pixelToSite(geo: Geometry, x: number, y: number): number | null {
  let col: number;
  let rowFromTop: number;
  if (geo.kind === "goBoard") {
    col = Math.round((x - geo.margin) / geo.cell);
    rowFromTop = Math.round((y - geo.margin) / geo.cell);
  } else {
    col = Math.floor((x - geo.margin) / geo.cell);
    rowFromTop = Math.floor((y - geo.margin) / geo.cell);
  }
  if (col < 0 || col >= geo.side || rowFromTop < 0 || rowFromTop >= geo.side) {
    return null;
  }
  const row = geo.side - 1 - rowFromTop;
  return row * geo.side + col;
}

/** Algebraic coordinates: columns a.., rows 1.. with row 1 at the bottom. */
export function algebraic(side: number, site: number): string {
  const row = Math.floor(site / side);
  const col = site % side;
  return `${String.fromCharCode(97 + col)}${row + 1}`;
}
