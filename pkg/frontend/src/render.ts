// Canvas drawing: the board, the pieces, selection hints, and the
// search overlay (circles for placements, arrows for movements).

import { algebraic, Geometry, sitePixel } from "./board.js";
import type { OverlayItem } from "./overlay.js";
import type { StateView } from "./types.js";

const BOARD_BG = "#d9b26a";
const LIGHT_CELL = "#efd9b0";
const DARK_CELL = "#b58a5a";
const LINE = "#5b4322";

function pieceStyle(piece: string): { fill: string; stroke: string } {
  if (piece.endsWith("1")) return { fill: "#222222", stroke: "#000000" };
  if (piece.endsWith("2")) return { fill: "#fafafa", stroke: "#555555" };
  return { fill: "#7a1f1f", stroke: "#4a0f0f" }; // neutral blockers
}

export function drawBoard(
  ctx: CanvasRenderingContext2D,
  view: StateView,
  geo: Geometry,
  canvasSize: number,
): void {
  ctx.clearRect(0, 0, canvasSize, canvasSize);
  ctx.fillStyle = BOARD_BG;
  ctx.fillRect(0, 0, canvasSize, canvasSize);

  if (view.kind === "goBoard") {
    ctx.strokeStyle = LINE;
    ctx.lineWidth = 1;
    const span = (view.side - 1) * geo.cell;
    for (let i = 0; i < view.side; i++) {
      const offset = geo.margin + i * geo.cell;
      ctx.beginPath();
      ctx.moveTo(geo.margin, offset);
      ctx.lineTo(geo.margin + span, offset);
      ctx.stroke();
      ctx.beginPath();
      ctx.moveTo(offset, geo.margin);
      ctx.lineTo(offset, geo.margin + span);
      ctx.stroke();
    }
  } else {
    for (let row = 0; row < view.side; row++) {
      for (let col = 0; col < view.side; col++) {
        ctx.fillStyle = (row + col) % 2 === 0 ? DARK_CELL : LIGHT_CELL;
        ctx.fillRect(
          geo.margin + col * geo.cell,
          geo.margin + (view.side - 1 - row) * geo.cell,
          geo.cell,
          geo.cell,
        );
      }
    }
  }

  ctx.fillStyle = LINE;
  ctx.font = `${Math.max(9, Math.floor(geo.cell * 0.3))}px sans-serif`;
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (let col = 0; col < view.side; col++) {
    const { x } = sitePixel(geo, col);
    ctx.fillText(algebraic(view.side, col)[0], x, canvasSize - 8);
  }
  for (let row = 0; row < view.side; row++) {
    const { y } = sitePixel(geo, row * view.side);
    ctx.fillText(String(row + 1), 10, y);
  }

  for (const [key, piece] of Object.entries(view.contents)) {
    const { x, y } = sitePixel(geo, Number(key));
    const { fill, stroke } = pieceStyle(piece);
    const radius = geo.cell * 0.42;
    ctx.beginPath();
    ctx.arc(x, y, radius, 0, Math.PI * 2);
    ctx.fillStyle = fill;
    ctx.fill();
    ctx.strokeStyle = stroke;
    ctx.stroke();
    if (piece.startsWith("Queen")) {
      ctx.fillStyle = piece.endsWith("1") ? "#fafafa" : "#222222";
      ctx.font = `${Math.floor(geo.cell * 0.55)}px serif`;
      ctx.fillText("♛", x, y + 1);
    }
  }
}

export function drawSelection(
  ctx: CanvasRenderingContext2D,
  geo: Geometry,
  selection: number | null,
  destinations: number[],
): void {
  if (selection !== null) {
    const { x, y } = sitePixel(geo, selection);
    ctx.beginPath();
    ctx.arc(x, y, geo.cell * 0.48, 0, Math.PI * 2);
    ctx.strokeStyle = "#1d7a1d";
    ctx.lineWidth = 3;
    ctx.stroke();
  }
  ctx.fillStyle = "rgba(29, 122, 29, 0.45)";
  for (const site of destinations) {
    const { x, y } = sitePixel(geo, site);
    ctx.beginPath();
    ctx.arc(x, y, geo.cell * 0.16, 0, Math.PI * 2);
    ctx.fill();
  }
}

export function drawOverlay(
  ctx: CanvasRenderingContext2D,
  geo: Geometry,
  items: OverlayItem[],
): void {
  for (const item of items) {
    const [r, g, b] = item.color;
    const paint = `rgba(${r}, ${g}, ${b}, 0.75)`;
    const target = sitePixel(geo, item.to);
    if (item.shape === "circle") {
      ctx.beginPath();
      ctx.arc(target.x, target.y, item.radiusOrWidth * geo.cell, 0, Math.PI * 2);
      ctx.fillStyle = paint;
      ctx.fill();
    } else {
      const origin = sitePixel(geo, item.from ?? item.to);
      const width = Math.max(1.5, item.radiusOrWidth * geo.cell);
      ctx.strokeStyle = paint;
      ctx.fillStyle = paint;
      ctx.lineWidth = width;
      ctx.beginPath();
      ctx.moveTo(origin.x, origin.y);
      ctx.lineTo(target.x, target.y);
      ctx.stroke();
      const angle = Math.atan2(target.y - origin.y, target.x - origin.x);
      const head = Math.max(6, width * 2.2);
      ctx.beginPath();
      ctx.moveTo(target.x, target.y);
      ctx.lineTo(
        target.x - head * Math.cos(angle - 0.45),
        target.y - head * Math.sin(angle - 0.45),
      );
      ctx.lineTo(
        target.x - head * Math.cos(angle + 0.45),
        target.y - head * Math.sin(angle + 0.45),
      );
      ctx.closePath();
      ctx.fill();
    }
  }
}
