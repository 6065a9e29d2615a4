// Wire types, kept in sync with the match server's JSON contract.

export type MoveKind = "place" | "slide" | "shoot";

export type MoveJson = {
  kind: MoveKind;
  piece: string;
  from?: number;
  to: number;
};

export type StatusJson =
  | { kind: "ongoing" }
  | { kind: "win"; player: number }
  | { kind: "draw" };

export type StateView = {
  kind: "goBoard" | "chessBoard";
  side: number;
  contents: Record<string, string>;
  mover: number;
  turn: number;
  replaySite: number | null;
  status: StatusJson;
  legalMoves: MoveJson[];
  historyLength: number;
};

export type StatsEntry = {
  move: MoveJson;
  visits: number;
  meanValue: number;
  color?: [number, number, number];
  radius?: number;
};

export type StatsPayload = {
  entries: StatsEntry[];
  totalIterations: number;
  elapsedMs: number;
};

export type AiMoveReply = {
  move: MoveJson;
  state: StateView;
  stats: StatsPayload;
};

export type SeatSpec =
  | { kind: "human" }
  | { kind: "mcts"; iterations?: number; explorationC?: number; seed?: number }
  | { kind: "random"; seed?: number };

export type Rgb = [number, number, number];
