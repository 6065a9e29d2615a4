import type { AiMoveReply, MoveJson, SeatSpec, StatsPayload, StateView } from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    public detail: string,
    public status: number,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function request<T>(base: string, method: string, path: string, body?: unknown): Promise<T> {
  const response = await fetch(base + path, {
    method,
    headers: body === undefined ? undefined : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    throw new ApiError(payload.error ?? "Unknown", payload.detail ?? "", response.status);
  }
  return payload as T;
}

/** Thin typed client over the match endpoints. */
export class ApiClient {
  constructor(private base: string = "") {}

  games(): Promise<string[]> {
    return request(this.base, "GET", "/api/games");
  }

  createMatch(game: string, seats: Record<string, SeatSpec>): Promise<{ id: string }> {
    return request(this.base, "POST", "/api/match", { game, seats });
  }

  getState(id: string): Promise<StateView> {
    return request(this.base, "GET", `/api/match/${id}`);
  }

  postMove(id: string, move: MoveJson): Promise<StateView> {
    return request(this.base, "POST", `/api/match/${id}/move`, move);
  }

  aiMove(id: string): Promise<AiMoveReply> {
    return request(this.base, "POST", `/api/match/${id}/ai-move`, {});
  }

  analyze(id: string, iterations: number): Promise<{ stats: StatsPayload }> {
    return request(this.base, "POST", `/api/match/${id}/analyze`, { iterations });
  }
}
