/**
 * Typed client for the session API.
 *
 * Every method is exactly one HTTP request; error responses become
 * `ApiError` values carrying the server's code and reason verbatim.
 */

import type { ErrorBody, Snapshot } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly reason: string,
  ) {
    super(`${code}: ${reason}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface NewSessionRequest {
  target: string;
  human_role: "builder" | "painter";
  engine_strategy: string;
  q?: number;
  budget?: number | null;
  seed?: number;
}

async function raise(res: Response): Promise<never> {
  let code = "unknown";
  let reason = `HTTP ${res.status}`;
  try {
    const body = (await res.json()) as ErrorBody;
    if (body && body.error) {
      code = body.error.code;
      reason = body.error.reason;
    }
  } catch {
    // non-JSON error body; keep the fallback
  }
  throw new ApiError(res.status, code, reason);
}

export class SessionApi {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((url, init) => globalThis.fetch(url, init));
  }

  private async json(path: string, init?: RequestInit): Promise<Snapshot> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!res.ok) await raise(res);
    return (await res.json()) as Snapshot;
  }

  createSession(req: NewSessionRequest): Promise<Snapshot> {
    return this.json("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }

  getSession(id: string): Promise<Snapshot> {
    return this.json(`/sessions/${id}`);
  }

  /** Painter move: colour the pending edge. */
  colour(id: string, c: number): Promise<Snapshot> {
    return this.json(`/sessions/${id}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ color: c }),
    });
  }

  /** Builder move: draw the edge u–v. */
  draw(id: string, u: number, v: number): Promise<Snapshot> {
    return this.json(`/sessions/${id}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ draw: [u, v] }),
    });
  }

  async deleteSession(id: string): Promise<void> {
    const res = await this.fetchFn(`${this.baseUrl}/sessions/${id}`, {
      method: "DELETE",
    });
    if (!res.ok) await raise(res);
  }
}
