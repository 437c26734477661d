import { describe, expect, it } from "vitest";

import { ApiError, SessionApi, type FetchLike } from "../src/api.js";
import { opening } from "./fixtures.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function stub(
  responses: { status: number; body?: unknown; raw?: string }[],
): { fetchFn: FetchLike; calls: Recorded[] } {
  const calls: Recorded[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    const next = responses.shift();
    if (!next) throw new Error("stub exhausted");
    const text = next.raw ?? JSON.stringify(next.body ?? null);
    return new Response(text, {
      status: next.status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("SessionApi", () => {
  it("creates a session with exactly one POST", async () => {
    const { fetchFn, calls } = stub([{ status: 201, body: opening }]);
    const api = new SessionApi("http://x", fetchFn);
    const snap = await api.createSession({
      target: "K3",
      human_role: "painter",
      engine_strategy: "chase:t=3",
      q: 2,
    });
    expect(snap.id).toBe(opening.id);
    expect(calls).toHaveLength(1);
    expect(calls[0]!.url).toBe("http://x/sessions");
    expect(calls[0]!.init?.method).toBe("POST");
    const body = JSON.parse(String(calls[0]!.init?.body));
    expect(body).toEqual({
      target: "K3",
      human_role: "painter",
      engine_strategy: "chase:t=3",
      q: 2,
    });
  });

  it("fetches a snapshot by id", async () => {
    const { fetchFn, calls } = stub([{ status: 200, body: opening }]);
    const api = new SessionApi("http://x", fetchFn);
    const snap = await api.getSession("8ed61beb9d92");
    expect(snap.turn).toBe("painter");
    expect(calls[0]!.url).toBe("http://x/sessions/8ed61beb9d92");
    expect(calls[0]!.init?.method).toBeUndefined();
  });

  it("sends colour moves as {color}", async () => {
    const { fetchFn, calls } = stub([{ status: 200, body: opening }]);
    await new SessionApi("http://x", fetchFn).colour("abc", 2);
    expect(calls[0]!.url).toBe("http://x/sessions/abc/move");
    expect(JSON.parse(String(calls[0]!.init?.body))).toEqual({ color: 2 });
  });

  it("sends draw moves as {draw: [u, v]}", async () => {
    const { fetchFn, calls } = stub([{ status: 200, body: opening }]);
    await new SessionApi("http://x", fetchFn).draw("abc", 0, 4);
    expect(JSON.parse(String(calls[0]!.init?.body))).toEqual({ draw: [0, 4] });
  });

  it("deletes without expecting a body", async () => {
    const { fetchFn, calls } = stub([{ status: 204, raw: "" }]);
    await new SessionApi("http://x", fetchFn).deleteSession("abc");
    expect(calls[0]!.init?.method).toBe("DELETE");
  });

  it("maps error bodies to ApiError with code and reason verbatim", async () => {
    const { fetchFn } = stub([
      {
        status: 409,
        body: { v: 1, error: { code: "wrong-turn", reason: "painter to move" } },
      },
    ]);
    const api = new SessionApi("http://x", fetchFn);
    const err = await api.colour("abc", 1).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    const apiErr = err as ApiError;
    expect(apiErr.status).toBe(409);
    expect(apiErr.code).toBe("wrong-turn");
    expect(apiErr.reason).toBe("painter to move");
  });

  it("falls back to a generic error on non-JSON bodies", async () => {
    const { fetchFn } = stub([{ status: 502, raw: "bad gateway" }]);
    const api = new SessionApi("http://x", fetchFn);
    const err = (await api.getSession("abc").catch((e: unknown) => e)) as ApiError;
    expect(err.code).toBe("unknown");
    expect(err.reason).toBe("HTTP 502");
  });
});
