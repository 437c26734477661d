import { describe, expect, it } from "vitest";

import { SessionApi, type FetchLike } from "../src/api.js";
import { Controller } from "../src/app.js";
import type { Snapshot } from "../src/types.js";
import { clone, midGame, opening } from "./fixtures.js";

type Scripted =
  | { status: number; body: unknown }
  | { defer: Promise<{ status: number; body: unknown }> };

function controller(script: Scripted[]): {
  ctl: Controller;
  calls: { url: string; init?: RequestInit }[];
  root: HTMLElement;
} {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    const next = script.shift();
    if (!next) throw new Error("script exhausted");
    const step = "defer" in next ? await next.defer : next;
    return new Response(JSON.stringify(step.body), { status: step.status });
  };
  const root = document.createElement("div");
  const ctl = new Controller(root, new SessionApi("http://x", fetchFn));
  return { ctl, calls, root };
}

describe("Controller", () => {
  it("starts a game with one API call and enters play", async () => {
    const { ctl, calls, root } = controller([{ status: 201, body: opening }]);
    await ctl.newGame();
    expect(calls).toHaveLength(1);
    expect(ctl.state.phase).toBe("playing");
    expect(ctl.state.history).toHaveLength(1);
    expect(root.querySelector("[data-testid=board]")).not.toBeNull();
  });

  it("appends the authoritative snapshot after each successful move", async () => {
    const { ctl, calls } = controller([
      { status: 201, body: opening },
      { status: 200, body: midGame },
    ]);
    await ctl.newGame();
    await ctl.colour(1);
    expect(calls).toHaveLength(2);
    expect(ctl.state.history).toHaveLength(2);
    expect(ctl.state.viewIndex).toBe(1);
    expect(ctl.snapshot!.edges_used).toBe(midGame.edges_used);
  });

  it("keeps history untouched on a server rejection and shows the reason", async () => {
    const { ctl, root } = controller([
      { status: 201, body: opening },
      {
        status: 409,
        body: { v: 1, error: { code: "wrong-turn", reason: "not your turn" } },
      },
      { status: 200, body: midGame },
    ]);
    await ctl.newGame();
    const before = JSON.stringify(ctl.state.history);
    await ctl.drawEdge(0, 1);
    expect(JSON.stringify(ctl.state.history)).toBe(before);
    expect(ctl.state.error).toBe("not your turn");
    expect(ctl.state.busy).toBe(false);
    expect(root.querySelector("[data-testid=error]")!.textContent).toBe(
      "not your turn",
    );
    // a later success clears the inline error
    await ctl.colour(1);
    expect(ctl.state.error).toBeNull();
    expect(root.querySelector("[data-testid=error]")).toBeNull();
  });

  it("allows only one action in flight", async () => {
    let release!: (v: { status: number; body: unknown }) => void;
    const gate = new Promise<{ status: number; body: unknown }>((resolve) => {
      release = resolve;
    });
    const { ctl, calls } = controller([
      { status: 201, body: opening },
      { defer: gate },
    ]);
    await ctl.newGame();
    const first = ctl.colour(1);
    const second = ctl.colour(2); // swallowed by the in-flight lock
    release({ status: 200, body: midGame });
    await Promise.all([first, second]);
    expect(calls).toHaveLength(2); // create + one move, not two
    expect(ctl.state.history).toHaveLength(2);
  });

  it("scrubbing is local and never calls the API", async () => {
    const { ctl, calls, root } = controller([
      { status: 201, body: opening },
      { status: 200, body: midGame },
    ]);
    await ctl.newGame();
    await ctl.colour(1);
    ctl.scrub(0);
    expect(ctl.state.viewIndex).toBe(0);
    expect(calls).toHaveLength(2);
    expect(root.querySelector("[data-testid=scrub-note]")).not.toBeNull();
    ctl.scrub(99); // clamped
    expect(ctl.state.viewIndex).toBe(1);
  });

  it("builds edges from two vertex clicks", async () => {
    const builderSnap = clone(opening);
    builderSnap.human_role = "builder";
    builderSnap.turn = "builder";
    builderSnap.pending = null;
    builderSnap.state = { n: 3, q: 2, edges: [[0, 1, 1]] };
    const after = clone(builderSnap);
    const { ctl, calls } = controller([
      { status: 201, body: builderSnap },
      { status: 200, body: after },
    ]);
    await ctl.newGame();
    await ctl.vertexClick(0);
    expect(ctl.state.selection).toBe(0);
    expect(calls).toHaveLength(1); // staging click is local
    await ctl.vertexClick(2);
    expect(calls).toHaveLength(2);
    expect(JSON.parse(String(calls[1]!.init?.body))).toEqual({ draw: [0, 2] });
    expect(ctl.state.selection).toBeNull();
  });

  it("draws the first edge on an empty board via the fresh-vertex button", async () => {
    const empty = clone(opening);
    empty.human_role = "builder";
    empty.turn = "builder";
    empty.pending = null;
    empty.state = { n: 0, q: 2, edges: [] };
    const { ctl, calls } = controller([
      { status: 201, body: empty },
      { status: 200, body: opening satisfies Snapshot },
    ]);
    await ctl.newGame();
    await ctl.newVertexEdge();
    expect(JSON.parse(String(calls[1]!.init?.body))).toEqual({ draw: [0, 1] });
  });

  it("resets to the form after deleting the session", async () => {
    const { ctl, calls } = controller([
      { status: 201, body: opening },
      { status: 204, body: null },
    ]);
    await ctl.newGame();
    await ctl.reset();
    expect(calls[1]!.init?.method).toBe("DELETE");
    expect(ctl.state.phase).toBe("form");
    expect(ctl.state.history).toHaveLength(0);
  });
});
