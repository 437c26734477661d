/**
 * Recorded session snapshots (captured verbatim from the live API) plus
 * small hand-assembled states for targeted derivation checks.
 */

import type { Snapshot } from "../src/types.js";

/** First snapshot of a Painter session against chase:t=3 on K3. */
export const opening: Snapshot = {
  v: 1,
  id: "8ed61beb9d92",
  target: { kind: "clique", q: 2, t: 3 },
  human_role: "painter",
  engine_strategy: "chase:t=3",
  state: { n: 2, q: 2, edges: [[0, 1, 0]] },
  turn: "painter",
  pending: [0, 1],
  budget: 160,
  edges_used: 1,
  result: null,
  rationale: "chain step 1: spoke 1/31 from centre 0",
  created: "2026-08-26T01:09:11+00:00",
  updated: "2026-08-26T01:09:11+00:00",
};

/** The same session after colouring every edge 1: builder win on a K3. */
export const finished: Snapshot = {
  v: 1,
  id: "8ed61beb9d92",
  target: { kind: "clique", q: 2, t: 3 },
  human_role: "painter",
  engine_strategy: "chase:t=3",
  state: {
    n: 32,
    q: 2,
    edges: [
      [0, 1, 1], [0, 2, 1], [0, 3, 1], [0, 4, 1], [0, 5, 1], [0, 6, 1],
      [0, 7, 1], [0, 8, 1], [0, 9, 1], [0, 10, 1], [0, 11, 1], [0, 12, 1],
      [0, 13, 1], [0, 14, 1], [0, 15, 1], [0, 16, 1], [0, 17, 1], [0, 18, 1],
      [0, 19, 1], [0, 20, 1], [0, 21, 1], [0, 22, 1], [0, 23, 1], [0, 24, 1],
      [0, 25, 1], [0, 26, 1], [0, 27, 1], [0, 28, 1], [0, 29, 1], [0, 30, 1],
      [0, 31, 1], [1, 2, 1],
    ],
  },
  turn: "finished",
  pending: null,
  budget: 160,
  edges_used: 32,
  result: { kind: "builder_win", edges: 32, color: 1, vertices: [1, 2, 0] },
  rationale: "chain step 2: spoke 1/30 from centre 1",
  created: "2026-08-26T01:09:11+00:00",
  updated: "2026-08-26T01:09:11+00:00",
};

/** Mid-game state with one mono pair per colour and a pending edge. */
export const midGame: Snapshot = {
  v: 1,
  id: "fixture-mid",
  target: { kind: "clique", q: 2, t: 3 },
  human_role: "painter",
  engine_strategy: "chase:t=3",
  state: {
    n: 4,
    q: 2,
    edges: [
      [0, 1, 1],
      [0, 2, 1],
      [0, 3, 2],
      [1, 2, 0],
    ],
  },
  turn: "painter",
  pending: [1, 2],
  budget: 160,
  edges_used: 4,
  result: null,
  rationale: "chain step 1: spoke 3/31 from centre 0",
  created: "2026-08-26T01:09:11+00:00",
  updated: "2026-08-26T01:09:11+00:00",
};

/** Path target with a two-edge mono path already on the board. */
export const pathGame: Snapshot = {
  v: 1,
  id: "fixture-path",
  target: { kind: "path", q: 2, n: 4 },
  human_role: "painter",
  engine_strategy: "adversarial:budget=5",
  state: {
    n: 4,
    q: 2,
    edges: [
      [0, 1, 1],
      [1, 2, 1],
      [2, 3, 0],
    ],
  },
  turn: "painter",
  pending: [2, 3],
  budget: 5,
  edges_used: 3,
  result: null,
  rationale: null,
  created: "2026-08-26T01:09:11+00:00",
  updated: "2026-08-26T01:09:11+00:00",
};

/** Six-colour state: colours past the palette render as labels. */
export const manyColours: Snapshot = {
  v: 1,
  id: "fixture-many",
  target: { kind: "clique", q: 6, t: 3 },
  human_role: "painter",
  engine_strategy: "mchase:q=6,t=3",
  state: { n: 3, q: 6, edges: [[0, 1, 5], [1, 2, 0]] },
  turn: "painter",
  pending: [1, 2],
  budget: 999,
  edges_used: 2,
  result: null,
  rationale: null,
  created: "2026-08-26T01:09:11+00:00",
  updated: "2026-08-26T01:09:11+00:00",
};

export function clone(snap: Snapshot): Snapshot {
  return JSON.parse(JSON.stringify(snap)) as Snapshot;
}
