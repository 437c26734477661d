/**
 * Wire types for the session API, version 1.
 *
 * These mirror the JSON the server actually sends; the client never
 * invents fields and never re-derives game rules from them.
 */

/** One drawn edge: endpoints plus colour; colour 0 means not yet coloured. */
export type EdgeTriple = [number, number, number];

export interface TargetDict {
  kind: "clique" | "path" | "biclique" | "arbitrary";
  q: number;
  /** clique/biclique order. */
  t?: number;
  /** path vertex count. */
  n?: number;
  /** arbitrary targets carry their own edge list. */
  edges?: [number, number][];
}

export type ResultDict =
  | { kind: "builder_win"; edges: number; color: number; vertices: number[] }
  | { kind: "budget_exhausted"; budget: number }
  | { kind: "infeasible"; reasons: string[] }
  | { kind: "aborted"; offender: string; reason: string };

export type Turn = "builder" | "painter" | "finished";
export type Role = "builder" | "painter";

export interface Snapshot {
  v: 1;
  id: string;
  target: TargetDict;
  human_role: Role;
  engine_strategy: string;
  state: { n: number; q: number; edges: EdgeTriple[] };
  turn: Turn;
  pending: [number, number] | null;
  budget: number;
  edges_used: number;
  result: ResultDict | null;
  rationale: string | null;
  created: string;
  updated: string;
}

export interface ErrorBody {
  v: 1;
  error: { code: string; reason: string };
}
