/**
 * Pure derivation of everything the board shows from a session snapshot.
 *
 * No game rules live here: legality and wins are the server's business.
 * The threat display is a visual aid — per colour, the largest
 * monochromatic clique (clique targets) or longest monochromatic path
 * (path targets) currently on the board — recomputed from the snapshot
 * alone, so rendering the same snapshot always yields the same model.
 */

import { layoutPositions } from "./layout.js";
import { colourName } from "./palette.js";
import type { ResultDict, Snapshot, TargetDict } from "./types.js";

export interface VertexVM {
  id: number;
  x: number;
  y: number;
  highlight: boolean;
}

export interface EdgeVM {
  u: number;
  v: number;
  color: number;
  pending: boolean;
  highlight: boolean;
}

export interface ThreatVM {
  color: number;
  vertices: number[];
  size: number;
  goal: number;
}

export interface BoardViewModel {
  vertices: VertexVM[];
  edges: EdgeVM[];
  banner: string;
  threats: ThreatVM[];
  moveLog: string[];
  finished: boolean;
}

const THREAT_EDGE_CAP = 4000;

export function buildViewModel(snap: Snapshot): BoardViewModel {
  const pts = layoutPositions(snap.id, snap.state.n, snap.state.edges);
  const threats = snap.result ? [] : deriveThreats(snap);
  const highlightPairs = snap.result
    ? winningPairs(snap.target, snap.result)
    : threatPairs(snap.target, threats);
  const highlightVerts = new Set<number>();
  for (const [u, v] of highlightPairs.keys2()) {
    highlightVerts.add(u);
    highlightVerts.add(v);
  }

  const edges: EdgeVM[] = snap.state.edges.map(([u, v, c]) => ({
    u,
    v,
    color: c,
    pending: c === 0,
    highlight: highlightPairs.has(u, v, c),
  }));
  const vertices: VertexVM[] = pts.map((p, id) => ({
    id,
    x: p.x,
    y: p.y,
    highlight: highlightVerts.has(id),
  }));

  return {
    vertices,
    edges,
    banner: banner(snap),
    threats,
    moveLog: moveLog(snap),
    finished: snap.turn === "finished",
  };
}

// ======================================================================
// Banner and log
// ======================================================================

function describeTarget(t: TargetDict): string {
  if (t.kind === "clique") return `K_${t.t}`;
  if (t.kind === "path") return `P_${t.n}`;
  if (t.kind === "biclique") return `K_{${t.t},${t.t}}`;
  return "the target graph";
}

function banner(snap: Snapshot): string {
  const r = snap.result;
  if (r === null) {
    if (snap.turn === snap.human_role) {
      return snap.human_role === "painter"
        ? `Your turn — colour the pending edge (1..${snap.state.q})`
        : "Your turn — pick two vertices or extend to a new one";
    }
    return "Waiting for the engine";
  }
  return resultBanner(snap, r);
}

function resultBanner(snap: Snapshot, r: ResultDict): string {
  const goal = describeTarget(snap.target);
  switch (r.kind) {
    case "builder_win": {
      const what = `monochromatic ${goal} in ${colourName(r.color)} after ${r.edges} edges`;
      return snap.human_role === "painter"
        ? `You lose — the builder completed a ${what}`
        : `You win — you completed a ${what}`;
    }
    case "budget_exhausted": {
      const what = `the edge budget of ${r.budget} ran out before ${goal} appeared`;
      return snap.human_role === "painter"
        ? `You win — ${what}`
        : `You lose — ${what}`;
    }
    case "infeasible":
      return `No game — the engine declined its parameters: ${r.reasons.join("; ")}`;
    case "aborted":
      return `Game aborted by ${r.offender}: ${r.reason}`;
  }
}

function moveLog(snap: Snapshot): string[] {
  const log = snap.state.edges.map(([u, v, c], i) =>
    c === 0
      ? `#${i + 1} ${u}–${v} pending`
      : `#${i + 1} ${u}–${v} ${colourName(c)}`,
  );
  if (snap.rationale) log.push(`engine: ${snap.rationale}`);
  return log;
}

// ======================================================================
// Highlight pairs (win embedding or per-colour threats)
// ======================================================================

/** Set of (u, v, colour) triples with unordered endpoints. */
class PairSet {
  private readonly set = new Set<string>();
  private readonly pairs: [number, number][] = [];

  add(u: number, v: number, c: number): void {
    const key = this.key(u, v, c);
    if (!this.set.has(key)) {
      this.set.add(key);
      this.pairs.push(u < v ? [u, v] : [v, u]);
    }
  }

  has(u: number, v: number, c: number): boolean {
    return this.set.has(this.key(u, v, c));
  }

  keys2(): [number, number][] {
    return this.pairs;
  }

  private key(u: number, v: number, c: number): string {
    return u < v ? `${u},${v},${c}` : `${v},${u},${c}`;
  }
}

/** The edges of the winning embedding, reported by the server. */
function winningPairs(target: TargetDict, result: ResultDict): PairSet {
  const out = new PairSet();
  if (result.kind !== "builder_win") return out;
  const emb = result.vertices;
  const c = result.color;
  if (target.kind === "clique") {
    for (let i = 0; i < emb.length; i++)
      for (let j = i + 1; j < emb.length; j++) out.add(emb[i]!, emb[j]!, c);
  } else if (target.kind === "path") {
    for (let i = 0; i + 1 < emb.length; i++) out.add(emb[i]!, emb[i + 1]!, c);
  } else if (target.kind === "biclique") {
    const t = target.t ?? 0;
    for (let i = 0; i < t; i++)
      for (let j = t; j < emb.length; j++) out.add(emb[i]!, emb[j]!, c);
  } else {
    for (const [a, b] of target.edges ?? []) {
      if (emb[a] !== undefined && emb[b] !== undefined)
        out.add(emb[a]!, emb[b]!, c);
    }
  }
  return out;
}

function threatPairs(target: TargetDict, threats: ThreatVM[]): PairSet {
  const out = new PairSet();
  for (const threat of threats) {
    if (target.kind === "clique") {
      const vs = threat.vertices;
      for (let i = 0; i < vs.length; i++)
        for (let j = i + 1; j < vs.length; j++)
          out.add(vs[i]!, vs[j]!, threat.color);
    } else if (target.kind === "path") {
      const vs = threat.vertices;
      for (let i = 0; i + 1 < vs.length; i++)
        out.add(vs[i]!, vs[i + 1]!, threat.color);
    }
  }
  return out;
}

// ======================================================================
// Threat derivation: extremal monochromatic substructures
// ======================================================================

function deriveThreats(snap: Snapshot): ThreatVM[] {
  const { kind } = snap.target;
  if (kind !== "clique" && kind !== "path") return [];
  if (snap.state.edges.length > THREAT_EDGE_CAP) return [];
  const threats: ThreatVM[] = [];
  for (let c = 1; c <= snap.state.q; c++) {
    const adj = colourAdjacency(snap, c);
    if (adj.size === 0) continue;
    if (kind === "clique") {
      const goal = snap.target.t ?? 0;
      const best = largestClique(adj, goal);
      if (best.length >= 2)
        threats.push({ color: c, vertices: best, size: best.length, goal });
    } else {
      const goal = snap.target.n ?? 0;
      const best = longestPath(adj, goal);
      if (best.length >= 2)
        threats.push({ color: c, vertices: best, size: best.length, goal });
    }
  }
  return threats;
}

function colourAdjacency(snap: Snapshot, c: number): Map<number, number[]> {
  const adj = new Map<number, number[]>();
  for (const [u, v, ec] of snap.state.edges) {
    if (ec !== c) continue;
    if (!adj.has(u)) adj.set(u, []);
    if (!adj.has(v)) adj.set(v, []);
    adj.get(u)!.push(v);
    adj.get(v)!.push(u);
  }
  for (const list of adj.values()) list.sort((a, b) => a - b);
  return adj;
}

const WORK_CAP = 200_000;

/**
 * Largest clique in a small graph, capped at `goal` vertices.
 * Deterministic branch order; bails out at WORK_CAP expansions with the
 * best clique found so far (fine for a display aid).
 */
function largestClique(adj: Map<number, number[]>, goal: number): number[] {
  const verts = [...adj.keys()].sort((a, b) => a - b);
  const neigh = new Map<number, Set<number>>();
  for (const v of verts) neigh.set(v, new Set(adj.get(v)!));
  let best: number[] = [];
  let work = 0;

  const extend = (current: number[], candidates: number[]): void => {
    if (current.length > best.length) best = [...current];
    if (best.length >= goal || work > WORK_CAP) return;
    if (current.length + candidates.length <= best.length) return;
    for (let i = 0; i < candidates.length; i++) {
      work++;
      const v = candidates[i]!;
      const nv = neigh.get(v)!;
      extend(
        [...current, v],
        candidates.slice(i + 1).filter((w) => nv.has(w)),
      );
      if (best.length >= goal || work > WORK_CAP) return;
    }
  };

  extend([], verts);
  return best.sort((a, b) => a - b);
}

/**
 * Longest simple path, capped at `goal` vertices, by bounded DFS.
 * Deterministic and work-capped like `largestClique`.
 */
function longestPath(adj: Map<number, number[]>, goal: number): number[] {
  let best: number[] = [];
  let work = 0;
  const visited = new Set<number>();
  const path: number[] = [];

  const dfs = (v: number): void => {
    visited.add(v);
    path.push(v);
    if (path.length > best.length) best = [...path];
    if (best.length < goal && work <= WORK_CAP) {
      for (const w of adj.get(v)!) {
        work++;
        if (!visited.has(w)) dfs(w);
        if (best.length >= goal || work > WORK_CAP) break;
      }
    }
    path.pop();
    visited.delete(v);
  };

  for (const v of [...adj.keys()].sort((a, b) => a - b)) {
    if (best.length >= goal || work > WORK_CAP) break;
    dfs(v);
  }
  return best;
}
