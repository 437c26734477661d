/**
 * Deterministic force-directed board layout.
 *
 * Positions are a pure function of (session id, vertex count, edge list):
 * vertices start on a circle whose phase is seeded by the session id,
 * then relax for a fixed number of force iterations.  Replays of the
 * same session therefore always look identical, and vertices the engine
 * introduces enter at the periphery of the disc.
 */

import type { EdgeTriple } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** FNV-1a, 32 bit: stable string hash for layout seeding. */
export function hashString(s: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < s.length; i++) {
    h ^= s.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

/** Small deterministic PRNG (mulberry32). */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const ITERATIONS = 60;
const SIZE = 100; // viewBox is 0..SIZE in both axes

export function layoutPositions(
  sessionId: string,
  n: number,
  edges: readonly EdgeTriple[],
): Point[] {
  const rand = mulberry32(hashString(sessionId));
  const phase = rand() * Math.PI * 2;
  const cx = SIZE / 2;
  const cy = SIZE / 2;
  const radius = SIZE * 0.42;

  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    const angle = phase + (2 * Math.PI * i) / Math.max(n, 1);
    xs[i] = cx + radius * Math.cos(angle);
    ys[i] = cy + radius * Math.sin(angle);
  }
  if (n <= 1) return collect(xs, ys, n);

  const ideal = (SIZE * 0.9) / Math.sqrt(n);
  for (let step = 0; step < ITERATIONS; step++) {
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);
    // pairwise repulsion
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i]! - xs[j]!;
        let dy = ys[i]! - ys[j]!;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = 1e-3 * (i - j);
          dy = 1e-3;
          d2 = dx * dx + dy * dy;
        }
        const f = (ideal * ideal) / d2;
        fx[i]! += dx * f * 0.05;
        fy[i]! += dy * f * 0.05;
        fx[j]! -= dx * f * 0.05;
        fy[j]! -= dy * f * 0.05;
      }
    }
    // attraction along drawn edges
    for (const [u, v] of edges) {
      if (u >= n || v >= n) continue;
      const dx = xs[u]! - xs[v]!;
      const dy = ys[u]! - ys[v]!;
      const d = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const f = (d - ideal) / d;
      fx[u]! -= dx * f * 0.1;
      fy[u]! -= dy * f * 0.1;
      fx[v]! += dx * f * 0.1;
      fy[v]! += dy * f * 0.1;
    }
    const cool = 1 - step / ITERATIONS;
    for (let i = 0; i < n; i++) {
      xs[i]! += clamp(fx[i]!, -3, 3) * cool;
      ys[i]! += clamp(fy[i]!, -3, 3) * cool;
      xs[i] = clamp(xs[i]!, 4, SIZE - 4);
      ys[i] = clamp(ys[i]!, 4, SIZE - 4);
    }
  }
  return collect(xs, ys, n);
}

function clamp(v: number, lo: number, hi: number): number {
  return v < lo ? lo : v > hi ? hi : v;
}

function collect(xs: Float64Array, ys: Float64Array, n: number): Point[] {
  const out: Point[] = [];
  for (let i = 0; i < n; i++) {
    out.push({ x: round2(xs[i]!), y: round2(ys[i]!) });
  }
  return out;
}

/** Two decimals: stable string rendering into SVG attributes. */
function round2(v: number): number {
  return Math.round(v * 100) / 100;
}
