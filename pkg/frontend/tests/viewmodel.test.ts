import { describe, expect, it } from "vitest";

import { buildViewModel } from "../src/viewmodel.js";
import { clone, finished, midGame, opening, pathGame } from "./fixtures.js";

describe("buildViewModel", () => {
  it("is pure: identical snapshots give identical models", () => {
    const a = buildViewModel(midGame);
    const b = buildViewModel(clone(midGame));
    expect(JSON.stringify(a)).toBe(JSON.stringify(b));
  });

  it("marks the pending edge and prompts the painter", () => {
    const vm = buildViewModel(opening);
    expect(vm.edges).toHaveLength(1);
    expect(vm.edges[0]!.pending).toBe(true);
    expect(vm.edges[0]!.color).toBe(0);
    expect(vm.banner).toBe("Your turn — colour the pending edge (1..2)");
    expect(vm.finished).toBe(false);
    expect(vm.moveLog).toEqual([
      "#1 0–1 pending",
      "engine: chain step 1: spoke 1/31 from centre 0",
    ]);
  });

  it("derives one extremal mono threat per colour on clique targets", () => {
    const vm = buildViewModel(midGame);
    expect(vm.threats).toEqual([
      { color: 1, vertices: [0, 1], size: 2, goal: 3 },
      { color: 2, vertices: [0, 3], size: 2, goal: 3 },
    ]);
    const byPair = new Map(vm.edges.map((e) => [`${e.u},${e.v}`, e]));
    expect(byPair.get("0,1")!.highlight).toBe(true);
    expect(byPair.get("0,3")!.highlight).toBe(true);
    expect(byPair.get("0,2")!.highlight).toBe(false);
    expect(byPair.get("1,2")!.highlight).toBe(false);
  });

  it("derives the longest mono path on path targets", () => {
    const vm = buildViewModel(pathGame);
    expect(vm.threats).toEqual([
      { color: 1, vertices: [0, 1, 2], size: 3, goal: 4 },
    ]);
    const highlighted = vm.edges.filter((e) => e.highlight);
    expect(highlighted.map((e) => [e.u, e.v])).toEqual([
      [0, 1],
      [1, 2],
    ]);
  });

  it("highlights exactly the winning embedding on a finished board", () => {
    const vm = buildViewModel(finished);
    expect(vm.finished).toBe(true);
    expect(vm.banner).toContain("You lose");
    expect(vm.banner).toContain("K_3");
    expect(vm.threats).toEqual([]);
    const highlighted = vm.edges.filter((e) => e.highlight);
    expect(highlighted).toHaveLength(3);
    const pairs = new Set(highlighted.map((e) => `${e.u},${e.v}`));
    expect(pairs).toEqual(new Set(["0,1", "0,2", "1,2"]));
    const lit = vm.vertices.filter((v) => v.highlight).map((v) => v.id);
    expect(lit).toEqual([0, 1, 2]);
  });

  it("reports a budget win for the painter", () => {
    const snap = clone(opening);
    snap.turn = "finished";
    snap.pending = null;
    snap.result = { kind: "budget_exhausted", budget: 160 };
    const vm = buildViewModel(snap);
    expect(vm.banner).toContain("You win");
    expect(vm.banner).toContain("160");
  });

  it("surfaces infeasibility reasons in the banner", () => {
    const snap = clone(opening);
    snap.turn = "finished";
    snap.pending = null;
    snap.result = { kind: "infeasible", reasons: ["t >= q (log_q t >= 1)"] };
    const vm = buildViewModel(snap);
    expect(vm.banner).toContain("t >= q (log_q t >= 1)");
  });
});
