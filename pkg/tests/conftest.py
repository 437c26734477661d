"""Shared oracles and generators for the test suite.

The brute-force helpers here are deliberately naive — plain enumeration
with no pruning — so they form an independent reference implementation
for the fast paths in the package.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from online_ramsey.graph import ColoredGraphState, TargetSpec


# ======================================================================
# Reference implementations
# ======================================================================


def brute_mono_copy(state: ColoredGraphState, target: TargetSpec
                    ) -> tuple[int, dict[int, int]] | None:
    """Reference mono-copy finder: every injection, every colour."""
    tv = target.vertex_count
    tedges = target.edges()
    if tv > state.vertex_count:
        return None
    for color in range(1, state.q + 1):
        adj = set()
        for u, v, c in state.edges:
            if c == color:
                adj.add((u, v))
                adj.add((v, u))
        for sub in permutations(range(state.vertex_count), tv):
            if all((sub[a], sub[b]) in adj for a, b in tedges):
                return (color, {i: sub[i] for i in range(tv)})
    return None


def check_embedding(state: ColoredGraphState, target: TargetSpec,
                    color: int, mapping: dict[int, int]) -> bool:
    """Every target edge must land on a state edge of the given colour."""
    if len(set(mapping.values())) != target.vertex_count:
        return False
    colored = {(u, v): c for u, v, c in state.edges}
    for a, b in target.edges():
        x, y = mapping[a], mapping[b]
        if x > y:
            x, y = y, x
        if colored.get((x, y)) != color:
            return False
    return True


def random_colored_state(rng: random.Random, max_n: int = 8, q: int = 2,
                         density: float | None = None) -> ColoredGraphState:
    n = rng.randint(0, max_n)
    state = ColoredGraphState.empty(q, n)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    p = density if density is not None else rng.random()
    for u, v in pairs:
        if rng.random() < p:
            state = state.add_edge(u, v).color_pending(rng.randint(1, q))
    return state
