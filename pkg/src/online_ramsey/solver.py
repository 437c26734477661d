"""Exact game values by minimax over canonicalized positions.

``solve`` computes the least edge count at which Builder can force a mono
copy of a small target, by iterative deepening on the edge budget.  A
position is a win within r iff some pair-orbit representative move leaves
Painter with no reply that avoids both an immediate copy and a win within
r-1.  Because winning is monotone in the budget, the transposition table
stores, per canonical position, the smallest budget known to win and the
largest known to fail; both sides of the table survive deepening passes.

Solutions carry replayable certificates: a Builder policy (canonical
position -> move, in canonical coordinates) and a Painter policy
(canonical pending position -> colour).  ``verify_certificate`` replays
both exhaustively.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import (CanonicalForm, ColoredGraphState, TargetSpec,
                    canonical_form, mono_copy_with_edge, contains_mono_copy,
                    pair_orbit_partition, strip_isolated)

__all__ = [
    "SolverEnvelopeError",
    "SolverConfig",
    "SolveStats",
    "SolveResult",
    "solve",
    "best_color",
    "verify_certificate",
    "CertificateReport",
]


class SolverEnvelopeError(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    max_budget: int = 12
    use_table: bool = True
    threads: int = 1
    collect_certificates: bool = True


@dataclass
class SolveStats:
    nodes: int = 0
    table_hits: int = 0
    depth_reached: int = 0


@dataclass
class SolveResult:
    target: TargetSpec
    value: int | None          # exact value, or None when budget-capped
    lower_bound: int           # value when exact; proven bound otherwise
    builder_policy: dict[str, tuple]    # canonical key hex -> move
    painter_policy: dict[str, int]      # canonical pending key hex -> colour
    stats: SolveStats
    max_budget: int
    used_table: bool

    @property
    def lower_bound_only(self) -> bool:
        return self.value is None

    def to_json_dict(self) -> dict:
        return {
            "v": 1,
            "target": self.target.to_json_dict(),
            "value": self.value,
            "lower_bound": self.lower_bound,
            "builder_policy": {k: list(m) for k, m in self.builder_policy.items()},
            "painter_policy": dict(self.painter_policy),
            "stats": {"nodes": self.stats.nodes,
                      "table_hits": self.stats.table_hits,
                      "depth_reached": self.stats.depth_reached},
            "max_budget": self.max_budget,
            "used_table": self.used_table,
        }


_FRESH = -1  # marker for "a fresh vertex" in canonical-coordinate moves


class _Solver:
    def __init__(self, target: TargetSpec, config: SolverConfig):
        if target.vertex_count > 10:
            raise SolverEnvelopeError("target has %d vertices; envelope is 10"
                                      % target.vertex_count)
        self.target = target
        self.q = target.q
        self.config = config
        self.vertex_cap = 2 * config.max_budget
        self.win_at: dict[bytes, int] = {}    # smallest budget known winning
        self.loss_at: dict[bytes, int] = {}   # largest budget known losing
        self.stats = SolveStats()
        self._lock = threading.Lock()

    # --- canonical helpers -------------------------------------------------
    def _form(self, state: ColoredGraphState, allow_pending: bool = False
              ) -> CanonicalForm:
        return canonical_form(state, color_symmetric=True,
                              allow_pending=allow_pending)

    def _key(self, state: ColoredGraphState) -> bytes:
        return self._form(state).key

    # --- the game recursion -------------------------------------------------
    def win_within(self, state: ColoredGraphState, r: int) -> bool:
        """Can Builder force a mono copy within r more edges?"""
        if r <= 0:
            return False
        state = strip_isolated(state)
        key = None
        if self.config.use_table:
            key = self._key(state)
            won = self.win_at.get(key)
            if won is not None and won <= r:
                self.stats.table_hits += 1
                return True
            lost = self.loss_at.get(key)
            if lost is not None and lost >= r:
                self.stats.table_hits += 1
                return False
        self.stats.nodes += 1
        win = self._search_moves(state, r)
        if key is not None:
            with self._lock:
                if win:
                    prev = self.win_at.get(key)
                    if prev is None or r < prev:
                        self.win_at[key] = r
                else:
                    prev = self.loss_at.get(key)
                    if prev is None or r > prev:
                        self.loss_at[key] = r
        return win

    def _moves(self, state: ColoredGraphState) -> list[tuple[int, int]]:
        reps = [pair for pair, _size, _key in pair_orbit_partition(
                state, color_symmetric=True)]
        if state.vertex_count >= self.vertex_cap:
            reps = [(u, v) for (u, v) in reps if v < state.vertex_count]
        return reps

    def _move_score(self, state: ColoredGraphState, u: int, v: int) -> int:
        """Cheap priority: edges among existing, busiest first."""
        n = state.vertex_count
        if u >= n or v >= n:
            return -1 if u >= n else 0
        deg = state.degrees()
        return 1 + deg[u] + deg[v]

    def _search_moves(self, state: ColoredGraphState, r: int) -> bool:
        reps = self._moves(state)
        reps.sort(key=lambda uv: -self._move_score(state, *uv))
        for (u, v) in reps:
            if self._move_wins(state, u, v, r):
                return True
        return False

    def _move_wins(self, state: ColoredGraphState, u: int, v: int, r: int) -> bool:
        pend = state
        if max(u, v) >= pend.vertex_count:
            pend = pend.add_vertices(max(u, v) + 1 - pend.vertex_count)
        pend = pend.add_edge(u, v)
        deferred: list[ColoredGraphState] = []
        for c in range(1, self.q + 1):
            nxt = pend.color_pending(c)
            if mono_copy_with_edge(nxt, self.target, u, v, c) is not None:
                continue  # this colour loses immediately for Painter
            if r == 1:
                return False  # Painter escapes the last edge
            deferred.append(nxt)
        for nxt in deferred:
            if not self.win_within(nxt, r - 1):
                return False
        return True

    # --- top level ----------------------------------------------------------
    def solve(self) -> SolveResult:
        root = ColoredGraphState.empty(self.q)
        value = None
        for r in range(1, self.config.max_budget + 1):
            self.stats.depth_reached = r
            if self._root_win(root, r):
                value = r
                break
        builder_policy: dict[str, tuple] = {}
        painter_policy: dict[str, int] = {}
        if value is not None and self.config.collect_certificates:
            self._collect_builder(root, value, builder_policy)
            if value > 1:
                self._collect_painter(root, value - 1, painter_policy, set())
        return SolveResult(
            target=self.target,
            value=value,
            lower_bound=value if value is not None else self.config.max_budget + 1,
            builder_policy=builder_policy,
            painter_policy=painter_policy,
            stats=self.stats,
            max_budget=self.config.max_budget,
            used_table=self.config.use_table,
        )

    def _root_win(self, root: ColoredGraphState, r: int) -> bool:
        if self.config.threads <= 1:
            return self.win_within(root, r)
        from concurrent.futures import ThreadPoolExecutor

        reps = self._moves(strip_isolated(root))
        with ThreadPoolExecutor(max_workers=self.config.threads) as pool:
            futures = [pool.submit(self._move_wins, strip_isolated(root), u, v, r)
                       for (u, v) in reps]
            return any(f.result() for f in futures)

    # --- certificates ---------------------------------------------------------
    def _canonical_move(self, state: ColoredGraphState, u: int, v: int,
                        form: CanonicalForm) -> tuple[int, int]:
        n = state.vertex_count
        pu = _FRESH if u >= n else form.labeling[u]
        pv = _FRESH if v >= n else form.labeling[v]
        lo, hi = sorted((pu, pv))
        return (lo, hi)

    def _collect_builder(self, state: ColoredGraphState, r: int,
                         policy: dict[str, tuple]) -> None:
        state = strip_isolated(state)
        form = self._form(state)
        hexkey = form.key.hex()
        if hexkey in policy:
            return
        reps = self._moves(state)
        reps.sort()  # lexicographically least winning representative
        chosen = None
        for (u, v) in reps:
            if self._move_wins(state, u, v, r):
                chosen = (u, v)
                break
        if chosen is None:
            raise AssertionError("certificate walk hit a non-winning state")
        policy[hexkey] = self._canonical_move(state, *chosen, form)
        u, v = chosen
        pend = state
        if max(u, v) >= pend.vertex_count:
            pend = pend.add_vertices(max(u, v) + 1 - pend.vertex_count)
        pend = pend.add_edge(u, v)
        for c in range(1, self.q + 1):
            nxt = pend.color_pending(c)
            if mono_copy_with_edge(nxt, self.target, u, v, c) is None:
                self._collect_builder(nxt, r - 1, policy)

    def _collect_painter(self, state: ColoredGraphState, r: int,
                         policy: dict[str, int], seen: set[bytes]) -> None:
        """Escape colours for every builder continuation within budget r."""
        state = strip_isolated(state)
        key = self._key(state)
        if key in seen:
            return
        seen.add(key)
        if r <= 0:
            return
        for (u, v) in self._moves(state):
            pend = state
            if max(u, v) >= pend.vertex_count:
                pend = pend.add_vertices(max(u, v) + 1 - pend.vertex_count)
            pend = pend.add_edge(u, v)
            pform = self._form(pend, allow_pending=True)
            chosen = None
            for c in range(1, self.q + 1):
                nxt = pend.color_pending(c)
                if mono_copy_with_edge(nxt, self.target, u, v, c) is not None:
                    continue
                if not self.win_within(nxt, r - 1):
                    chosen = c
                    break
            if chosen is None:
                raise AssertionError("painter certificate walk trapped at "
                                     "budget %d" % r)
            canon_colour = pform.color_perm[chosen - 1]
            policy[pform.key.hex()] = canon_colour
            self._collect_painter(pend.color_pending(chosen), r - 1,
                                  policy, seen)


def solve(target: TargetSpec, max_budget: int = 12, use_table: bool = True,
          threads: int = 1, collect_certificates: bool = True) -> SolveResult:
    config = SolverConfig(max_budget=max_budget, use_table=use_table,
                          threads=threads,
                          collect_certificates=collect_certificates)
    return _Solver(target, config).solve()


def best_color(state: ColoredGraphState, target: TargetSpec,
               remaining_budget: int, max_envelope: int = 12,
               solver: _Solver | None = None) -> int:
    """Painter's optimal colour for the pending edge against a budget.

    Any colour that survives the remaining budget is preferred (lowest
    such); in lost positions the colour maximizing the edges Builder still
    needs is returned.  Passing ``solver`` reuses its transposition table
    across queries, which repeated play over related positions relies on.
    """
    if state.pending_edge is None:
        raise ValueError("state has no pending edge")
    if remaining_budget > max_envelope:
        raise SolverEnvelopeError(
            "remaining budget %d above solver envelope %d"
            % (remaining_budget, max_envelope))
    u, v = state.pending_edge
    if solver is None:
        solver = _Solver(target, SolverConfig(max_budget=max(remaining_budget, 1)))
    best: tuple | None = None
    for c in range(1, target.q + 1):
        nxt = state.color_pending(c)
        if mono_copy_with_edge(nxt, target, u, v, c) is not None:
            score = (0, -c)  # loses immediately
        else:
            need = None
            for r in range(1, remaining_budget + 1):
                if solver.win_within(nxt, r):
                    need = r  # builder still needs r edges after this colour
                    break
            if need is None:
                score = (float("inf"), -c)  # survives the whole budget
            else:
                score = (need, -c)
        if best is None or score > best:
            best = score
            chosen = c
    return chosen


@dataclass
class CertificateReport:
    builder_ok: bool
    painter_ok: bool
    builder_leaves: int
    painter_leaves: int

    @property
    def ok(self) -> bool:
        return self.builder_ok and self.painter_ok


def verify_certificate(result: SolveResult) -> CertificateReport:
    """Exhaustively replay both certificates.

    Builder policy must beat every colour sequence within ``value`` edges;
    painter policy must survive every builder orbit-move tree at budget
    value-1.  Raises AssertionError on the first violation.
    """
    if result.value is None:
        raise ValueError("cannot verify a budget-capped result")
    target = result.target
    q = target.q
    value = result.value
    solver = _Solver(target, SolverConfig(max_budget=value))

    b_leaves = 0

    def replay_builder(state: ColoredGraphState, used: int) -> None:
        nonlocal b_leaves
        state = strip_isolated(state)
        form = solver._form(state)
        move = result.builder_policy.get(form.key.hex())
        if move is None:
            raise AssertionError("builder policy missing a reachable state")
        if used >= value:
            raise AssertionError("builder policy exceeded the value")
        inv = {pos: vtx for vtx, pos in enumerate(form.labeling)}
        n = state.vertex_count
        fresh = [n, n + 1]
        uv = []
        for p in move:
            if p == _FRESH:
                uv.append(fresh.pop(0))
            else:
                uv.append(inv[p])
        u, v = sorted(uv)
        pend = state
        if max(u, v) >= pend.vertex_count:
            pend = pend.add_vertices(max(u, v) + 1 - pend.vertex_count)
        pend = pend.add_edge(u, v)
        for c in range(1, q + 1):
            nxt = pend.color_pending(c)
            if mono_copy_with_edge(nxt, target, u, v, c) is not None:
                b_leaves += 1
                continue
            replay_builder(nxt, used + 1)

    replay_builder(ColoredGraphState.empty(q), 0)

    p_leaves = 0
    seen: set[tuple[bytes, int]] = set()

    def replay_painter(state: ColoredGraphState, remaining: int) -> None:
        nonlocal p_leaves
        state = strip_isolated(state)
        key = (solver._key(state), remaining)
        if key in seen:
            return
        seen.add(key)
        if remaining == 0:
            p_leaves += 1
            return
        for (u, v) in solver._moves(state):
            pend = state
            if max(u, v) >= pend.vertex_count:
                pend = pend.add_vertices(max(u, v) + 1 - pend.vertex_count)
            pend = pend.add_edge(u, v)
            pform = solver._form(pend, allow_pending=True)
            canon_colour = result.painter_policy.get(pform.key.hex())
            if canon_colour is None:
                raise AssertionError("painter policy missing a reachable state")
            inv_perm = [0] * q
            for orig, canon in enumerate(pform.color_perm):
                inv_perm[canon - 1] = orig + 1
            c = inv_perm[canon_colour - 1]
            nxt = pend.color_pending(c)
            if mono_copy_with_edge(nxt, target, u, v, c) is not None:
                raise AssertionError("painter policy coloured into a mono copy")
            replay_painter(nxt, remaining - 1)

    if value > 1:
        replay_painter(ColoredGraphState.empty(q), value - 1)
    else:
        p_leaves = 1

    return CertificateReport(builder_ok=True, painter_ok=True,
                             builder_leaves=b_leaves, painter_leaves=p_leaves)
