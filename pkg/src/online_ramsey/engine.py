"""Match engine: mutable board, win detection, match runner, replay.

The board keeps one adjacency bitmask per colour per vertex, so strategy
queries and incremental monochromatic-copy checks stay cheap even on
boards with millions of edges.  ``play_match`` alternates Builder and
Painter until a mono copy of the target appears or the edge budget runs
out; every run is deterministic given the strategies and seed, and the
resulting record replays bit-for-bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Protocol, runtime_checkable

from .graph import (ColoredGraphState, TargetSpec, UNCOLORED,
                    contains_mono_copy, mono_copy_with_edge)

__all__ = [
    "EngineError",
    "IllegalMoveError",
    "GameBoard",
    "DrawEdge",
    "ClaimWin",
    "Infeasible",
    "BuilderStrategy",
    "PainterStrategy",
    "BuilderWin",
    "BudgetExhausted",
    "Aborted",
    "InfeasibleReported",
    "MatchRecord",
    "EngineConfig",
    "play_match",
    "replay_match",
    "check_win_after_color",
    "ExhaustReport",
    "exhaust_painter_replies",
]


class EngineError(RuntimeError):
    pass


class IllegalMoveError(EngineError):
    def __init__(self, offender: str, reason: str):
        super().__init__("%s: %s" % (offender, reason))
        self.offender = offender
        self.reason = reason


# ======================================================================
# Board
# ======================================================================


class GameBoard:
    """Mutable coloured board; vertices are 0..n-1, colours 1..q.

    ``adj[c][v]`` is the bitmask of c-neighbours of v; ``adj[0]`` masks all
    drawn edges regardless of colour (including the pending one).
    """

    __slots__ = ("q", "n", "edges", "adj", "pending")

    def __init__(self, q: int, n: int = 0):
        if q < 2:
            raise EngineError("need q >= 2")
        self.q = q
        self.n = 0
        self.edges: list[tuple[int, int, int]] = []
        self.adj: list[list[int]] = [[] for _ in range(q + 1)]
        self.pending: tuple[int, int] | None = None
        if n:
            self.ensure_vertices(n)

    def ensure_vertices(self, n: int) -> None:
        if n > self.n:
            grow = n - self.n
            for rows in self.adj:
                rows.extend([0] * grow)
            self.n = n

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return u < self.n and v < self.n and bool(self.adj[0][u] >> v & 1)

    def edge_color(self, u: int, v: int) -> int | None:
        """Colour of a drawn edge, 0 if pending, None if absent."""
        if not self.has_edge(u, v):
            return None
        for c in range(1, self.q + 1):
            if self.adj[c][u] >> v & 1:
                return c
        return UNCOLORED

    def neighbors_mask(self, v: int, color: int) -> int:
        return self.adj[color][v]

    def degree(self, v: int, color: int) -> int:
        return int.bit_count(self.adj[color][v])

    def draw(self, u: int, v: int) -> None:
        if self.pending is not None:
            raise IllegalMoveError("builder", "previous edge still uncoloured")
        if u == v:
            raise IllegalMoveError("builder", "self loop (%d, %d)" % (u, v))
        if u > v:
            u, v = v, u
        if v >= self.n + 2 or (u >= self.n and v != u + 1):
            raise IllegalMoveError(
                "builder", "move (%d, %d) introduces more than two fresh vertices" % (u, v))
        self.ensure_vertices(v + 1)
        if self.adj[0][u] >> v & 1:
            raise IllegalMoveError("builder", "edge (%d, %d) already drawn" % (u, v))
        self.adj[0][u] |= 1 << v
        self.adj[0][v] |= 1 << u
        self.edges.append((u, v, UNCOLORED))
        self.pending = (u, v)

    def color(self, c: int) -> tuple[int, int]:
        if self.pending is None:
            raise IllegalMoveError("painter", "no pending edge")
        if not (1 <= c <= self.q):
            raise IllegalMoveError("painter", "colour %r outside 1..%d" % (c, self.q))
        u, v = self.pending
        self.adj[c][u] |= 1 << v
        self.adj[c][v] |= 1 << u
        self.edges[-1] = (u, v, c)
        self.pending = None
        return (u, v)

    # undo support for exhaustive search
    def undo_color(self) -> None:
        u, v, c = self.edges[-1]
        if c == UNCOLORED:
            raise EngineError("last edge is not coloured")
        self.adj[c][u] &= ~(1 << v)
        self.adj[c][v] &= ~(1 << u)
        self.edges[-1] = (u, v, UNCOLORED)
        self.pending = (u, v)

    def undo_draw(self) -> None:
        if self.pending is None:
            raise EngineError("no pending edge to undo")
        u, v, _ = self.edges.pop()
        self.adj[0][u] &= ~(1 << v)
        self.adj[0][v] &= ~(1 << u)
        self.pending = None
        # vertex count is left as-is; isolated tail vertices are harmless

    def to_state(self) -> ColoredGraphState:
        return ColoredGraphState(self.n, self.q, tuple(self.edges))

    @staticmethod
    def from_state(state: ColoredGraphState) -> "GameBoard":
        board = GameBoard(state.q, state.vertex_count)
        for u, v, c in state.edges:
            board.draw(u, v)
            if c != UNCOLORED:
                board.color(c)
        return board


# ======================================================================
# Win detection on boards
# ======================================================================


def _mask_bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_with_edge(adjc: list[int], t: int, u: int, v: int) -> list[int] | None:
    """A t-clique containing edge (u, v) in one colour class, as vertex list."""
    if t == 2:
        return [u, v]
    base = adjc[u] & adjc[v]

    def grow(chosen: list[int], cand: int, need: int) -> list[int] | None:
        if need == 0:
            return chosen
        if int.bit_count(cand) < need:
            return None
        for w in _mask_bits(cand):
            got = grow(chosen + [w], cand & adjc[w], need - 1)
            if got is not None:
                return got
            cand &= ~(1 << w)
            if int.bit_count(cand) < need:
                return None
        return None

    got = grow([u, v], base, t - 2)
    return got


def _path_with_edge(adjc: list[int], n_target: int, u: int, v: int) -> list[int] | None:
    """A simple path on n_target vertices containing edge (u, v)."""
    if n_target == 2:
        return [u, v]
    total = n_target - 2

    def extend(end: int, used: int, k: int, acc: list[int]) -> list[int] | None:
        if k == 0:
            return acc
        for w in _mask_bits(adjc[end] & ~used):
            got = extend(w, used | (1 << w), k - 1, acc + [w])
            if got is not None:
                return got
        return None

    for left in range(total + 1):
        right = total - left

        def go_right(used: int, left_part: list[int]) -> list[int] | None:
            got = extend(v, used, right, [])
            if got is not None:
                return left_part[::-1] + [u, v] + got
            return None

        # left extension then right, sharing the used-set
        def go_left(end: int, used: int, k: int, acc: list[int]) -> list[int] | None:
            if k == 0:
                return go_right(used, acc)
            for w in _mask_bits(adjc[end] & ~used):
                got = go_left(w, used | (1 << w), k - 1, acc + [w])
                if got is not None:
                    return got
            return None

        got = go_left(u, (1 << u) | (1 << v), left, [])
        if got is not None:
            return got
    return None


class _CapHit(Exception):
    pass


def _biclique_with_edge(adjc: list[int], t: int, u: int, v: int,
                        node_cap: int) -> tuple[list[int], list[int]] | None:
    """A complete K_{t,t} with u on one side, v on the other, or None.

    Raises _CapHit when the branch count exceeds node_cap.
    """
    state = {"nodes": 0}

    def rec(left: list[int], right: list[int], cand_l: int, cand_r: int
            ) -> tuple[list[int], list[int]] | None:
        if len(left) == t and len(right) == t:
            return (left, right)
        state["nodes"] += 1
        if state["nodes"] > node_cap:
            raise _CapHit()
        need_l, need_r = t - len(left), t - len(right)
        if int.bit_count(cand_l) < need_l or int.bit_count(cand_r) < need_r:
            return None
        if need_l >= need_r:
            for w in _mask_bits(cand_l):
                got = rec(left + [w], right, cand_l & ~(1 << w), cand_r & adjc[w])
                if got is not None:
                    return got
                cand_l &= ~(1 << w)
                if int.bit_count(cand_l) < need_l:
                    return None
        else:
            for w in _mask_bits(cand_r):
                got = rec(left, right + [w], cand_l & adjc[w], cand_r & ~(1 << w))
                if got is not None:
                    return got
                cand_r &= ~(1 << w)
                if int.bit_count(cand_r) < need_r:
                    return None
        return None

    return rec([u], [v], adjc[v] & ~(1 << u), adjc[u] & ~(1 << v))


@dataclass(frozen=True)
class EngineConfig:
    """Win-check policy.  Biclique detection is exact up to the edge cap;
    beyond it the engine relies on builder win claims (always verified)."""

    biclique_exact_edge_cap: int = 3000
    biclique_node_cap: int = 500_000


def check_win_after_color(board: GameBoard, target: TargetSpec, u: int, v: int,
                          c: int, config: EngineConfig = EngineConfig()
                          ) -> dict[int, int] | None:
    """Mono copy of target using the just-coloured edge (u, v), if any."""
    adjc = board.adj[c]
    if target.kind == "clique":
        got = _clique_with_edge(adjc, target.t, u, v)  # type: ignore[arg-type]
        if got is None:
            return None
        return {i: w for i, w in enumerate(got)}
    if target.kind == "path":
        got = _path_with_edge(adjc, target.n, u, v)  # type: ignore[arg-type]
        if got is None:
            return None
        return {i: w for i, w in enumerate(got)}
    if target.kind == "biclique":
        if board.edge_count > config.biclique_exact_edge_cap:
            return None  # too big for per-move search; builder claims cover wins
        try:
            got = _biclique_with_edge(adjc, target.t, u, v,  # type: ignore[arg-type]
                                      config.biclique_node_cap)
        except _CapHit:
            return None
        if got is None:
            return None
        left, right = got
        t = target.t
        emb = {i: w for i, w in enumerate(left)}
        emb.update({t + j: w for j, w in enumerate(right)})  # type: ignore[operator]
        return emb
    got2 = mono_copy_with_edge(board.to_state(), target, u, v, c)
    return got2[1] if got2 is not None else None


# ======================================================================
# Strategy protocol and move values
# ======================================================================


@dataclass(frozen=True)
class DrawEdge:
    u: int
    v: int


@dataclass(frozen=True)
class ClaimWin:
    color: int
    embedding: dict[int, int]  # target vertex -> board vertex


@dataclass(frozen=True)
class Infeasible:
    reasons: tuple[str, ...]


@runtime_checkable
class BuilderStrategy(Protocol):
    ident: str
    declared_budget: int | None

    def next_move(self, board: GameBoard) -> DrawEdge | ClaimWin | Infeasible: ...

    def rationale(self) -> str: ...


@runtime_checkable
class PainterStrategy(Protocol):
    ident: str

    def choose_color(self, board: GameBoard, u: int, v: int) -> int: ...


# ======================================================================
# Match results and records
# ======================================================================


@dataclass(frozen=True)
class BuilderWin:
    edge_count: int
    color: int
    vertices: tuple[int, ...]

    kind = "builder_win"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "edges": self.edge_count,
                "color": self.color, "vertices": list(self.vertices)}


@dataclass(frozen=True)
class BudgetExhausted:
    budget: int

    kind = "budget_exhausted"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "budget": self.budget}


@dataclass(frozen=True)
class Aborted:
    offender: str
    reason: str

    kind = "aborted"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "offender": self.offender, "reason": self.reason}


@dataclass(frozen=True)
class InfeasibleReported:
    reasons: tuple[str, ...]

    kind = "infeasible"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "reasons": list(self.reasons)}


MatchResult = BuilderWin | BudgetExhausted | Aborted | InfeasibleReported


def _result_from_dict(d: dict) -> MatchResult:
    kind = d["kind"]
    if kind == "builder_win":
        return BuilderWin(d["edges"], d["color"], tuple(d["vertices"]))
    if kind == "budget_exhausted":
        return BudgetExhausted(d["budget"])
    if kind == "aborted":
        return Aborted(d["offender"], d["reason"])
    if kind == "infeasible":
        return InfeasibleReported(tuple(d["reasons"]))
    raise ValueError("unknown result kind %r" % (kind,))


@dataclass(frozen=True)
class MatchRecord:
    target: TargetSpec
    builder_id: str
    painter_id: str
    seed: int
    moves: tuple[tuple[int, int, int], ...]
    result: MatchResult
    declared_budget: int | None

    def to_json_dict(self) -> dict:
        return {"v": 1, "target": self.target.to_json_dict(),
                "builder": self.builder_id, "painter": self.painter_id,
                "seed": self.seed, "moves": [list(m) for m in self.moves],
                "result": self.result.as_dict(),
                "declared_budget": self.declared_budget}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(d: dict) -> "MatchRecord":
        return MatchRecord(
            target=TargetSpec.from_json_dict(d["target"]),
            builder_id=d["builder"], painter_id=d["painter"],
            seed=int(d["seed"]),
            moves=tuple((int(u), int(v), int(c)) for u, v, c in d["moves"]),
            result=_result_from_dict(d["result"]),
            declared_budget=d.get("declared_budget"))

    @staticmethod
    def from_json(text: str) -> "MatchRecord":
        return MatchRecord.from_json_dict(json.loads(text))

    def final_state(self) -> ColoredGraphState:
        n = max([max(u, v) for u, v, _ in self.moves], default=-1) + 1
        return ColoredGraphState(n, self.target.q, self.moves)


# ======================================================================
# Match runner
# ======================================================================


def _verify_claim(board: GameBoard, target: TargetSpec, claim: ClaimWin) -> bool:
    emb = claim.embedding
    if len(set(emb.values())) != target.vertex_count or len(emb) != target.vertex_count:
        return False
    adjc = board.adj[claim.color]
    for a, b in target.edges():
        x, y = emb.get(a), emb.get(b)
        if x is None or y is None or x >= board.n or y >= board.n:
            return False
        if not (adjc[x] >> y & 1):
            return False
    return True


def play_match(builder: BuilderStrategy, painter: PainterStrategy,
               target: TargetSpec, budget: int, seed: int = 0,
               config: EngineConfig = EngineConfig()) -> MatchRecord:
    """Run one match; returns a replayable record.

    Builder and Painter are live strategy instances.  A strategy-illegal
    move aborts the match as a loss for the offender.  Builder may claim a
    finished mono copy instead of drawing; claims are verified edge by edge.
    """
    board = GameBoard(target.q)

    def record(result: MatchResult) -> MatchRecord:
        return MatchRecord(target=target, builder_id=builder.ident,
                           painter_id=painter.ident, seed=seed,
                           moves=tuple(board.edges), result=result,
                           declared_budget=builder.declared_budget)

    while True:
        try:
            move = builder.next_move(board)
        except IllegalMoveError as exc:
            return record(Aborted(offender="builder", reason=exc.reason))
        if isinstance(move, Infeasible):
            return record(InfeasibleReported(reasons=move.reasons))
        if isinstance(move, ClaimWin):
            # claims cost no edges, so they are heard even at the budget line
            if not _verify_claim(board, target, move):
                return record(Aborted(offender="builder",
                                      reason="win claim failed verification"))
            verts = tuple(move.embedding[i] for i in range(target.vertex_count))
            return record(BuilderWin(edge_count=board.edge_count,
                                     color=move.color, vertices=verts))
        if board.edge_count >= budget:
            return record(BudgetExhausted(budget=budget))
        try:
            board.draw(move.u, move.v)
        except IllegalMoveError as exc:
            return record(Aborted(offender="builder", reason=exc.reason))
        u, v = board.pending  # type: ignore[misc]
        try:
            c = painter.choose_color(board, u, v)
            if not isinstance(c, int) or isinstance(c, bool):
                raise IllegalMoveError("painter", "colour must be an int, got %r" % (c,))
            board.color(c)
        except IllegalMoveError as exc:
            return record(Aborted(offender="painter", reason=exc.reason))
        emb = check_win_after_color(board, target, u, v, c, config)
        if emb is not None:
            verts = tuple(emb[i] for i in range(target.vertex_count))
            return record(BuilderWin(edge_count=board.edge_count,
                                     color=c, vertices=verts))


def replay_match(rec: MatchRecord, config: EngineConfig = EngineConfig()) -> MatchRecord:
    """Re-run a record from its strategy identifiers; must agree move-for-move."""
    from . import ids

    builder = ids.make_builder(rec.builder_id, rec.target, seed=rec.seed)
    painter = ids.make_painter(rec.painter_id, rec.target, seed=rec.seed)
    budget = rec.declared_budget if rec.declared_budget is not None else len(rec.moves)
    fresh = play_match(builder, painter, rec.target, budget=budget,
                       seed=rec.seed, config=config)
    return fresh


# ======================================================================
# Exhaustive Painter enumeration
# ======================================================================


@dataclass
class ExhaustReport:
    worst_edges: int
    leaves: int
    memo_states: int
    all_wins: bool


def exhaust_painter_replies(builder_factory: Callable[[], BuilderStrategy],
                            target: TargetSpec, budget: int,
                            config: EngineConfig = EngineConfig(),
                            require_win: bool = True) -> ExhaustReport:
    """Walk every Painter reply sequence against one builder strategy.

    Equal builder-provided signatures (``dedup_signature``) collapse: the
    signature must determine the whole continuation subtree, which holds for
    the chase-style builders whose play depends only on per-phase counts.
    Raises AssertionError on any leaf that is not a Builder win within
    ``budget`` when ``require_win`` is set.
    """
    builder = builder_factory()
    board = GameBoard(target.q)
    memo: dict = {}
    stats = {"leaves": 0}

    def walk() -> int:
        sig = None
        sig_fn = getattr(builder, "dedup_signature", None)
        if sig_fn is not None:
            sig = sig_fn(board)
            if sig is not None and sig in memo:
                return memo[sig]
        move = builder.next_move(board)
        if isinstance(move, Infeasible):
            raise AssertionError("builder infeasible mid-walk: %r" % (move.reasons,))
        if isinstance(move, ClaimWin):
            if not _verify_claim(board, target, move):
                raise AssertionError("bad win claim at %d edges" % board.edge_count)
            stats["leaves"] += 1
            res = board.edge_count
            if sig is not None:
                memo[sig] = res
            return res
        if board.edge_count >= budget:
            if require_win:
                raise AssertionError(
                    "budget %d exhausted without a win (%d edges drawn)"
                    % (budget, board.edge_count))
            stats["leaves"] += 1
            return board.edge_count
        board.draw(move.u, move.v)
        u, v = board.pending  # type: ignore[misc]
        snap_fn = getattr(builder, "snapshot", None)
        snap = snap_fn() if snap_fn is not None else None
        worst = 0
        for c in range(1, target.q + 1):
            board.color(c)
            emb = check_win_after_color(board, target, u, v, c, config)
            if emb is not None:
                stats["leaves"] += 1
                worst = max(worst, board.edge_count)
            else:
                worst = max(worst, walk())
            board.undo_color()
            if snap is not None:
                builder.restore(snap)  # type: ignore[attr-defined]
        board.undo_draw()
        if sig is not None:
            memo[sig] = worst
        return worst

    worst = walk()
    return ExhaustReport(worst_edges=worst, leaves=stats["leaves"],
                         memo_states=len(memo), all_wins=True)
