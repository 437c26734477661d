"""Painter strategies.

Painters see the whole board plus the pending edge and answer with a
colour in ``1..q``.  All painters here are deterministic given their
construction arguments (the random painter is seeded), which is what makes
match records replayable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .engine import EngineConfig, GameBoard, check_win_after_color
from .graph import TargetSpec, strip_isolated

__all__ = [
    "RandomPainter",
    "GreedyPainter",
    "MinThreatPainter",
    "AdversarialPainter",
]


@dataclass
class RandomPainter:
    """Uniform colour choice from a seeded generator."""

    q: int
    seed: int

    def __post_init__(self) -> None:
        self._rng = random.Random(self.seed)
        self.ident = "random:seed=%d" % self.seed

    def choose_color(self, board: GameBoard, u: int, v: int) -> int:
        return self._rng.randint(1, self.q)


def _completes(board: GameBoard, target: TargetSpec, u: int, v: int, c: int,
               config: EngineConfig) -> bool:
    board.color(c)
    try:
        return check_win_after_color(board, target, u, v, c, config) is not None
    finally:
        board.undo_color()


def _local_pressure(board: GameBoard, u: int, v: int, c: int) -> tuple[int, int]:
    """How much structure colour c already has around the pending edge.

    Primary: common c-neighbourhood of the endpoints (new triangles and
    near-cliques); secondary: combined c-degree.
    """
    common = int.bit_count(board.adj[c][u] & board.adj[c][v])
    degsum = board.degree(u, c) + board.degree(v, c)
    return (common, degsum)


@dataclass
class GreedyPainter:
    """Avoids completing a mono copy outright, then picks the colour with
    the least structure already built around the pending edge."""

    q: int
    target: TargetSpec
    config: EngineConfig = EngineConfig()

    def __post_init__(self) -> None:
        self.ident = "greedy"

    def choose_color(self, board: GameBoard, u: int, v: int) -> int:
        best = None
        for c in range(1, self.q + 1):
            loses = _completes(board, self.target, u, v, c, self.config)
            score = (1 if loses else 0, *_local_pressure(board, u, v, c), c)
            if best is None or score < best:
                best = score
        return best[-1]  # type: ignore[index]


class MinThreatPainter:
    """Shallow minimax painter.

    On small boards (at most ``vertex_cap`` non-isolated vertices) it plays
    out ``depth`` Builder-move/Painter-reply pairs exactly, with Builder
    restricted to one representative move per pair orbit, and picks the
    colour with the lowest worst-case threat.  Larger boards fall back to
    the greedy score, since exhaustive lookahead there is not affordable.
    """

    def __init__(self, q: int, target: TargetSpec, depth: int = 2,
                 vertex_cap: int = 9, config: EngineConfig = EngineConfig()):
        self.q = q
        self.target = target
        self.depth = depth
        self.vertex_cap = vertex_cap
        self.config = config
        self.ident = "minthreat:depth=%d" % depth
        self._greedy = GreedyPainter(q, target, config)

    def choose_color(self, board: GameBoard, u: int, v: int) -> int:
        active = sum(1 for w in range(board.n) if board.adj[0][w])
        if active > self.vertex_cap or self.target.kind == "biclique":
            return self._greedy.choose_color(board, u, v)
        best: tuple | None = None
        for c in range(1, self.q + 1):
            board.color(c)
            try:
                if check_win_after_color(board, self.target, u, v, c,
                                         self.config) is not None:
                    threat = 1.0  # completing now is the worst outcome
                else:
                    threat = self._threat(board, self.depth)
            finally:
                board.undo_color()
            score = (threat, *_local_pressure(board, u, v, c), c)
            if best is None or score < best:
                best = score
        return best[-1]  # type: ignore[index]

    def _threat(self, board: GameBoard, depth: int) -> float:
        """Worst case over Builder's next ``depth`` moves, in [0, 1].

        A loss k builder-moves ahead scores 2^-k, so nearer threats
        dominate and an unavoidable-now loss (1.0) outranks them all.
        """
        if depth == 0:
            return 0.0
        from .graph import pair_orbit_partition

        state = strip_isolated(board.to_state())
        if state.vertex_count > self.vertex_cap:
            return 0.0
        worst = 0.0
        for (a, b), _size, _key in pair_orbit_partition(state):
            sub = GameBoard.from_state(state)
            sub.draw(a, b)
            reply_best = 1.0
            for cc in range(1, self.q + 1):
                sub.color(cc)
                try:
                    if check_win_after_color(sub, self.target, a, b, cc,
                                             self.config) is not None:
                        t = 1.0
                    else:
                        t = self._threat(sub, depth - 1)
                finally:
                    sub.undo_color()
                reply_best = min(reply_best, t)
            sub.undo_draw()
            worst = max(worst, reply_best / 2.0)
            if worst >= 0.5:
                break  # forced loss found; no deeper threat can outrank it
        return worst


class AdversarialPainter:
    """Plays perfectly against a declared edge budget via the exact solver.

    While Builder can still be held past the budget, any colour certified
    safe is played; once the position is lost the painter maximises the
    number of edges Builder still needs.
    """

    def __init__(self, q: int, target: TargetSpec, budget: int):
        self.q = q
        self.target = target
        self.budget = budget
        self.ident = "adversarial:budget=%d" % budget
        self._solver = None  # shared transposition table across queries

    def choose_color(self, board: GameBoard, u: int, v: int) -> int:
        from .solver import SolverConfig, _Solver, best_color

        if self._solver is None:
            self._solver = _Solver(self.target,
                                   SolverConfig(max_budget=max(self.budget, 1)))
        remaining = self.budget - board.edge_count
        return best_color(board.to_state(), self.target, remaining,
                          solver=self._solver)
