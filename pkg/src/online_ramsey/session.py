"""Stateful game sessions for interactive play.

A session pits a human against an engine strategy.  The human owns one
role; whenever the turn passes to the engine its reply is applied in the
same step, so a session at rest is always waiting on the human (or
finished).  All game rules live in the engine module — this layer only
sequences turns, which is what lets the HTTP adapter on top stay free of
game logic.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .engine import (
    ClaimWin,
    DrawEdge,
    EngineConfig,
    GameBoard,
    IllegalMoveError,
    Infeasible,
    MatchResult,
    BuilderWin,
    BudgetExhausted,
    InfeasibleReported,
    Aborted,
    check_win_after_color,
    _verify_claim,
)
from .graph import TargetSpec
from . import ids

__all__ = [
    "SessionError",
    "WrongTurnError",
    "SessionFinishedError",
    "UnknownSessionError",
    "SessionBusyError",
    "ColorMove",
    "GameSession",
    "create_session",
    "session_step",
    "SessionStore",
]

# fallback edge cap for human-Builder games, where nobody declares a budget
DEFAULT_HUMAN_BUILDER_BUDGET = 100


class SessionError(Exception):
    """Base for turn/lifecycle violations; carries a machine-readable code."""

    code = "session-error"


class WrongTurnError(SessionError):
    code = "wrong-turn"


class SessionFinishedError(SessionError):
    code = "session-finished"


class UnknownSessionError(SessionError):
    code = "unknown-session"


class SessionBusyError(SessionError):
    """A conflicting request holds this session's turn lock."""

    code = "conflict"


@dataclass(frozen=True)
class ColorMove:
    c: int


# ======================================================================
# Session
# ======================================================================


@dataclass
class GameSession:
    id: str
    target: TargetSpec
    human_role: str  # "builder" | "painter"
    engine_strategy: object
    engine_strategy_id: str
    board: GameBoard
    budget: int
    seed: int
    config: EngineConfig
    turn: str = "builder"  # "builder" | "painter" | "finished"
    result: MatchResult | None = None
    rationale: str | None = None
    created: str = ""
    updated: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def engine_role(self) -> str:
        return "painter" if self.human_role == "builder" else "builder"

    def snapshot(self) -> dict:
        """The full resource the HTTP layer returns; versioned schema."""
        pend = self.board.pending
        return {
            "v": 1,
            "id": self.id,
            "target": self.target.to_json_dict(),
            "human_role": self.human_role,
            "engine_strategy": self.engine_strategy_id,
            "state": {
                "n": self.board.n,
                "q": self.board.q,
                "edges": [[u, v, c] for (u, v, c) in self.board.edges],
            },
            "turn": self.turn,
            "pending": list(pend) if pend is not None else None,
            "budget": self.budget,
            "edges_used": self.board.edge_count,
            "result": self.result.as_dict() if self.result else None,
            "rationale": self.rationale,
            "created": self.created,
            "updated": self.updated,
        }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _finish(session: GameSession, result: MatchResult) -> None:
    session.result = result
    session.turn = "finished"


def _engine_builder_move(session: GameSession) -> None:
    """One engine Builder move: claim, draw, or infeasibility report."""
    builder = session.engine_strategy
    board = session.board
    try:
        move = builder.next_move(board)
    except IllegalMoveError as exc:
        _finish(session, Aborted(offender="builder", reason=exc.reason))
        return
    if isinstance(move, Infeasible):
        _finish(session, InfeasibleReported(reasons=move.reasons))
        return
    if isinstance(move, ClaimWin):
        if not _verify_claim(board, session.target, move):
            _finish(session, Aborted(offender="builder",
                                     reason="win claim failed verification"))
            return
        verts = tuple(move.embedding[i]
                      for i in range(session.target.vertex_count))
        _finish(session, BuilderWin(edge_count=board.edge_count,
                                    color=move.color, vertices=verts))
        return
    if board.edge_count >= session.budget:
        _finish(session, BudgetExhausted(budget=session.budget))
        return
    try:
        board.draw(move.u, move.v)
    except IllegalMoveError as exc:
        _finish(session, Aborted(offender="builder", reason=exc.reason))
        return
    session.turn = "painter"
    rationale = getattr(builder, "rationale", None)
    if callable(rationale):
        session.rationale = rationale()


def _apply_color(session: GameSession, c: int) -> None:
    """Colour the pending edge and settle the outcome of the exchange."""
    board = session.board
    u, v = board.color(c)
    emb = check_win_after_color(board, session.target, u, v, c,
                                session.config)
    if emb is not None:
        verts = tuple(emb[i] for i in range(session.target.vertex_count))
        _finish(session, BuilderWin(edge_count=board.edge_count,
                                    color=c, vertices=verts))
        return
    session.turn = "builder"
    if session.human_role == "builder" and board.edge_count >= session.budget:
        _finish(session, BudgetExhausted(budget=session.budget))


def _engine_painter_move(session: GameSession) -> None:
    painter = session.engine_strategy
    board = session.board
    u, v = board.pending
    try:
        c = painter.choose_color(board, u, v)
    except IllegalMoveError as exc:
        _finish(session, Aborted(offender="painter", reason=exc.reason))
        return
    if not isinstance(c, int) or isinstance(c, bool):
        _finish(session, Aborted(offender="painter",
                                 reason="colour must be an int, got %r" % (c,)))
        return
    try:
        _apply_color(session, c)
    except IllegalMoveError as exc:
        _finish(session, Aborted(offender="painter", reason=exc.reason))


def _advance_engine(session: GameSession) -> None:
    """Let the engine play until the human is up again (or the game ends)."""
    while session.turn == session.engine_role:
        if session.engine_role == "builder":
            _engine_builder_move(session)
        else:
            _engine_painter_move(session)


# ======================================================================
# Public operations
# ======================================================================


def create_session(target: TargetSpec, human_role: str, engine_strategy: str,
                   budget: int | None = None, seed: int = 0,
                   config: EngineConfig = EngineConfig()) -> GameSession:
    """New session; if the engine is Builder it opens immediately.

    ``budget`` defaults to the engine Builder's declared budget, or to
    ``DEFAULT_HUMAN_BUILDER_BUDGET`` when the human builds.
    """
    if human_role not in ("builder", "painter"):
        raise ValueError("human_role must be 'builder' or 'painter'")
    strategy_id = engine_strategy
    if human_role == "painter":
        strategy = ids.make_builder(strategy_id, target, seed=seed)
        if budget is None:
            budget = strategy.declared_budget
    else:
        strategy = ids.make_painter(strategy_id, target, seed=seed)
        if budget is None:
            budget = DEFAULT_HUMAN_BUILDER_BUDGET
    if budget < 1:
        raise ValueError("budget must be at least 1")
    now = _now()
    session = GameSession(
        id=uuid.uuid4().hex[:12],
        target=target,
        human_role=human_role,
        engine_strategy=strategy,
        engine_strategy_id=getattr(strategy, "ident", strategy_id),
        board=GameBoard(target.q),
        budget=budget,
        seed=seed,
        config=config,
        created=now,
        updated=now,
    )
    _advance_engine(session)
    return session


def session_step(session: GameSession, move: DrawEdge | ColorMove) -> GameSession:
    """Apply one human move; engine replies land in the same step.

    Raises ``SessionFinishedError`` on a finished session,
    ``WrongTurnError`` when the move kind does not match the turn, and
    ``IllegalMoveError`` for moves the board rejects.
    """
    if session.turn == "finished":
        raise SessionFinishedError("session %s is finished" % session.id)
    if isinstance(move, DrawEdge):
        if session.turn != "builder" or session.human_role != "builder":
            raise WrongTurnError("draw move out of turn")
        if session.board.edge_count >= session.budget:
            _finish(session, BudgetExhausted(budget=session.budget))
            session.updated = _now()
            return session
        session.board.draw(move.u, move.v)
        session.turn = "painter"
    elif isinstance(move, ColorMove):
        if session.turn != "painter" or session.human_role != "painter":
            raise WrongTurnError("colour move out of turn")
        _apply_color(session, move.c)
    else:
        raise TypeError("move must be DrawEdge or ColorMove")
    _advance_engine(session)
    session.updated = _now()
    return session


# ======================================================================
# Store
# ======================================================================


class SessionStore:
    """In-memory session registry, safe for concurrent distinct sessions.

    ``log_path`` turns on append-only JSON-lines persistence: one line per
    mutation with the full snapshot, enough to audit or replay a session.
    """

    def __init__(self, log_path: str | None = None):
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self._log_path = log_path

    def _log(self, event: str, session: GameSession) -> None:
        if self._log_path is None:
            return
        line = json.dumps({"v": 1, "event": event,
                           "session": session.snapshot()})
        with open(self._log_path, "a") as fh:
            fh.write(line + "\n")

    def create(self, *args, **kwargs) -> GameSession:
        session = create_session(*args, **kwargs)
        with self._lock:
            self._sessions[session.id] = session
        self._log("created", session)
        return session

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError("no session %r" % session_id)
        return session

    def step(self, session_id: str, move: DrawEdge | ColorMove) -> GameSession:
        """session_step under the per-session lock; busy means conflict."""
        session = self.get(session_id)
        if not session.lock.acquire(blocking=False):
            raise SessionBusyError("session %s is processing another move"
                                   % session_id)
        try:
            session_step(session, move)
        finally:
            session.lock.release()
        self._log("step", session)
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            session = self._sessions.pop(session_id, None)
        if session is None:
            raise UnknownSessionError("no session %r" % session_id)
        self._log("deleted", session)

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)
