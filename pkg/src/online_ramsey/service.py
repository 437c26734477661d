"""HTTP session API.

A thin JSON adapter over the session module: every mutation is exactly
one ``SessionStore`` call, and responses are the session snapshot the
store already produces.  No game rules live here.

Error bodies are versioned and machine readable::

    {"v": 1, "error": {"code": "wrong-turn", "reason": "..."}}

Codes: unknown-session (404); wrong-turn, illegal-move, session-finished,
conflict (409); invalid-body, infeasible-parameters (422).
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from .builders import ParameterInfeasibleError
from .engine import DrawEdge, IllegalMoveError
from .ids import UnknownStrategyError, parse_target
from .session import (
    ColorMove,
    SessionError,
    SessionStore,
    UnknownSessionError,
)

__all__ = ["create_app", "app", "bind_address"]


class CreateSessionBody(BaseModel):
    target: str
    human_role: str
    engine_strategy: str
    q: int = 2
    budget: int | None = None
    seed: int = 0


class MoveBody(BaseModel):
    draw: tuple[int, int] | None = None
    color: int | None = None


def _error(status: int, code: str, reason: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"v": 1, "error": {"code": code,
                                                   "reason": reason}})


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="online-ramsey sessions")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.exception_handler(SessionError)
    async def _session_error(_req: Request, exc: SessionError):
        status = 404 if isinstance(exc, UnknownSessionError) else 409
        return _error(status, exc.code, str(exc))

    @app.exception_handler(IllegalMoveError)
    async def _illegal_move(_req: Request, exc: IllegalMoveError):
        return _error(409, "illegal-move", exc.reason)

    @app.post("/sessions", status_code=201)
    def create_session_endpoint(body: CreateSessionBody):
        try:
            target = parse_target(body.target, q=body.q)
            session = store.create(target, body.human_role,
                                   body.engine_strategy,
                                   budget=body.budget, seed=body.seed)
        except UnknownStrategyError as exc:
            return _error(422, "invalid-body", str(exc))
        except ParameterInfeasibleError as exc:
            return _error(422, "infeasible-parameters", str(exc))
        except ValueError as exc:
            return _error(422, "invalid-body", str(exc))
        return session.snapshot()

    @app.get("/sessions/{session_id}")
    def get_session_endpoint(session_id: str):
        return store.get(session_id).snapshot()

    @app.post("/sessions/{session_id}/move")
    def move_endpoint(session_id: str, body: MoveBody):
        if (body.draw is None) == (body.color is None):
            return _error(422, "invalid-body",
                          "exactly one of 'draw' or 'color' is required")
        if body.draw is not None:
            move = DrawEdge(body.draw[0], body.draw[1])
        else:
            move = ColorMove(body.color)
        return store.step(session_id, move).snapshot()

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session_endpoint(session_id: str):
        store.delete(session_id)
        return Response(status_code=204)

    return app


def bind_address() -> tuple[str, int]:
    """Host/port for the server, overridable via environment variables."""
    host = os.environ.get("ONLINE_RAMSEY_HOST", "127.0.0.1")
    port = int(os.environ.get("ONLINE_RAMSEY_PORT", "8787"))
    return host, port


app = create_app()
