"""HTTP session API with file-backed, replayable session persistence.

Each session is an append-only JSON-lines log: one created-event line, then
one line per acknowledged response. Nothing else is persisted — selection is
deterministic given (graph, seed, response history), so replaying the log
through the engine reconstructs the exact state, and the pending material is
re-derived on demand after a restart.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .corpus import Corpus, Media
from .pograph import PoGraph
from .selector import (
    DEFAULT_M,
    Mode,
    NoEligibleMaterial,
    SelectorConfig,
    SelectorError,
    next_material,
)
from .student import StudentState, init_state, record_response


class StoreError(RuntimeError):
    """Raised when a session log cannot be replayed against the loaded graph."""


@dataclass
class Session:
    session_id: str
    config: SelectorConfig
    state: StudentState
    pending: str | None = None
    pending_heuristic: str | None = None
    created_at: float = 0.0
    updated_at: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionManager:
    """Owns all sessions; one lock per session serializes its operations."""

    def __init__(self, graph: PoGraph, corpus: Corpus, store_dir: str | Path):
        self.graph = graph
        self.corpus = corpus
        self.store_dir = Path(store_dir)
        self.store_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()

    def _log_path(self, session_id: str) -> Path:
        return self.store_dir / f"{session_id}.jsonl"

    def _append(self, session_id: str, record: dict) -> None:
        with open(self._log_path(session_id), "a", encoding="utf-8") as handle:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    def create(self, mode: Mode, m: int, seed: int | None) -> Session:
        if seed is None:
            seed = int.from_bytes(os.urandom(4), "big")
        config = SelectorConfig(mode=mode, m=m, seed=seed)
        session = Session(
            session_id=uuid.uuid4().hex,
            config=config,
            state=init_state(self.graph, seed),
            created_at=time.time(),
            updated_at=time.time(),
        )
        self._append(
            session.session_id,
            {
                "type": "created",
                "session_id": session.session_id,
                "mode": mode.value,
                "m": m,
                "seed": seed,
                "at": session.created_at,
            },
        )
        with self._registry_lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            if session_id in self._sessions:
                return self._sessions[session_id]
        session = self._load(session_id)
        with self._registry_lock:
            return self._sessions.setdefault(session_id, session)

    def _load(self, session_id: str) -> Session:
        path = self._log_path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        lines = [
            json.loads(line)
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        if not lines or lines[0].get("type") != "created":
            raise StoreError(f"session log {path} lacks a created event")
        head = lines[0]
        config = SelectorConfig(mode=Mode(head["mode"]), m=head["m"], seed=head["seed"])
        state = init_state(self.graph, config.seed)
        for record in lines[1:]:
            if record.get("type") != "response":
                raise StoreError(f"unexpected record type {record.get('type')!r}")
            selection = next_material(state, self.graph, config)
            if selection.material_id != record["material_id"]:
                raise StoreError(
                    f"replay diverged: log says {record['material_id']!r}, "
                    f"engine selected {selection.material_id!r}"
                )
            record_response(state, self.graph, record["material_id"], record["understood"])
        return Session(
            session_id=session_id,
            config=config,
            state=state,
            created_at=head["at"],
            updated_at=lines[-1].get("at", head["at"]),
        )

    def next_payload(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            if session.pending is None:
                try:
                    selection = next_material(session.state, self.graph, session.config)
                except NoEligibleMaterial:
                    return {
                        "complete": True,
                        "summary": {
                            "counts": session.state.status_counts(),
                            "n_presented": session.state.n_presented,
                        },
                    }
                session.pending = selection.material_id
                session.pending_heuristic = selection.heuristic_used.value
            mat = self.corpus[session.pending]
            payload = {
                "material_id": mat.id,
                "title": mat.title,
                "content": mat.content,
                "media": mat.media.value,
                "heuristic": session.pending_heuristic,
            }
            if mat.speaking_rate is not None:
                payload["speaking_rate"] = mat.speaking_rate
            if mat.media is Media.VIDEO:
                payload["subtitles"] = mat.has_subtitles
            return payload

    def respond(self, session_id: str, material_id: str, understood: bool) -> dict:
        session = self.get(session_id)
        with session.lock:
            if session.pending is None:
                raise HTTPException(
                    status_code=400, detail="no pending material; call next first"
                )
            if material_id != session.pending:
                raise HTTPException(
                    status_code=409,
                    detail=f"response for {material_id!r} but pending is {session.pending!r}",
                )
            now = time.time()
            self._append(
                session_id,
                {
                    "type": "response",
                    "material_id": material_id,
                    "understood": understood,
                    "at": now,
                },
            )
            record_response(session.state, self.graph, material_id, understood)
            session.pending = None
            session.pending_heuristic = None
            session.updated_at = now
            return {
                "counts": session.state.status_counts(),
                "n_presented": session.state.n_presented,
            }

    def state_payload(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            return {
                "session_id": session.session_id,
                "mode": session.config.mode.value,
                "m": session.config.m,
                "seed": session.config.seed,
                "pending": session.pending,
                "counts": session.state.status_counts(),
                "contradictions": len(session.state.contradictions),
                "snapshot": session.state.snapshot(),
            }


class CreateSessionBody(BaseModel):
    mode: str
    m: int | None = None
    seed: int | None = None


class ResponseBody(BaseModel):
    material_id: str
    understood: bool


def create_app(
    graph: PoGraph,
    corpus: Corpus,
    store_dir: str | Path,
    default_m: int = DEFAULT_M,
) -> FastAPI:
    """Application factory; graph and corpus are shared read-only."""
    manager = SessionManager(graph, corpus, store_dir)
    app = FastAPI(title="learnext session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.manager = manager

    def get_session_or_404(session_id: str) -> None:
        try:
            manager.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        try:
            mode = Mode(body.mode)
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail=f"mode must be one of {[m.value for m in Mode]}, got {body.mode!r}",
            )
        m = body.m if body.m is not None else default_m
        try:
            session = manager.create(mode, m, body.seed)
        except SelectorError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"session_id": session.session_id, "mode": mode.value, "m": m,
                "seed": session.config.seed}

    @app.get("/sessions/{session_id}/next")
    def get_next(session_id: str):
        get_session_or_404(session_id)
        return manager.next_payload(session_id)

    @app.post("/sessions/{session_id}/response")
    def post_response(session_id: str, body: ResponseBody):
        get_session_or_404(session_id)
        return manager.respond(session_id, body.material_id, body.understood)

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        get_session_or_404(session_id)
        return manager.state_payload(session_id)

    @app.get("/graph/stats")
    def graph_stats():
        stats = graph.stats()
        return {
            "alpha": stats["alpha"],
            "nodes": stats["nodes"],
            "edges": stats["edges"],
            "classes": stats["classes"],
        }

    return app
