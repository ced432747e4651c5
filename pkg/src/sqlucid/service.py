"""HTTP session service: ask a question, inspect and edit the explanation.

One session binds a user to a database.  Asking a question produces the
generated SQL and its step plan; further calls fetch per-step intermediate
results, resolve hover targets, apply step edits, and walk the edit history.
All state lives in memory; the databases themselves are only ever read.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field as dataclass_field
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__
from .config import AppConfig, exec_limits, make_clause_backend, make_provider
from .explain import explain, explanation_digest, plan_to_json
from .gateway import (
    DatabaseHandle,
    NonSelectRejected,
    OpenError,
    QueryTimeout,
    UnknownColumn,
    UnknownTable,
    browse,
    execute_readonly,
    introspect,
    open_database,
)
from .linking import build_links, resolve_hover
from .nlq import NlqError, generate_sql
from .refine import (
    BackendRefusal,
    ConflictError,
    EditOp,
    History,
    NothingToRedo,
    NothingToUndo,
    Snapshot,
    UnparsableStep,
    apply_edits,
)
from .schema import Schema
from .sqlcore import print_sql
from .stepwise import StepExecutionError, StepLookupError, prefix_query


class NoQuestionYet(RuntimeError):
    def __init__(self, session_id: str):
        super().__init__(f"session {session_id} has no question yet; POST .../ask first")


class UnknownSession(KeyError):
    def __init__(self, session_id: str):
        super().__init__(session_id)
        self.session_id = session_id

    def __str__(self) -> str:
        return f"unknown session {self.session_id!r}"


class UnknownDatabase(KeyError):
    def __init__(self, database_id: str):
        super().__init__(database_id)
        self.database_id = database_id

    def __str__(self) -> str:
        return f"unknown database {self.database_id!r}"


_STATUS_BY_ERROR: tuple[tuple[tuple, int], ...] = (
    ((UnknownSession, UnknownDatabase, UnknownTable, UnknownColumn, StepLookupError), 404),
    ((ConflictError, NothingToUndo, NothingToRedo, NoQuestionYet), 409),
    ((UnparsableStep, BackendRefusal, NlqError, ValueError), 422),
    ((NonSelectRejected, StepExecutionError), 400),
    ((QueryTimeout,), 504),
    ((OpenError,), 500),
)


def _as_http_error(err: Exception) -> HTTPException:
    for types, status in _STATUS_BY_ERROR:
        if isinstance(err, types):
            return HTTPException(
                status_code=status,
                detail={"type": type(err).__name__, "message": str(err)},
            )
    raise err


@dataclass
class Session:
    session_id: str
    database_id: str
    handle: DatabaseHandle
    schema: Schema
    question: str | None = None
    history: History | None = None
    lock: threading.Lock = dataclass_field(default_factory=threading.Lock)

    def require_history(self) -> History:
        if self.history is None:
            raise NoQuestionYet(self.session_id)
        return self.history

    def state(self) -> dict:
        snapshot = self.require_history().current
        return {
            "session_id": self.session_id,
            "database_id": self.database_id,
            "question": self.question,
            "sql": print_sql(snapshot.ast),
            "plan": plan_to_json(snapshot.plan),
            "digest": explanation_digest(snapshot.plan),
            "can_undo": self.history.can_undo,
            "can_redo": self.history.can_redo,
        }


class SessionManager:
    """Owns database handles and the in-memory session table."""

    def __init__(self, config: AppConfig):
        self.config = config
        self.provider = make_provider(config)
        self.backend = make_clause_backend(config)
        self.limits = exec_limits(config)
        self._handles: dict[str, tuple[DatabaseHandle, Schema]] = {}
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def database_ids(self) -> list[str]:
        return list(self.config.databases)

    def open(self, database_id: str) -> tuple[DatabaseHandle, Schema]:
        path = self.config.databases.get(database_id)
        if path is None:
            raise UnknownDatabase(database_id)
        with self._lock:
            cached = self._handles.get(database_id)
            if cached is None:
                handle = open_database(path)
                cached = (handle, introspect(handle))
                self._handles[database_id] = cached
            return cached

    def create_session(self, database_id: str) -> Session:
        handle, schema = self.open(database_id)
        session = Session(
            session_id=uuid.uuid4().hex,
            database_id=database_id,
            handle=handle,
            schema=schema,
        )
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        return session

    def drop(self, session_id: str) -> None:
        with self._lock:
            if self._sessions.pop(session_id, None) is None:
                raise UnknownSession(session_id)

    def close_all(self) -> None:
        with self._lock:
            self._sessions.clear()
            for handle, _ in self._handles.values():
                handle.conn.close()
            self._handles.clear()


class CreateSessionBody(BaseModel):
    database_id: str


class AskBody(BaseModel):
    question: str


class EditBody(BaseModel):
    kind: str
    unit_index: int
    step_index: int
    new_text: str | None = None


class EditsBody(BaseModel):
    edits: list[EditBody]


def _parse_step_param(step: str) -> tuple[int, int]:
    unit_text, _, step_text = step.partition(":")
    if not (unit_text.isdigit() and step_text.isdigit()):
        raise ValueError(f"step must look like '0:2', got {step!r}")
    return int(unit_text), int(step_text)


def _parse_filter_param(filter_text: str) -> tuple[str, str]:
    column, separator, needle = filter_text.partition(":")
    if not separator or not column:
        raise ValueError(f"filter must look like 'column:text', got {filter_text!r}")
    return column, needle


def create_app(config: AppConfig | None = None) -> FastAPI:
    """Build the service; all routes close over one :class:`SessionManager`."""
    manager = SessionManager(config or AppConfig())

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        manager.close_all()

    app = FastAPI(title="sqlucid", version=__version__, lifespan=lifespan)
    app.state.manager = manager

    def guarded(operation):
        try:
            return operation()
        except HTTPException:
            raise
        except Exception as err:  # noqa: BLE001 - domain errors become HTTP codes
            raise _as_http_error(err) from err

    @app.get("/databases")
    def list_databases():
        def run():
            entries = []
            for database_id in manager.database_ids():
                _, schema = manager.open(database_id)
                entries.append(
                    {
                        "id": database_id,
                        "tables": [table.name for table in schema.tables],
                    }
                )
            return {"databases": entries}

        return guarded(run)

    @app.get("/databases/{database_id}/schema")
    def get_schema(database_id: str):
        def run():
            _, schema = manager.open(database_id)
            return {"id": database_id, "schema": schema.to_summary()}

        return guarded(run)

    @app.get("/databases/{database_id}/tables/{table}")
    def browse_table(
        database_id: str,
        table: str,
        page: int = 1,
        page_size: int = 50,
        filter: str | None = None,
    ):
        def run():
            handle, _ = manager.open(database_id)
            filter_column = filter_text = None
            if filter is not None:
                filter_column, filter_text = _parse_filter_param(filter)
            result = browse(
                handle,
                table,
                page=page,
                page_size=page_size,
                filter_column=filter_column,
                filter_text=filter_text,
            )
            return {
                "table": table,
                "page": max(1, page),
                "page_size": max(1, page_size),
                "result": result.to_json(),
            }

        return guarded(run)

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        def run():
            session = manager.create_session(body.database_id)
            return {"session_id": session.session_id, "database_id": session.database_id}

        return guarded(run)

    @app.delete("/sessions/{session_id}", status_code=204)
    def close_session(session_id: str):
        def run():
            manager.drop(session_id)

        guarded(run)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        def run():
            session = manager.get(session_id)
            with session.lock:
                return session.state()

        return guarded(run)

    @app.post("/sessions/{session_id}/ask")
    def ask(session_id: str, body: AskBody):
        def run():
            session = manager.get(session_id)
            with session.lock:
                ast, _ = generate_sql(
                    manager.provider, body.question, session.database_id, session.schema
                )
                plan = explain(ast, session.schema)
                session.question = body.question
                session.history = History(Snapshot(ast, plan))
                return session.state()

        return guarded(run)

    @app.get("/sessions/{session_id}/sql")
    def current_sql(session_id: str):
        def run():
            session = manager.get(session_id)
            with session.lock:
                snapshot = session.require_history().current
                return {"question": session.question, "sql": print_sql(snapshot.ast)}

        return guarded(run)

    @app.get("/sessions/{session_id}/steps/{unit_index}/{step_index}/result")
    def step_result(session_id: str, unit_index: int, step_index: int):
        def run():
            session = manager.get(session_id)
            with session.lock:
                snapshot = session.require_history().current
                prefix = prefix_query(snapshot.plan, unit_index, step_index)
                result = execute_readonly(session.handle, prefix.sql, manager.limits)
                return {
                    "temp_sql": prefix.sql,
                    "synthesized_select": prefix.synthesized_select,
                    "result": result.to_json(),
                }

        return guarded(run)

    @app.get("/sessions/{session_id}/hover")
    def hover(session_id: str, step: str, offset: int):
        def run():
            session = manager.get(session_id)
            with session.lock:
                snapshot = session.require_history().current
                unit_index, step_index = _parse_step_param(step)
                links = build_links(snapshot.plan, session.schema)
                target = resolve_hover(links, unit_index, step_index, offset)
                return {"target": None if target is None else target.to_json()}

        return guarded(run)

    @app.post("/sessions/{session_id}/edits")
    def edit_steps(session_id: str, body: EditsBody):
        def run():
            session = manager.get(session_id)
            with session.lock:
                history = session.require_history()
                snapshot = history.current
                edits = tuple(
                    EditOp(e.kind, e.unit_index, e.step_index, e.new_text)
                    for e in body.edits
                )
                new_ast, new_plan = apply_edits(
                    snapshot.plan, edits, session.schema, backend=manager.backend
                )
                history.push(Snapshot(new_ast, new_plan))
                return session.state()

        return guarded(run)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        def run():
            session = manager.get(session_id)
            with session.lock:
                session.require_history().undo()
                return session.state()

        return guarded(run)

    @app.post("/sessions/{session_id}/redo")
    def redo(session_id: str):
        def run():
            session = manager.get(session_id)
            with session.lock:
                session.require_history().redo()
                return session.state()

        return guarded(run)

    return app
