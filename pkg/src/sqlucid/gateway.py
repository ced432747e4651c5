"""Read-only SQLite access: open, introspect, execute with limits, browse.

Database files are opened with ``mode=ro`` and ``PRAGMA query_only``, so the
engine can never modify user data.  Every execution goes through a row cap
and a wall-clock timeout enforced via a progress handler.
"""
from __future__ import annotations

import re
import sqlite3
import threading
import time
import urllib.parse
from dataclasses import dataclass
from pathlib import Path

from .schema import ColumnDef, ForeignKey, Schema, TableDef
from .sqlcore import ParseError, parse_sql


class OpenError(RuntimeError):
    """The database file is missing or not a usable SQLite database."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"cannot open {path}: {reason}")
        self.path = path
        self.reason = reason


class NonSelectRejected(RuntimeError):
    """The statement is not a SELECT in the supported dialect."""

    def __init__(self, sql: str, reason: str):
        super().__init__(f"only SELECT statements in the supported dialect run here: {reason}")
        self.sql = sql
        self.reason = reason


class QueryTimeout(RuntimeError):
    def __init__(self, sql: str, timeout_ms: int):
        super().__init__(f"query exceeded {timeout_ms} ms")
        self.sql = sql
        self.timeout_ms = timeout_ms


class UnknownTable(LookupError):
    def __init__(self, name: str):
        super().__init__(f"no such table: {name}")
        self.name = name


class UnknownColumn(LookupError):
    def __init__(self, table: str, name: str):
        super().__init__(f"no such column in {table}: {name}")
        self.table = table
        self.name = name


@dataclass(frozen=True)
class ExecLimits:
    row_cap: int = 1000
    timeout_ms: int = 5000


@dataclass(frozen=True)
class ResultColumn:
    name: str
    affinity: str


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[ResultColumn, ...]
    rows: tuple[tuple, ...]
    truncated: bool
    row_cap: int
    elapsed_ms: float

    def to_json(self) -> dict:
        return {
            "columns": [{"name": c.name, "affinity": c.affinity} for c in self.columns],
            "rows": [list(row) for row in self.rows],
            "truncated": self.truncated,
            "row_cap": self.row_cap,
            "elapsed_ms": self.elapsed_ms,
        }


class DatabaseHandle:
    """One read-only connection, serialized by a lock so it can be shared."""

    def __init__(self, path: Path, conn: sqlite3.Connection):
        self.path = path
        self.conn = conn
        self.lock = threading.Lock()

    def close(self) -> None:
        self.conn.close()


def open_database(path: str | Path) -> DatabaseHandle:
    resolved = Path(path).expanduser()
    if not resolved.is_file():
        raise OpenError(str(path), "file does not exist")
    uri = "file:" + urllib.parse.quote(str(resolved.resolve()), safe="/") + "?mode=ro"
    try:
        conn = sqlite3.connect(uri, uri=True, check_same_thread=False)
        conn.execute("PRAGMA query_only = ON")
        conn.execute("SELECT name FROM sqlite_master LIMIT 1").fetchall()
    except sqlite3.Error as err:
        raise OpenError(str(path), str(err)) from err
    return DatabaseHandle(resolved, conn)


_AFFINITY_RULES = (
    ("INT", "integer"),
    ("CHAR", "text"),
    ("CLOB", "text"),
    ("TEXT", "text"),
    ("BLOB", "blob"),
    ("REAL", "real"),
    ("FLOA", "real"),
    ("DOUB", "real"),
)


def _affinity_of(declared_type: str | None) -> str:
    """SQLite's declared-type-to-affinity rules."""
    if not declared_type:
        return "blob"
    upper = declared_type.upper()
    for fragment, affinity in _AFFINITY_RULES:
        if fragment in upper:
            return affinity
    return "numeric"


def introspect(handle: DatabaseHandle) -> Schema:
    """Build a :class:`Schema` from the catalog, in declaration order."""
    with handle.lock:
        names = [
            row[0]
            for row in handle.conn.execute(
                "SELECT name FROM sqlite_master WHERE type = 'table'"
                " AND name NOT LIKE 'sqlite_%' ORDER BY rowid"
            )
        ]
        tables = []
        for name in names:
            columns = tuple(
                ColumnDef(row[1], _affinity_of(row[2]), is_primary_key=bool(row[5]))
                for row in handle.conn.execute(f'PRAGMA table_info("{name}")')
            )
            # foreign_key_list numbers constraints in reverse declaration
            # order; sort ids descending to recover declaration order.
            fk_rows = sorted(
                handle.conn.execute(f'PRAGMA foreign_key_list("{name}")'),
                key=lambda row: -row[0],
            )
            fks = []
            for row in fk_rows:
                target_table, from_col, to_col = row[2], row[3], row[4]
                if to_col is None:  # implicit reference to the target's primary key
                    pk = [
                        r[1]
                        for r in handle.conn.execute(f'PRAGMA table_info("{target_table}")')
                        if r[5]
                    ]
                    to_col = pk[0] if pk else from_col
                fks.append(ForeignKey(from_col, target_table, to_col))
            tables.append(TableDef(name, columns, tuple(fks)))
    return Schema(tables)


def _value_affinity(value) -> str | None:
    if isinstance(value, bool) or isinstance(value, int):
        return "integer"
    if isinstance(value, float):
        return "real"
    if isinstance(value, str):
        return "text"
    if isinstance(value, (bytes, memoryview)):
        return "blob"
    return None


def _result_columns(description, rows) -> tuple[ResultColumn, ...]:
    columns = []
    for index, desc in enumerate(description):
        affinity = None
        for row in rows:
            affinity = _value_affinity(row[index])
            if affinity is not None:
                break
        columns.append(ResultColumn(desc[0], affinity or "numeric"))
    return tuple(columns)


def _run(handle: DatabaseHandle, sql: str, limits: ExecLimits) -> ResultTable:
    deadline = time.perf_counter() + limits.timeout_ms / 1000.0

    def tick():
        return 1 if time.perf_counter() > deadline else 0

    start = time.perf_counter()
    with handle.lock:
        handle.conn.set_progress_handler(tick, 1000)
        try:
            cursor = handle.conn.execute(sql)
            rows = cursor.fetchmany(limits.row_cap) if limits.row_cap > 0 else []
            truncated = cursor.fetchone() is not None
            description = cursor.description
        except sqlite3.OperationalError as err:
            if "interrupt" in str(err).lower():
                raise QueryTimeout(sql, limits.timeout_ms) from err
            raise
        finally:
            handle.conn.set_progress_handler(None, 0)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return ResultTable(
        columns=_result_columns(description, rows),
        rows=tuple(tuple(row) for row in rows),
        truncated=truncated,
        row_cap=limits.row_cap,
        elapsed_ms=elapsed_ms,
    )


def execute_readonly(handle: DatabaseHandle, sql: str, limits: ExecLimits | None = None) -> ResultTable:
    """Run one dialect SELECT; anything else is rejected before execution."""
    try:
        parse_sql(sql)
    except ParseError as err:
        raise NonSelectRejected(sql, str(err)) from err
    return _run(handle, sql, limits or ExecLimits())


_LIKE_SPECIALS = re.compile(r"([\\%_])")


def browse(
    handle: DatabaseHandle,
    table: str,
    page: int = 1,
    page_size: int = 50,
    filter_column: str | None = None,
    filter_text: str | None = None,
) -> ResultTable:
    """Page through a table, optionally with a case-insensitive substring filter."""
    schema = introspect(handle)
    table_def = schema.table(table)
    if table_def is None:
        raise UnknownTable(table)
    page = max(1, page)
    page_size = max(1, page_size)

    where = ""
    params: list = []
    if filter_column is not None and filter_text is not None:
        column = table_def.column(filter_column)
        if column is None:
            raise UnknownColumn(table_def.name, filter_column)
        pattern = "%" + _LIKE_SPECIALS.sub(r"\\\1", filter_text) + "%"
        where = f' WHERE CAST("{column.name}" AS TEXT) LIKE ? ESCAPE \'\\\''
        params.append(pattern)

    base = f'SELECT * FROM "{table_def.name}"{where}'
    offset = (page - 1) * page_size

    # rowid ordering keeps pages stable; WITHOUT ROWID tables fall back to
    # storage order, which is equally deterministic for a read-only file.
    ordered_sql = f"{base} ORDER BY rowid LIMIT {page_size + 1} OFFSET {offset}"
    fallback_sql = f"{base} LIMIT {page_size + 1} OFFSET {offset}"
    start = time.perf_counter()
    with handle.lock:
        try:
            cursor = handle.conn.execute(ordered_sql, params)
        except sqlite3.OperationalError:
            cursor = handle.conn.execute(fallback_sql, params)
        rows = cursor.fetchall()
        description = cursor.description
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    truncated = len(rows) > page_size
    rows = rows[:page_size]
    return ResultTable(
        columns=_result_columns(description, rows),
        rows=tuple(tuple(row) for row in rows),
        truncated=truncated,
        row_cap=page_size,
        elapsed_ms=elapsed_ms,
    )
