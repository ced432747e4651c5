"""Relational schema model shared by the parser, explainer, and linker.

Identifier matching is deliberately forgiving: names compare
case-insensitively and underscores are interchangeable with spaces, so the
column ``airport_code`` matches the phrase "airport code".  Canonical casing
(as declared) is preserved for display and for printed SQL.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

AFFINITIES = ("text", "integer", "real", "blob", "numeric")

NUMERIC_AFFINITIES = ("integer", "real", "numeric")


class SchemaError(ValueError):
    """A schema violated its structural rules (duplicate names, bad foreign key)."""


def normalize_name(name: str) -> str:
    """Matching key for an identifier: lowercase, underscores as spaces."""
    return " ".join(name.replace("_", " ").lower().split())


def display_name(name: str) -> str:
    """Noun-phrase form of an identifier: underscores become spaces, case kept."""
    return " ".join(name.replace("_", " ").split())


@dataclass(frozen=True)
class ColumnDef:
    name: str
    affinity: str = "text"
    is_primary_key: bool = False

    def __post_init__(self) -> None:
        if self.affinity not in AFFINITIES:
            raise SchemaError(f"unknown affinity {self.affinity!r} for column {self.name!r}")


@dataclass(frozen=True)
class ForeignKey:
    from_column: str
    to_table: str
    to_column: str


@dataclass(frozen=True)
class TableDef:
    name: str
    columns: tuple[ColumnDef, ...]
    foreign_keys: tuple[ForeignKey, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "foreign_keys", tuple(self.foreign_keys))
        seen: set[str] = set()
        for col in self.columns:
            key = normalize_name(col.name)
            if key in seen:
                raise SchemaError(f"duplicate column {col.name!r} in table {self.name!r}")
            seen.add(key)

    def column(self, name: str) -> ColumnDef | None:
        key = normalize_name(name)
        for col in self.columns:
            if normalize_name(col.name) == key:
                return col
        return None


class Schema:
    """An ordered collection of tables with lookup helpers.

    Declaration order matters: it is the tie-break order for ambiguous
    references and for linking candidates.
    """

    def __init__(self, tables: Iterable[TableDef]):
        self.tables: tuple[TableDef, ...] = tuple(tables)
        self._by_key: dict[str, TableDef] = {}
        for table in self.tables:
            key = normalize_name(table.name)
            if key in self._by_key:
                raise SchemaError(f"duplicate table {table.name!r}")
            self._by_key[key] = table
        for table in self.tables:
            for fk in table.foreign_keys:
                if table.column(fk.from_column) is None:
                    raise SchemaError(
                        f"foreign key on unknown column {table.name}.{fk.from_column}"
                    )
                target = self.table(fk.to_table)
                if target is None or target.column(fk.to_column) is None:
                    raise SchemaError(
                        f"foreign key target {fk.to_table}.{fk.to_column} does not exist"
                    )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Schema) and self.tables == other.tables

    def __repr__(self) -> str:
        return f"Schema({[t.name for t in self.tables]})"

    def table(self, name: str) -> TableDef | None:
        return self._by_key.get(normalize_name(name))

    def column(self, table_name: str, column_name: str) -> ColumnDef | None:
        table = self.table(table_name)
        return table.column(column_name) if table is not None else None

    def resolve_column(
        self, name: str, scope: Sequence[str] | None = None
    ) -> tuple[TableDef, ColumnDef] | None:
        """Find ``name`` in the first scope table that declares it.

        ``scope`` is a list of table names in FROM order; ``None`` means all
        tables in declaration order.
        """
        if scope is None:
            candidates: list[TableDef] = list(self.tables)
        else:
            candidates = [t for n in scope if (t := self.table(n)) is not None]
        for table in candidates:
            col = table.column(name)
            if col is not None:
                return table, col
        return None

    def to_summary(self) -> dict:
        """JSON-friendly shape used in HTTP payloads."""
        return {
            "tables": [
                {
                    "name": t.name,
                    "columns": [
                        {"name": c.name, "affinity": c.affinity, "primary_key": c.is_primary_key}
                        for c in t.columns
                    ],
                    "foreign_keys": [
                        {"column": fk.from_column, "references": [fk.to_table, fk.to_column]}
                        for fk in t.foreign_keys
                    ],
                }
                for t in self.tables
            ]
        }


def schema_from_summary(data: dict) -> Schema:
    """Inverse of :meth:`Schema.to_summary`."""
    tables = []
    for t in data.get("tables", []):
        columns = tuple(
            ColumnDef(c["name"], c.get("affinity", "text"), bool(c.get("primary_key")))
            for c in t.get("columns", [])
        )
        fks = tuple(
            ForeignKey(fk["column"], fk["references"][0], fk["references"][1])
            for fk in t.get("foreign_keys", [])
        )
        tables.append(TableDef(t["name"], columns, fks))
    return Schema(tables)
