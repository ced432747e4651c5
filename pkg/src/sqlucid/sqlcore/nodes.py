"""Immutable syntax tree for the supported SQL subset.

A query is a :class:`QueryAst`: a flat, ordered list of single-SELECT
``SubqueryUnit`` values plus the links between consecutive units.  A link is
either a set operator (the two units form a UNION/INTERSECT/EXCEPT chain) or
``None`` (the earlier unit is a lifted nested subquery that a later unit
refers to through :class:`SubqueryRef`).  Lifted units always precede the
units that reference them, and the top-level chain occupies the trailing
positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union


class InvalidAstError(ValueError):
    """A hand-built tree violated a structural rule of the dialect."""


class ClauseKind(str, Enum):
    FROM = "from"
    JOIN = "join"
    WHERE = "where"
    GROUP_BY = "group_by"
    HAVING = "having"
    ORDER_LIMIT = "order_limit"
    SELECT = "select"
    SET_OP = "set_op"


class SetOperator(str, Enum):
    UNION = "union"
    UNION_ALL = "union_all"
    INTERSECT = "intersect"
    EXCEPT = "except"


class AggFn(str, Enum):
    MIN = "min"
    MAX = "max"
    COUNT = "count"
    SUM = "sum"
    AVG = "avg"


COMPARE_OPS = ("=", "!=", "<", "<=", ">", ">=")

COMPLEMENT_OP = {"=": "!=", "!=": "=", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}


@dataclass(frozen=True)
class ColumnRef:
    """A column reference; ``table`` is None until resolved against a schema."""

    column: str
    table: str | None = None


@dataclass(frozen=True)
class Star:
    """The ``*`` projection or ``COUNT(*)`` argument."""


@dataclass(frozen=True)
class Aggregate:
    fn: AggFn
    arg: ColumnRef | Star
    distinct: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.arg, Star) and self.fn is not AggFn.COUNT:
            raise InvalidAstError(f"{self.fn.value.upper()}(*) is not supported")
        if isinstance(self.arg, Star) and self.distinct:
            raise InvalidAstError("COUNT(DISTINCT *) is not supported")


@dataclass(frozen=True)
class Literal:
    value: str | int | float


@dataclass(frozen=True)
class SubqueryRef:
    """Reference to an earlier unit in the same :class:`QueryAst`."""

    unit_index: int


@dataclass(frozen=True)
class Comparison:
    op: str
    lhs: ColumnRef | Aggregate
    rhs: Literal | ColumnRef | SubqueryRef

    def __post_init__(self) -> None:
        if self.op not in COMPARE_OPS:
            raise InvalidAstError(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True)
class Between:
    lhs: ColumnRef | Aggregate
    low: Literal
    high: Literal


@dataclass(frozen=True)
class Like:
    lhs: ColumnRef
    pattern: Literal


@dataclass(frozen=True)
class InSubquery:
    lhs: ColumnRef
    subquery: SubqueryRef


@dataclass(frozen=True)
class Not:
    operand: "Predicate"


@dataclass(frozen=True)
class BoolOp:
    """Flattened n-ary AND/OR; same-operator children are merged on build."""

    op: str  # "and" | "or"
    operands: tuple["Predicate", ...]

    def __post_init__(self) -> None:
        if self.op not in ("and", "or"):
            raise InvalidAstError(f"unknown boolean operator {self.op!r}")
        flat: list[Predicate] = []
        for operand in self.operands:
            if isinstance(operand, BoolOp) and operand.op == self.op:
                flat.extend(operand.operands)
            else:
                flat.append(operand)
        if len(flat) < 2:
            raise InvalidAstError("boolean operator needs at least two operands")
        object.__setattr__(self, "operands", tuple(flat))


Predicate = Union[Comparison, Between, Like, InSubquery, Not, BoolOp]

PREDICATE_TYPES = (Comparison, Between, Like, InSubquery, Not, BoolOp)


@dataclass(frozen=True)
class JoinCondition:
    """One equi-join condition; ``left`` belongs to the earlier FROM table."""

    left: ColumnRef
    right: ColumnRef


@dataclass(frozen=True)
class FromClause:
    tables: tuple[str, ...]
    joins: tuple[JoinCondition, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tables", tuple(self.tables))
        object.__setattr__(self, "joins", tuple(self.joins))


@dataclass(frozen=True)
class Projection:
    expr: ColumnRef | Aggregate | Star
    alias: str | None = None


@dataclass(frozen=True)
class SelectClause:
    projections: tuple[Projection, ...]
    distinct: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "projections", tuple(self.projections))
        if not self.projections:
            raise InvalidAstError("SELECT needs at least one projection")


@dataclass(frozen=True)
class OrderItem:
    expr: ColumnRef | Aggregate
    descending: bool = False


@dataclass(frozen=True)
class SubqueryUnit:
    """One single-SELECT query: the only shape a unit can take."""

    select: SelectClause
    from_: FromClause
    where: Predicate | None = None
    group_by: tuple[ColumnRef, ...] = ()
    having: Predicate | None = None
    order_by: tuple[OrderItem, ...] = ()
    limit: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "group_by", tuple(self.group_by))
        object.__setattr__(self, "order_by", tuple(self.order_by))
        if self.limit is not None and self.limit < 0:
            raise InvalidAstError("LIMIT must be non-negative")


@dataclass(frozen=True)
class QueryAst:
    units: tuple[SubqueryUnit, ...]
    set_ops: tuple[SetOperator | None, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "units", tuple(self.units))
        object.__setattr__(self, "set_ops", tuple(self.set_ops))
        if not self.units:
            raise InvalidAstError("a query needs at least one unit")
        if len(self.set_ops) != len(self.units) - 1:
            raise InvalidAstError(
                f"{len(self.units)} units need {len(self.units) - 1} links, "
                f"got {len(self.set_ops)}"
            )


@dataclass(frozen=True)
class ClauseRef:
    """Address of one clause inside a :class:`QueryAst`."""

    unit_index: int
    kind: ClauseKind
