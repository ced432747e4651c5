"""Name resolution, structural validation, and clause decomposition."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .nodes import (
    Aggregate,
    Between,
    BoolOp,
    ClauseKind,
    ClauseRef,
    ColumnRef,
    Comparison,
    FromClause,
    InSubquery,
    JoinCondition,
    Like,
    Not,
    OrderItem,
    Predicate,
    Projection,
    QueryAst,
    SelectClause,
    Star,
    SubqueryRef,
    SubqueryUnit,
)
from ..schema import Schema, normalize_name


@dataclass(frozen=True)
class Diagnostic:
    """One problem found while resolving or validating a query."""

    code: str  # "resolve" | "invariant"
    message: str
    unit_index: int | None = None
    clause: ClauseKind | None = None
    name: str | None = None


# --- clause inventory ----------------------------------------------------


def clause_kinds(unit: SubqueryUnit) -> list[ClauseKind]:
    """The clauses a unit contributes, in explanation order."""
    kinds = [ClauseKind.JOIN if len(unit.from_.tables) >= 2 else ClauseKind.FROM]
    if unit.where is not None:
        kinds.append(ClauseKind.WHERE)
    if unit.group_by:
        kinds.append(ClauseKind.GROUP_BY)
    if unit.having is not None:
        kinds.append(ClauseKind.HAVING)
    if unit.order_by or unit.limit is not None:
        kinds.append(ClauseKind.ORDER_LIMIT)
    kinds.append(ClauseKind.SELECT)
    return kinds


def decompose(ast: QueryAst) -> list[tuple[int, list[ClauseRef]]]:
    """Break a query into per-unit ordered clause references."""
    return [
        (idx, [ClauseRef(idx, kind) for kind in clause_kinds(unit)])
        for idx, unit in enumerate(ast.units)
    ]


# --- structural helpers ---------------------------------------------------


def iter_atoms(pred: Predicate) -> Iterator[Comparison | Between | Like | InSubquery]:
    if isinstance(pred, (Comparison, Between, Like, InSubquery)):
        yield pred
    elif isinstance(pred, Not):
        yield from iter_atoms(pred.operand)
    elif isinstance(pred, BoolOp):
        for operand in pred.operands:
            yield from iter_atoms(operand)
    else:
        raise TypeError(f"unknown predicate {pred!r}")


def subquery_refs(pred: Predicate) -> list[SubqueryRef]:
    refs = []
    for atom in iter_atoms(pred):
        if isinstance(atom, InSubquery):
            refs.append(atom.subquery)
        elif isinstance(atom, Comparison) and isinstance(atom.rhs, SubqueryRef):
            refs.append(atom.rhs)
    return refs


def unit_subquery_refs(unit: SubqueryUnit) -> list[SubqueryRef]:
    refs = []
    if unit.where is not None:
        refs.extend(subquery_refs(unit.where))
    if unit.having is not None:
        refs.extend(subquery_refs(unit.having))
    return refs


def referenced_units(ast: QueryAst) -> set[int]:
    return {ref.unit_index for unit in ast.units for ref in unit_subquery_refs(unit)}


def main_unit_indices(ast: QueryAst) -> list[int]:
    """Units that form the top-level chain (everything nothing refers to)."""
    referenced = referenced_units(ast)
    return [idx for idx in range(len(ast.units)) if idx not in referenced]


# --- resolution ------------------------------------------------------------


def resolve(ast: QueryAst, schema: Schema) -> tuple[QueryAst, list[Diagnostic]]:
    """Canonicalize every table and column name against ``schema``.

    Returns the rewritten tree and the list of names that could not be
    resolved; unresolved references are left as written.
    """
    diagnostics: list[Diagnostic] = []
    units = tuple(
        _resolve_unit(unit, idx, schema, diagnostics) for idx, unit in enumerate(ast.units)
    )
    return QueryAst(units, ast.set_ops), diagnostics


def _resolve_unit(
    unit: SubqueryUnit, unit_index: int, schema: Schema, diagnostics: list[Diagnostic]
) -> SubqueryUnit:
    tables: list[str] = []
    for name in unit.from_.tables:
        table = schema.table(name)
        if table is None:
            diagnostics.append(
                Diagnostic(
                    "resolve",
                    f"unknown table {name!r}",
                    unit_index=unit_index,
                    clause=ClauseKind.FROM,
                    name=name,
                )
            )
            tables.append(name)
        else:
            tables.append(table.name)
    scope = tables

    def fix_col(ref: ColumnRef, clause: ClauseKind) -> ColumnRef:
        if ref.table is not None:
            table = schema.table(ref.table)
            if table is None:
                diagnostics.append(
                    Diagnostic(
                        "resolve",
                        f"unknown table {ref.table!r}",
                        unit_index=unit_index,
                        clause=clause,
                        name=ref.table,
                    )
                )
                return ref
            if normalize_name(table.name) not in {normalize_name(t) for t in scope}:
                diagnostics.append(
                    Diagnostic(
                        "resolve",
                        f"table {table.name!r} is not in this unit's FROM clause",
                        unit_index=unit_index,
                        clause=clause,
                        name=table.name,
                    )
                )
                return ref
            column = table.column(ref.column)
            if column is None:
                diagnostics.append(
                    Diagnostic(
                        "resolve",
                        f"unknown column {ref.column!r} in table {table.name!r}",
                        unit_index=unit_index,
                        clause=clause,
                        name=ref.column,
                    )
                )
                return ColumnRef(ref.column, table.name)
            return ColumnRef(column.name, table.name)
        found = schema.resolve_column(ref.column, scope)
        if found is None:
            diagnostics.append(
                Diagnostic(
                    "resolve",
                    f"column {ref.column!r} not found in any table of this unit",
                    unit_index=unit_index,
                    clause=clause,
                    name=ref.column,
                )
            )
            return ref
        table, column = found
        return ColumnRef(column.name, table.name)

    def fix_expr(expr, clause: ClauseKind):
        if isinstance(expr, ColumnRef):
            return fix_col(expr, clause)
        if isinstance(expr, Aggregate):
            if isinstance(expr.arg, ColumnRef):
                return Aggregate(expr.fn, fix_col(expr.arg, clause), expr.distinct)
            return expr
        return expr

    def fix_pred(pred: Predicate, clause: ClauseKind) -> Predicate:
        if isinstance(pred, Comparison):
            rhs = fix_col(pred.rhs, clause) if isinstance(pred.rhs, ColumnRef) else pred.rhs
            return Comparison(pred.op, fix_expr(pred.lhs, clause), rhs)
        if isinstance(pred, Between):
            return Between(fix_expr(pred.lhs, clause), pred.low, pred.high)
        if isinstance(pred, Like):
            return Like(fix_col(pred.lhs, clause), pred.pattern)
        if isinstance(pred, InSubquery):
            return InSubquery(fix_col(pred.lhs, clause), pred.subquery)
        if isinstance(pred, Not):
            return Not(fix_pred(pred.operand, clause))
        if isinstance(pred, BoolOp):
            return BoolOp(pred.op, tuple(fix_pred(p, clause) for p in pred.operands))
        raise TypeError(f"unknown predicate {pred!r}")

    order = {normalize_name(name): idx for idx, name in enumerate(tables)}

    def orient(cond: JoinCondition) -> JoinCondition:
        left = fix_col(cond.left, ClauseKind.JOIN)
        right = fix_col(cond.right, ClauseKind.JOIN)
        if left.table is not None and right.table is not None:
            lpos = order.get(normalize_name(left.table))
            rpos = order.get(normalize_name(right.table))
            if lpos is not None and rpos is not None and lpos > rpos:
                left, right = right, left
        return JoinCondition(left, right)

    return SubqueryUnit(
        select=SelectClause(
            tuple(
                Projection(fix_expr(p.expr, ClauseKind.SELECT), p.alias)
                for p in unit.select.projections
            ),
            unit.select.distinct,
        ),
        from_=FromClause(tuple(tables), tuple(orient(j) for j in unit.from_.joins)),
        where=fix_pred(unit.where, ClauseKind.WHERE) if unit.where is not None else None,
        group_by=tuple(fix_col(c, ClauseKind.GROUP_BY) for c in unit.group_by),
        having=fix_pred(unit.having, ClauseKind.HAVING) if unit.having is not None else None,
        order_by=tuple(
            OrderItem(fix_expr(o.expr, ClauseKind.ORDER_LIMIT), o.descending)
            for o in unit.order_by
        ),
        limit=unit.limit,
    )


# --- validation -------------------------------------------------------------


def validate(ast: QueryAst, schema: Schema | None = None) -> list[Diagnostic]:
    """Check dialect invariants; returns an empty list when the tree is sound."""
    diagnostics: list[Diagnostic] = []
    if schema is not None:
        ast, diagnostics = resolve(ast, schema)

    n = len(ast.units)
    referenced = referenced_units(ast)
    mains = main_unit_indices(ast)

    if not mains:
        diagnostics.append(Diagnostic("invariant", "every unit is referenced; no top-level query"))
    else:
        expected = list(range(mains[0], n))
        if mains != expected:
            diagnostics.append(
                Diagnostic(
                    "invariant",
                    "top-level units must occupy the trailing positions after all "
                    "lifted subqueries",
                )
            )

    for i, op in enumerate(ast.set_ops):
        both_main = i in mains and (i + 1) in mains
        if op is not None and not both_main:
            diagnostics.append(
                Diagnostic(
                    "invariant",
                    f"set operator between unit {i} and {i + 1} links a lifted subquery",
                    unit_index=i,
                    clause=ClauseKind.SET_OP,
                )
            )
        if op is None and both_main:
            diagnostics.append(
                Diagnostic(
                    "invariant",
                    f"units {i} and {i + 1} are both top-level but have no set operator",
                    unit_index=i,
                    clause=ClauseKind.SET_OP,
                )
            )

    for idx, unit in enumerate(ast.units):
        if not unit.from_.tables:
            diagnostics.append(
                Diagnostic(
                    "invariant", "FROM clause has no tables", unit_index=idx, clause=ClauseKind.FROM
                )
            )
        scope = {normalize_name(t) for t in unit.from_.tables}
        for cond in unit.from_.joins:
            sides = (cond.left, cond.right)
            tables = {normalize_name(c.table) for c in sides if c.table is not None}
            if len(tables) < 2 and all(c.table is not None for c in sides):
                diagnostics.append(
                    Diagnostic(
                        "invariant",
                        "join condition must link two different tables",
                        unit_index=idx,
                        clause=ClauseKind.JOIN,
                    )
                )
            for side in sides:
                if side.table is not None and normalize_name(side.table) not in scope:
                    diagnostics.append(
                        Diagnostic(
                            "invariant",
                            f"join condition references table {side.table!r} outside the "
                            "FROM clause",
                            unit_index=idx,
                            clause=ClauseKind.JOIN,
                            name=side.table,
                        )
                    )

        if unit.where is not None:
            for atom in iter_atoms(unit.where):
                lhs = getattr(atom, "lhs", None)
                if isinstance(lhs, Aggregate):
                    diagnostics.append(
                        Diagnostic(
                            "invariant",
                            "aggregates are not allowed in WHERE",
                            unit_index=idx,
                            clause=ClauseKind.WHERE,
                        )
                    )

        if unit.having is not None and not unit.group_by:
            for atom in iter_atoms(unit.having):
                lhs = getattr(atom, "lhs", None)
                if not isinstance(lhs, Aggregate):
                    diagnostics.append(
                        Diagnostic(
                            "invariant",
                            "HAVING without GROUP BY may only test aggregates",
                            unit_index=idx,
                            clause=ClauseKind.HAVING,
                        )
                    )
                    break

        for ref in unit_subquery_refs(unit):
            if not (0 <= ref.unit_index < idx):
                diagnostics.append(
                    Diagnostic(
                        "invariant",
                        f"unit {idx} references unit {ref.unit_index}, which does not "
                        "come before it",
                        unit_index=idx,
                    )
                )
                continue
            target = ast.units[ref.unit_index]
            if len(target.select.projections) != 1 or isinstance(
                target.select.projections[0].expr, Star
            ):
                diagnostics.append(
                    Diagnostic(
                        "invariant",
                        f"subquery unit {ref.unit_index} must project exactly one column",
                        unit_index=idx,
                    )
                )

    return diagnostics
