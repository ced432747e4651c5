"""Canonical SQL rendering.

The printed form is deterministic: keywords uppercase, every column
qualified as ``table.column``, aggregates spelled ``FN (arg)``, string
literals double-quoted, and lifted subqueries re-inlined in parentheses.
Printing then re-parsing yields a structurally identical tree.
"""
from __future__ import annotations

from .analysis import main_unit_indices
from .nodes import (
    Aggregate,
    Between,
    BoolOp,
    ColumnRef,
    Comparison,
    InSubquery,
    InvalidAstError,
    JoinCondition,
    Like,
    Literal,
    Not,
    Predicate,
    QueryAst,
    SetOperator,
    Star,
    SubqueryRef,
)
from ..schema import normalize_name

_SET_OP_SQL = {
    SetOperator.UNION: "UNION",
    SetOperator.UNION_ALL: "UNION ALL",
    SetOperator.INTERSECT: "INTERSECT",
    SetOperator.EXCEPT: "EXCEPT",
}


def print_literal(lit: Literal) -> str:
    if isinstance(lit.value, str):
        return '"' + lit.value.replace('"', '""') + '"'
    return repr(lit.value)


def _column(ref: ColumnRef) -> str:
    return f"{ref.table}.{ref.column}" if ref.table is not None else ref.column


def _expr(expr) -> str:
    if isinstance(expr, Star):
        return "*"
    if isinstance(expr, ColumnRef):
        return _column(expr)
    if isinstance(expr, Aggregate):
        if isinstance(expr.arg, Star):
            inner = "*"
        else:
            inner = ("DISTINCT " if expr.distinct else "") + _column(expr.arg)
        return f"{expr.fn.value.upper()} ({inner})"
    raise InvalidAstError(f"cannot print expression {expr!r}")


def _predicate(ast: QueryAst, pred: Predicate) -> str:
    if isinstance(pred, BoolOp):
        parts = []
        for operand in pred.operands:
            text = _predicate(ast, operand)
            # OR binds looser than AND, so an OR nested under AND needs parens.
            if pred.op == "and" and isinstance(operand, BoolOp) and operand.op == "or":
                text = f"({text})"
            parts.append(text)
        return f" {pred.op.upper()} ".join(parts)
    if isinstance(pred, Not):
        inner = pred.operand
        if isinstance(inner, Between):
            return (
                f"{_expr(inner.lhs)} NOT BETWEEN "
                f"{print_literal(inner.low)} AND {print_literal(inner.high)}"
            )
        if isinstance(inner, Like):
            return f"{_column(inner.lhs)} NOT LIKE {print_literal(inner.pattern)}"
        if isinstance(inner, InSubquery):
            return f"{_column(inner.lhs)} NOT IN ({_unit(ast, inner.subquery.unit_index)})"
        return f"NOT ({_predicate(ast, inner)})"
    if isinstance(pred, Comparison):
        if isinstance(pred.rhs, Literal):
            rhs = print_literal(pred.rhs)
        elif isinstance(pred.rhs, SubqueryRef):
            rhs = f"({_unit(ast, pred.rhs.unit_index)})"
        else:
            rhs = _column(pred.rhs)
        return f"{_expr(pred.lhs)} {pred.op} {rhs}"
    if isinstance(pred, Between):
        return (
            f"{_expr(pred.lhs)} BETWEEN {print_literal(pred.low)} AND {print_literal(pred.high)}"
        )
    if isinstance(pred, Like):
        return f"{_column(pred.lhs)} LIKE {print_literal(pred.pattern)}"
    if isinstance(pred, InSubquery):
        return f"{_column(pred.lhs)} IN ({_unit(ast, pred.subquery.unit_index)})"
    raise InvalidAstError(f"cannot print predicate {pred!r}")


def _from_clause(from_) -> str:
    tables = list(from_.tables)
    remaining: list[JoinCondition] = list(from_.joins)
    placed = {normalize_name(tables[0])}
    parts = [tables[0]]
    for table in tables[1:]:
        key = normalize_name(table)
        cond = None
        for candidate in remaining:
            sides = {normalize_name(c.table) for c in (candidate.left, candidate.right) if c.table}
            if key in sides and sides - {key} <= placed and len(sides) == 2:
                cond = candidate
                break
        if cond is not None:
            remaining.remove(cond)
            left, right = cond.left, cond.right
            if right.table is not None and normalize_name(right.table) != key:
                left, right = right, left
            parts.append(f"JOIN {table} ON {_column(left)} = {_column(right)}")
        else:
            parts[-1] += " ,"
            parts.append(table)
        placed.add(key)
    if remaining:
        raise InvalidAstError("join conditions do not link the FROM tables in order")
    return " ".join(parts)


def _unit(ast: QueryAst, index: int) -> str:
    unit = ast.units[index]
    select = "SELECT " + ("DISTINCT " if unit.select.distinct else "")
    select += " , ".join(
        _expr(p.expr) + (f" AS {p.alias}" if p.alias else "") for p in unit.select.projections
    )
    parts = [select, "FROM " + _from_clause(unit.from_)]
    if unit.where is not None:
        parts.append("WHERE " + _predicate(ast, unit.where))
    if unit.group_by:
        parts.append("GROUP BY " + " , ".join(_column(c) for c in unit.group_by))
    if unit.having is not None:
        parts.append("HAVING " + _predicate(ast, unit.having))
    if unit.order_by:
        keys = " , ".join(
            _expr(o.expr) + (" DESC" if o.descending else " ASC") for o in unit.order_by
        )
        parts.append("ORDER BY " + keys)
    if unit.limit is not None:
        parts.append(f"LIMIT {unit.limit}")
    return " ".join(parts)


def print_sql(ast: QueryAst) -> str:
    """Render the whole query, re-inlining lifted subqueries."""
    mains = main_unit_indices(ast)
    if not mains or mains != list(range(mains[0], len(ast.units))):
        raise InvalidAstError("query has no printable top-level chain")
    pieces = [_unit(ast, mains[0])]
    for index in mains[1:]:
        op = ast.set_ops[index - 1]
        if op is None:
            raise InvalidAstError(f"top-level units {index - 1} and {index} have no set operator")
        pieces.append(_SET_OP_SQL[op])
        pieces.append(_unit(ast, index))
    return " ".join(pieces)


def normalize_sql(text: str) -> str:
    """Whitespace- and case-insensitive comparison form of a SQL string."""
    from .lexer import IDENT, NUMBER, STRING, lex

    out = []
    for token in lex(text):
        if token.kind == IDENT:
            out.append(token.text.lower())
        elif token.kind == STRING:
            out.append('"' + str(token.value).replace('"', '""') + '"')
        elif token.kind == NUMBER:
            out.append(repr(token.value))
        elif token.text:
            out.append(token.text)
    return " ".join(out)
