"""Render a query tree as an editable step-by-step natural-language plan.

Every clause kind has exactly one sentence template, and every table,
column, literal, and subquery reference lands in exactly one
:class:`EntitySpan`, so the inverse grammar in :mod:`sqlucid.refine` can map
edited sentences back to clauses and the linker can highlight what a phrase
means.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace

from .schema import Schema, display_name
from .sqlcore import (
    Aggregate,
    AggFn,
    Between,
    BoolOp,
    ClauseKind,
    ClauseRef,
    ColumnRef,
    Comparison,
    InSubquery,
    InvalidAstError,
    Like,
    Literal,
    Not,
    Predicate,
    QueryAst,
    SetOperator,
    Star,
    SubqueryRef,
    SubqueryUnit,
    clause_kinds,
    parse_sql,
    print_sql,
)

ORDINALS = ("first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth")


def ordinal_phrase(n: int) -> str:
    """1 -> "the first query", 11 -> "query 11"."""
    if 1 <= n <= len(ORDINALS):
        return f"the {ORDINALS[n - 1]} query"
    return f"query {n}"


# --- link targets -----------------------------------------------------------


@dataclass(frozen=True)
class TableTarget:
    table: str


@dataclass(frozen=True)
class ColumnTarget:
    table: str
    column: str


@dataclass(frozen=True)
class ValueTarget:
    value: str | int | float
    column: ColumnTarget | None = None


@dataclass(frozen=True)
class SubqueryResultTarget:
    unit_index: int


Target = TableTarget | ColumnTarget | ValueTarget | SubqueryResultTarget


@dataclass(frozen=True)
class EntitySpan:
    start: int
    end: int
    target: Target

    def slice(self, text: str) -> str:
        return text[self.start : self.end]


@dataclass(frozen=True)
class ExplanationStep:
    unit_index: int
    step_index: int  # 1-based within its block
    clause_kind: ClauseKind
    text: str
    spans: tuple[EntitySpan, ...] = ()
    origin: str = "generated"  # generated | user_edited | user_added
    user_text: str | None = None


@dataclass(frozen=True)
class Block:
    unit_index: int
    header: str
    steps: tuple[ExplanationStep, ...]


@dataclass(frozen=True)
class ExplanationPlan:
    blocks: tuple[Block, ...]
    source_ast: QueryAst

    def step(self, unit_index: int, step_index: int) -> ExplanationStep | None:
        for block in self.blocks:
            if block.unit_index == unit_index:
                for step in block.steps:
                    if step.step_index == step_index:
                        return step
        return None

    def step_of_kind(self, unit_index: int, kind: ClauseKind) -> ExplanationStep | None:
        for block in self.blocks:
            if block.unit_index == unit_index:
                for step in block.steps:
                    if step.clause_kind is kind:
                        return step
        return None

    def steps(self):
        for block in self.blocks:
            yield from block.steps


# --- text assembly ----------------------------------------------------------


class _TextBuilder:
    def __init__(self) -> None:
        self._parts: list[str] = []
        self._length = 0
        self.spans: list[EntitySpan] = []

    def lit(self, text: str) -> "_TextBuilder":
        self._parts.append(text)
        self._length += len(text)
        return self

    def entity(self, text: str, target: Target) -> "_TextBuilder":
        self.spans.append(EntitySpan(self._length, self._length + len(text), target))
        return self.lit(text)

    def text(self) -> str:
        return "".join(self._parts)


def value_text(value: str | int | float) -> str:
    return value if isinstance(value, str) else repr(value)


@dataclass(frozen=True)
class _Ctx:
    ast: QueryAst
    schema: Schema
    unit_index: int

    @property
    def unit(self) -> SubqueryUnit:
        return self.ast.units[self.unit_index]


def _column_target(ref: ColumnRef) -> ColumnTarget:
    return ColumnTarget(ref.table or "", ref.column)


def _emit_column(out: _TextBuilder, ref: ColumnRef) -> None:
    out.entity(display_name(ref.column), _column_target(ref))


def _emit_value(out: _TextBuilder, literal: Literal, hint: ColumnRef | None) -> None:
    target = ValueTarget(literal.value, _column_target(hint) if hint is not None else None)
    out.entity(value_text(literal.value), target)


_AGG_WORD = {
    AggFn.SUM: "total",
    AggFn.AVG: "average",
    AggFn.MIN: "smallest",
    AggFn.MAX: "largest",
}


def _emit_aggregate(out: _TextBuilder, agg: Aggregate, lead: str = "the ") -> None:
    if agg.fn is AggFn.COUNT:
        if isinstance(agg.arg, Star):
            out.lit(lead + "number of records")
            return
        out.lit(lead + "number of " + ("distinct " if agg.distinct else ""))
        _emit_column(out, agg.arg)
        return
    out.lit(lead + _AGG_WORD[agg.fn] + " " + ("distinct " if agg.distinct else ""))
    _emit_column(out, agg.arg)


def _column_hint(expr) -> ColumnRef | None:
    if isinstance(expr, ColumnRef):
        return expr
    if isinstance(expr, Aggregate) and isinstance(expr.arg, ColumnRef):
        return expr.arg
    return None


def _emit_subquery_result(out: _TextBuilder, ref: SubqueryRef) -> None:
    out.entity(
        f"the result of {ordinal_phrase(ref.unit_index + 1)}",
        SubqueryResultTarget(ref.unit_index),
    )


_VERB = {
    "=": " is ",
    "!=": " is not ",
    "<": " is less than ",
    "<=": " is at most ",
    ">": " is greater than ",
    ">=": " is at least ",
}


def _emit_atom_lhs(out: _TextBuilder, lhs, definite: bool) -> None:
    if isinstance(lhs, Aggregate):
        _emit_aggregate(out, lhs)
    else:
        if definite:
            out.lit("the ")
        _emit_column(out, lhs)


def _emit_atom(out: _TextBuilder, ctx: _Ctx, atom, negated: bool = False) -> None:
    if isinstance(atom, Comparison):
        subquery_rhs = isinstance(atom.rhs, SubqueryRef)
        _emit_atom_lhs(out, atom.lhs, definite=subquery_rhs)
        out.lit(_VERB[atom.op])
        if isinstance(atom.rhs, Literal):
            _emit_value(out, atom.rhs, _column_hint(atom.lhs))
        elif isinstance(atom.rhs, SubqueryRef):
            _emit_subquery_result(out, atom.rhs)
        else:
            _emit_column(out, atom.rhs)
        return
    if isinstance(atom, Between):
        _emit_atom_lhs(out, atom.lhs, definite=False)
        out.lit(" is not between " if negated else " is between ")
        _emit_value(out, atom.low, _column_hint(atom.lhs))
        out.lit(" and ")
        _emit_value(out, atom.high, _column_hint(atom.lhs))
        return
    if isinstance(atom, Like):
        _emit_atom_lhs(out, atom.lhs, definite=False)
        out.lit(" does not match " if negated else " matches ")
        _emit_value(out, atom.pattern, atom.lhs)
        return
    if isinstance(atom, InSubquery):
        _emit_atom_lhs(out, atom.lhs, definite=True)
        out.lit(" is not in " if negated else " is in ")
        _emit_subquery_result(out, atom.subquery)
        return
    raise InvalidAstError(f"cannot verbalize atom {atom!r}")


def _emit_predicate(out: _TextBuilder, ctx: _Ctx, pred: Predicate, level: str = "and") -> None:
    """Verbalized precedence is inverted from SQL: "or" binds tighter than
    "and", so ``a AND (b OR c)`` reads "a and b or c" while ``(a AND b) OR c``
    needs parentheses."""
    if isinstance(pred, BoolOp):
        if pred.op == "and" and level != "and":
            out.lit("(")
            _emit_predicate(out, ctx, pred, "and")
            out.lit(")")
            return
        joiner = " and " if pred.op == "and" else " or "
        inner_level = "or" if pred.op == "and" else "term"
        for index, operand in enumerate(pred.operands):
            if index:
                out.lit(joiner)
            _emit_predicate(out, ctx, operand, inner_level)
        return
    if isinstance(pred, Not):
        inner = pred.operand
        if isinstance(inner, (Between, Like, InSubquery)):
            _emit_atom(out, ctx, inner, negated=True)
            return
        out.lit("not (")
        _emit_predicate(out, ctx, inner, "and")
        out.lit(")")
        return
    _emit_atom(out, ctx, pred)


# --- clause templates -------------------------------------------------------


def _render_from(ctx: _Ctx) -> _TextBuilder:
    out = _TextBuilder()
    tables = ctx.unit.from_.tables
    if len(tables) == 1:
        out.lit("In table ")
        out.entity(display_name(tables[0]), TableTarget(tables[0]))
        out.lit(".")
        return out
    out.lit("Merge data in table ")
    for index, table in enumerate(tables):
        if index:
            out.lit(" and table ")
        out.entity(display_name(table), TableTarget(table))
    out.lit(".")
    return out


def _render_where(ctx: _Ctx) -> _TextBuilder:
    out = _TextBuilder()
    out.lit("Keep the records where ")
    _emit_predicate(out, ctx, ctx.unit.where)
    out.lit(".")
    return out


def _render_group_by(ctx: _Ctx) -> _TextBuilder:
    out = _TextBuilder()
    out.lit("Split the data into groups based on ")
    for index, column in enumerate(ctx.unit.group_by):
        if index:
            out.lit(" and ")
        out.lit("the ")
        _emit_column(out, column)
    out.lit(".")
    return out


def _render_having(ctx: _Ctx) -> _TextBuilder:
    out = _TextBuilder()
    out.lit("Keep the groups where ")
    _emit_predicate(out, ctx, ctx.unit.having)
    out.lit(".")
    return out


def _limit_suffix(n: int) -> str:
    return "the first record" if n == 1 else f"the first {n} records"


def _render_order_limit(ctx: _Ctx) -> _TextBuilder:
    unit = ctx.unit
    out = _TextBuilder()
    if not unit.order_by:
        out.lit("Return only " + _limit_suffix(unit.limit) + ".")
        return out
    noun = "groups" if unit.group_by else "records"
    out.lit(f"Sort the {noun} based on ")
    for index, item in enumerate(unit.order_by):
        if index:
            out.lit(" and ")
        if isinstance(item.expr, Aggregate):
            _emit_aggregate(out, item.expr)
        else:
            out.lit("the ")
            _emit_column(out, item.expr)
        out.lit(" in descending order" if item.descending else " in ascending order")
    if unit.limit is not None:
        out.lit(", and return " + _limit_suffix(unit.limit))
    out.lit(".")
    return out


def _render_select(ctx: _Ctx) -> _TextBuilder:
    select = ctx.unit.select
    out = _TextBuilder()
    out.lit("Return ")
    for index, projection in enumerate(select.projections):
        if index:
            out.lit(", ")
        distinct_here = select.distinct and index == 0
        expr = projection.expr
        if isinstance(expr, Star):
            out.lit("the distinct records" if distinct_here else "all columns")
            continue
        if isinstance(expr, Aggregate):
            _emit_aggregate(out, expr, lead="the distinct " if distinct_here else "the ")
            continue
        out.lit("the distinct " if distinct_here else "the ")
        _emit_column(out, expr)
    out.lit(".")
    return out


_SET_OP_SUFFIX = {
    SetOperator.UNION: "",
    SetOperator.UNION_ALL: ", keeping all rows",
    SetOperator.INTERSECT: ", keeping rows in both",
    SetOperator.EXCEPT: ", removing rows that appear in it",
}


def _render_set_op(op: SetOperator) -> _TextBuilder:
    out = _TextBuilder()
    out.lit("Combine with the previous query" + _SET_OP_SUFFIX[op] + ".")
    return out


def render_clause(ast: QueryAst, ref: ClauseRef, schema: Schema) -> tuple[str, tuple[EntitySpan, ...]]:
    """Render one clause as (sentence, entity spans)."""
    ctx = _Ctx(ast, schema, ref.unit_index)
    if ref.kind in (ClauseKind.FROM, ClauseKind.JOIN):
        out = _render_from(ctx)
    elif ref.kind is ClauseKind.WHERE:
        out = _render_where(ctx)
    elif ref.kind is ClauseKind.GROUP_BY:
        out = _render_group_by(ctx)
    elif ref.kind is ClauseKind.HAVING:
        out = _render_having(ctx)
    elif ref.kind is ClauseKind.ORDER_LIMIT:
        out = _render_order_limit(ctx)
    elif ref.kind is ClauseKind.SELECT:
        out = _render_select(ctx)
    elif ref.kind is ClauseKind.SET_OP:
        op = ast.set_ops[ref.unit_index - 1] if ref.unit_index > 0 else None
        if op is None:
            raise InvalidAstError(f"unit {ref.unit_index} has no set operator")
        out = _render_set_op(op)
    else:
        raise InvalidAstError(f"cannot render clause kind {ref.kind}")
    return out.text(), tuple(out.spans)


# --- whole-plan assembly ----------------------------------------------------


def explain(ast: QueryAst, schema: Schema) -> ExplanationPlan:
    """Build the full plan: one block per unit, one step per clause."""
    multi_unit = len(ast.units) > 1
    blocks = []
    for unit_index, unit in enumerate(ast.units):
        kinds: list[ClauseKind] = []
        if unit_index > 0 and ast.set_ops[unit_index - 1] is not None:
            kinds.append(ClauseKind.SET_OP)
        kinds.extend(clause_kinds(unit))
        steps = []
        for step_index, kind in enumerate(kinds, start=1):
            text, spans = render_clause(ast, ClauseRef(unit_index, kind), schema)
            steps.append(
                ExplanationStep(
                    unit_index=unit_index,
                    step_index=step_index,
                    clause_kind=kind,
                    text=text,
                    spans=spans,
                )
            )
        header = "Start " + ordinal_phrase(unit_index + 1) if multi_unit else ""
        blocks.append(Block(unit_index=unit_index, header=header, steps=tuple(steps)))
    return ExplanationPlan(blocks=tuple(blocks), source_ast=ast)


# --- serialization and digest ----------------------------------------------


def _target_to_json(target: Target) -> dict:
    if isinstance(target, TableTarget):
        return {"kind": "table", "table": target.table}
    if isinstance(target, ColumnTarget):
        return {"kind": "column", "table": target.table, "column": target.column}
    if isinstance(target, ValueTarget):
        column = (
            {"table": target.column.table, "column": target.column.column}
            if target.column is not None
            else None
        )
        return {"kind": "value", "value": target.value, "column": column}
    return {"kind": "subquery_result", "unit_index": target.unit_index}


def _target_from_json(data: dict) -> Target:
    kind = data["kind"]
    if kind == "table":
        return TableTarget(data["table"])
    if kind == "column":
        return ColumnTarget(data["table"], data["column"])
    if kind == "value":
        column = data.get("column")
        return ValueTarget(
            data["value"], ColumnTarget(column["table"], column["column"]) if column else None
        )
    if kind == "subquery_result":
        return SubqueryResultTarget(data["unit_index"])
    raise ValueError(f"unknown target kind {kind!r}")


def plan_to_json(plan: ExplanationPlan) -> dict:
    return {
        "sql": print_sql(plan.source_ast),
        "blocks": [
            {
                "unit_index": block.unit_index,
                "header": block.header,
                "steps": [
                    {
                        "unit_index": step.unit_index,
                        "step_index": step.step_index,
                        "clause_kind": step.clause_kind.value,
                        "text": step.text,
                        "origin": step.origin,
                        "user_text": step.user_text,
                        "spans": [
                            {
                                "start": span.start,
                                "end": span.end,
                                "target": _target_to_json(span.target),
                            }
                            for span in step.spans
                        ],
                    }
                    for step in block.steps
                ],
            }
            for block in plan.blocks
        ],
    }


def plan_from_json(data: dict) -> ExplanationPlan:
    blocks = []
    for block_data in data["blocks"]:
        steps = tuple(
            ExplanationStep(
                unit_index=step["unit_index"],
                step_index=step["step_index"],
                clause_kind=ClauseKind(step["clause_kind"]),
                text=step["text"],
                spans=tuple(
                    EntitySpan(s["start"], s["end"], _target_from_json(s["target"]))
                    for s in step["spans"]
                ),
                origin=step.get("origin", "generated"),
                user_text=step.get("user_text"),
            )
            for step in block_data["steps"]
        )
        blocks.append(Block(block_data["unit_index"], block_data["header"], steps))
    return ExplanationPlan(blocks=tuple(blocks), source_ast=parse_sql(data["sql"]))


def explanation_digest(plan: ExplanationPlan) -> str:
    """Stable fingerprint of the plan's content, for history comparisons."""
    payload = json.dumps(plan_to_json(plan), sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def mark_step(
    plan: ExplanationPlan, unit_index: int, clause_kind: ClauseKind, origin: str, user_text: str
) -> ExplanationPlan:
    """Tag the regenerated step for an edited clause with its provenance."""
    blocks = []
    for block in plan.blocks:
        if block.unit_index != unit_index:
            blocks.append(block)
            continue
        steps = tuple(
            replace(step, origin=origin, user_text=user_text)
            if step.clause_kind is clause_kind
            else step
            for step in block.steps
        )
        blocks.append(Block(block.unit_index, block.header, steps))
    return ExplanationPlan(blocks=tuple(blocks), source_ast=plan.source_ast)
