"""Synthesize runnable prefix queries for individual explanation steps.

Selecting step *k* of a query's explanation shows the rows that exist after
the clauses of steps 1..k have been applied.  When the prefix stops before
the real SELECT, a placeholder projection is synthesized: ``*`` for
row-level prefixes, or the group keys plus ``COUNT(*)`` once the data has
been split into groups.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .explain import ExplanationPlan
from .gateway import DatabaseHandle, ExecLimits, QueryTimeout, ResultTable, execute_readonly
from .schema import Schema
from .sqlcore import (
    AggFn,
    Aggregate,
    Between,
    BoolOp,
    ClauseKind,
    Comparison,
    InSubquery,
    Like,
    Not,
    Predicate,
    Projection,
    QueryAst,
    SelectClause,
    Star,
    SubqueryRef,
    SubqueryUnit,
    main_unit_indices,
    print_sql,
)

COUNT_ALIAS = "record_count"


class StepLookupError(LookupError):
    """The requested step does not exist in the plan."""


class StepExecutionError(RuntimeError):
    """The synthesized prefix query failed to run."""

    def __init__(self, sql: str, reason: str):
        # The query text travels in the message so HTTP clients can show it.
        super().__init__(f"intermediate query failed: {reason} (while running: {sql})")
        self.sql = sql
        self.reason = reason


@dataclass(frozen=True)
class PrefixQuery:
    """An executable query mirroring the state after one explanation step."""

    ast: QueryAst
    sql: str
    synthesized_select: bool


def _predicate_refs(predicate: Predicate | None) -> set[int]:
    refs: set[int] = set()

    def walk(node) -> None:
        if node is None:
            return
        if isinstance(node, SubqueryRef):
            refs.add(node.unit_index)
        elif isinstance(node, Comparison):
            walk(node.lhs)
            walk(node.rhs)
        elif isinstance(node, Between):
            walk(node.lhs)
        elif isinstance(node, (Like,)):
            walk(node.lhs)
        elif isinstance(node, InSubquery):
            walk(node.subquery)
        elif isinstance(node, Not):
            walk(node.operand)
        elif isinstance(node, BoolOp):
            for operand in node.operands:
                walk(operand)

    walk(predicate)
    return refs


def _unit_refs(unit: SubqueryUnit) -> set[int]:
    return _predicate_refs(unit.where) | _predicate_refs(unit.having)


def _transitive_dependencies(ast: QueryAst, seeds: set[int]) -> list[int]:
    """All unit indices the seeds depend on, in ascending (definition) order."""
    needed: set[int] = set()
    frontier = list(seeds)
    while frontier:
        index = frontier.pop()
        if index in needed:
            continue
        needed.add(index)
        frontier.extend(_unit_refs(ast.units[index]))
    return sorted(needed)


def _remap_predicate(predicate, mapping: dict[int, int]):
    if predicate is None:
        return None
    if isinstance(predicate, SubqueryRef):
        return SubqueryRef(mapping[predicate.unit_index])
    if isinstance(predicate, Comparison):
        return replace(
            predicate,
            lhs=_remap_predicate(predicate.lhs, mapping) if isinstance(predicate.lhs, SubqueryRef) else predicate.lhs,
            rhs=_remap_predicate(predicate.rhs, mapping) if isinstance(predicate.rhs, SubqueryRef) else predicate.rhs,
        )
    if isinstance(predicate, InSubquery):
        return replace(predicate, subquery=SubqueryRef(mapping[predicate.subquery.unit_index]))
    if isinstance(predicate, Not):
        return replace(predicate, operand=_remap_predicate(predicate.operand, mapping))
    if isinstance(predicate, BoolOp):
        return replace(
            predicate,
            operands=tuple(_remap_predicate(op, mapping) for op in predicate.operands),
        )
    return predicate


def _remap_unit(unit: SubqueryUnit, mapping: dict[int, int]) -> SubqueryUnit:
    return replace(
        unit,
        where=_remap_predicate(unit.where, mapping),
        having=_remap_predicate(unit.having, mapping),
    )


def _synthesize_select(prefix: SubqueryUnit) -> SelectClause:
    """Placeholder projection for a prefix that stops before the SELECT step."""
    if prefix.group_by:
        projections = [Projection(column) for column in prefix.group_by]
        projections.append(Projection(Aggregate(AggFn.COUNT, Star()), COUNT_ALIAS))
        projected = {p.expr for p in projections}
        for item in prefix.order_by:
            if isinstance(item.expr, Aggregate) and item.expr not in projected:
                projections.append(Projection(item.expr))
                projected.add(item.expr)
        return SelectClause(tuple(projections))
    return SelectClause((Projection(Star()),))


def prefix_query(plan: ExplanationPlan, unit_index: int, step_index: int) -> PrefixQuery:
    """Build the query whose result shows the data after the given step."""
    ast = plan.source_ast
    block = next((b for b in plan.blocks if b.unit_index == unit_index), None)
    if block is None:
        raise StepLookupError(f"no query numbered {unit_index + 1}")
    included = [s for s in block.steps if s.step_index <= step_index]
    if not included or step_index > len(block.steps):
        raise StepLookupError(f"query {unit_index + 1} has no step {step_index}")
    last = included[-1]

    if last.clause_kind is ClauseKind.SET_OP:
        # "Combine with the previous query": show what the chain produced so
        # far, i.e. the earlier top-level members and whatever they depend on.
        mains_before = [m for m in main_unit_indices(ast) if m < unit_index]
        needed = _transitive_dependencies(ast, set(mains_before))
        mapping = {old: new for new, old in enumerate(needed)}
        units = tuple(_remap_unit(ast.units[i], mapping) for i in needed)
        links: list = []
        for position in range(1, len(needed)):
            previous, current = needed[position - 1], needed[position]
            if previous in mains_before and current in mains_before:
                links.append(ast.set_ops[current - 1])
            else:
                links.append(None)
        chain = QueryAst(units, tuple(links))
        return PrefixQuery(ast=chain, sql=print_sql(chain), synthesized_select=False)

    kinds = {step.clause_kind for step in included}
    unit = ast.units[unit_index]
    prefix = SubqueryUnit(
        select=unit.select,
        from_=unit.from_,
        where=unit.where if ClauseKind.WHERE in kinds else None,
        group_by=unit.group_by if ClauseKind.GROUP_BY in kinds else (),
        having=unit.having if ClauseKind.HAVING in kinds else None,
        order_by=unit.order_by if ClauseKind.ORDER_LIMIT in kinds else (),
        limit=unit.limit if ClauseKind.ORDER_LIMIT in kinds else None,
    )
    synthesized = ClauseKind.SELECT not in kinds
    if synthesized:
        prefix = replace(prefix, select=_synthesize_select(prefix))

    dependencies = _transitive_dependencies(ast, _unit_refs(prefix))
    mapping = {old: new for new, old in enumerate(dependencies)}
    mapping[unit_index] = len(dependencies)
    units = tuple(_remap_unit(ast.units[i], mapping) for i in dependencies)
    units += (_remap_unit(prefix, mapping),)
    prefix_ast = QueryAst(units, (None,) * (len(units) - 1))
    return PrefixQuery(ast=prefix_ast, sql=print_sql(prefix_ast), synthesized_select=synthesized)


def intermediate_result(
    plan: ExplanationPlan,
    handle: DatabaseHandle,
    unit_index: int,
    step_index: int,
    limits: ExecLimits | None = None,
    schema: Schema | None = None,
) -> tuple[ResultTable, str]:
    """Run the prefix query for a step and return (rows, the SQL that ran)."""
    prefix = prefix_query(plan, unit_index, step_index)
    try:
        result = execute_readonly(handle, prefix.sql, limits or ExecLimits())
    except QueryTimeout:
        raise
    except Exception as err:
        raise StepExecutionError(prefix.sql, str(err)) from err
    return result, prefix.sql
