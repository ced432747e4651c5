"""Turn edited explanation steps back into clauses and rebuild the query.

Step texts that still follow the sentence templates parse exactly (inverse
grammar, confidence "exact").  Free-form rewrites go to a pluggable clause
backend that proposes a SQL fragment for the step, which is then parsed and
validated like any other clause.  Edits apply atomically: either every edit
lands and the rebuilt query validates, or nothing changes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Protocol

from .explain import (
    ExplanationPlan,
    explain,
    mark_step,
    render_clause,
)
from .schema import Schema, TableDef, normalize_name
from .sqlcore import (
    AggFn,
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
    Literal,
    Not,
    OrderItem,
    ParseError,
    Predicate,
    Projection,
    QueryAst,
    ResolveError,
    SelectClause,
    SetOperator,
    Star,
    SubqueryRef,
    SubqueryUnit,
    validate,
)

# --- errors -----------------------------------------------------------------


class UnparsableStep(ValueError):
    """The step text could not be turned into a clause."""

    def __init__(self, text: str, reason: str):
        super().__init__(f"cannot interpret step {text!r}: {reason}")
        self.text = text
        self.reason = reason


class ConflictError(ValueError):
    """The edit batch cannot produce a valid query; nothing was changed."""

    def __init__(self, message: str, diagnostics: tuple = ()):
        super().__init__(message)
        self.diagnostics = diagnostics


class BackendRefusal(RuntimeError):
    """The clause backend declined to propose a clause."""


class NothingToUndo(LookupError):
    pass


class NothingToRedo(LookupError):
    pass


class _TemplateMismatch(Exception):
    """Internal: the text does not follow the sentence template."""


# --- step classification ----------------------------------------------------

_CLASSIFY_RULES: tuple[tuple[str, ClauseKind], ...] = (
    ("combine with", ClauseKind.SET_OP),
    ("merge data", ClauseKind.JOIN),
    ("in table", ClauseKind.FROM),
    ("keep the records", ClauseKind.WHERE),
    ("split the data into groups", ClauseKind.GROUP_BY),
    ("keep the groups", ClauseKind.HAVING),
    ("sort ", ClauseKind.ORDER_LIMIT),
    ("return only the first", ClauseKind.ORDER_LIMIT),
    ("return", ClauseKind.SELECT),
)


def classify_step(text: str) -> ClauseKind:
    """Map a step sentence to the clause kind it talks about.

    Unrecognized sentences default to WHERE: free-form edits are almost
    always filters ("Make sure the year in 2022.").
    """
    lowered = " ".join(text.lower().split())
    for prefix, kind in _CLASSIFY_RULES:
        if lowered.startswith(prefix):
            return kind
    return ClauseKind.WHERE


# --- clause payloads --------------------------------------------------------


@dataclass(frozen=True)
class OrderLimit:
    order_by: tuple[OrderItem, ...]
    limit: int | None


@dataclass(frozen=True)
class ClauseParse:
    kind: ClauseKind
    payload: object
    confidence: str  # "exact" | "backend"


# --- inverse grammar --------------------------------------------------------


class _StepReader:
    """Cursor over the original text with case-insensitive matching."""

    def __init__(self, text: str):
        self.text = text
        self.low = text.lower()
        self.pos = 0

    def eat(self, literal: str) -> bool:
        if self.low.startswith(literal.lower(), self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.eat(literal):
            raise _TemplateMismatch(f"expected {literal!r} at {self.pos}")

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def rest(self) -> str:
        return self.text[self.pos :]

    def words_ahead(self, count: int) -> list[tuple[int, int, str]]:
        found = []
        for match in re.finditer(r"\w+", self.text[self.pos :]):
            if match.start() > 0 and found == [] and self.text[self.pos : self.pos + match.start()].strip():
                break  # non-word junk before the first word
            found.append((self.pos + match.start(), self.pos + match.end(), match.group(0)))
            if len(found) == count:
                break
        return found


_MAX_NAME_WORDS = 6


def _scope_tables(schema: Schema, scope: tuple[str, ...] | None) -> list[TableDef]:
    if scope is None:
        return list(schema.tables)
    tables = []
    for name in scope:
        table = schema.table(name)
        if table is not None:
            tables.append(table)
    return tables


def _read_column(reader: _StepReader, schema: Schema, scope: tuple[str, ...] | None) -> ColumnRef | None:
    """Longest word run from the cursor that names a column in scope."""
    words = reader.words_ahead(_MAX_NAME_WORDS)
    for length in range(len(words), 0, -1):
        start, end = words[0][0], words[length - 1][1]
        phrase = normalize_name(reader.text[start:end])
        for table in _scope_tables(schema, scope):
            for column in table.columns:
                if normalize_name(column.name) == phrase:
                    reader.pos = end
                    return ColumnRef(column.name, table.name)
    return None


def _read_table(reader: _StepReader, schema: Schema) -> str | None:
    words = reader.words_ahead(_MAX_NAME_WORDS)
    for length in range(len(words), 0, -1):
        start, end = words[0][0], words[length - 1][1]
        phrase = normalize_name(reader.text[start:end])
        table = schema.table(phrase)
        if table is not None:
            reader.pos = end
            return table.name
    return None


_ORDINAL_WORDS = {word: index for index, word in enumerate(
    ("first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"),
    start=0,
)}


def _read_subquery_ref(reader: _StepReader) -> SubqueryRef | None:
    saved = reader.pos
    if not reader.eat("the result of "):
        return None
    if reader.eat("the "):
        words = reader.words_ahead(1)
        if words and words[0][2].lower() in _ORDINAL_WORDS:
            index = _ORDINAL_WORDS[words[0][2].lower()]
            reader.pos = words[0][1]
            if reader.eat(" query"):
                return SubqueryRef(index)
    elif reader.eat("query "):
        words = reader.words_ahead(1)
        if words and words[0][2].isdigit():
            reader.pos = words[0][1]
            return SubqueryRef(int(words[0][2]) - 1)
    reader.pos = saved
    return None


_AGG_TAILS: tuple[tuple[str, AggFn], ...] = (
    ("total ", AggFn.SUM),
    ("average ", AggFn.AVG),
    ("smallest ", AggFn.MIN),
    ("largest ", AggFn.MAX),
)


def _read_aggregate(reader: _StepReader, schema: Schema, scope) -> Aggregate | None:
    """Parse "the number of records", "the total price", etc."""
    saved = reader.pos
    if not reader.eat("the "):
        return None
    if reader.eat("number of records"):
        return Aggregate(AggFn.COUNT, Star())
    if reader.eat("number of "):
        distinct = reader.eat("distinct ")
        column = _read_column(reader, schema, scope)
        if column is not None:
            return Aggregate(AggFn.COUNT, column, distinct)
        reader.pos = saved
        return None
    for tail, fn in _AGG_TAILS:
        if reader.eat(tail):
            distinct = reader.eat("distinct ")
            column = _read_column(reader, schema, scope)
            if column is not None:
                return Aggregate(fn, column, distinct)
            break
    reader.pos = saved
    return None


_LITERAL_STOPS = (" and ", " or ", ")")


def _read_literal_text(reader: _StepReader) -> str:
    """Consume raw text up to the next connective or group close."""
    rest = reader.text[reader.pos :]
    rest_low = reader.low[reader.pos :]
    cut = len(rest)
    for stop in _LITERAL_STOPS:
        index = rest_low.find(stop)
        if index != -1:
            cut = min(cut, index)
    value = rest[:cut].strip()
    if not value:
        raise _TemplateMismatch(f"expected a value at {reader.pos}")
    reader.pos += cut
    while reader.pos > 0 and reader.text[reader.pos - 1].isspace():
        reader.pos -= 1
    return value


def _type_literal(text: str, hint: ColumnRef | Aggregate | None, schema: Schema) -> Literal:
    """Choose str/int/float for a literal using the compared column's affinity."""
    affinity = None
    column_ref = None
    if isinstance(hint, Aggregate):
        if hint.fn in (AggFn.COUNT, AggFn.SUM, AggFn.AVG):
            affinity = "numeric"
        elif isinstance(hint.arg, ColumnRef):
            column_ref = hint.arg
    elif isinstance(hint, ColumnRef):
        column_ref = hint
    if column_ref is not None and column_ref.table is not None:
        column = schema.column(column_ref.table, column_ref.column)
        if column is not None:
            affinity = column.affinity
    if affinity is None:
        affinity = "numeric"  # no anchor: numbers read as numbers

    if affinity in ("integer", "real", "numeric"):
        try:
            return Literal(int(text))
        except ValueError:
            pass
        try:
            return Literal(float(text))
        except ValueError:
            pass
    return Literal(text)


_VERB_OPS: tuple[tuple[str, str], ...] = (
    (" is at least ", ">="),
    (" is at most ", "<="),
    (" is less than ", "<"),
    (" is greater than ", ">"),
    (" is not ", "!="),
    (" is ", "="),
)


def _read_atom(reader: _StepReader, schema: Schema, scope) -> Predicate:
    lhs: ColumnRef | Aggregate | None = _read_aggregate(reader, schema, scope)
    had_the = False
    if lhs is None:
        had_the = reader.eat("the ")
        lhs = _read_column(reader, schema, scope)
        if lhs is None:
            raise _TemplateMismatch(f"expected a column at {reader.pos}")

    if reader.eat(" is not between "):
        low = _type_literal(_read_literal_text_until_and(reader), lhs, schema)
        reader.expect(" and ")
        high = _type_literal(_read_literal_text(reader), lhs, schema)
        return Not(Between(lhs, low, high))
    if reader.eat(" is between "):
        low = _type_literal(_read_literal_text_until_and(reader), lhs, schema)
        reader.expect(" and ")
        high = _type_literal(_read_literal_text(reader), lhs, schema)
        return Between(lhs, low, high)
    if reader.eat(" does not match "):
        return Not(Like(_require_column(lhs), _type_literal_text(reader)))
    if reader.eat(" matches "):
        return Like(_require_column(lhs), _type_literal_text(reader))
    if reader.eat(" is not in "):
        ref = _read_subquery_ref(reader)
        if ref is None:
            raise _TemplateMismatch(f"expected a subquery reference at {reader.pos}")
        return Not(InSubquery(_require_column(lhs), ref))
    if reader.eat(" is in "):
        ref = _read_subquery_ref(reader)
        if ref is None:
            raise _TemplateMismatch(f"expected a subquery reference at {reader.pos}")
        return InSubquery(_require_column(lhs), ref)

    for verb, op in _VERB_OPS:
        if reader.eat(verb):
            ref = _read_subquery_ref(reader)
            if ref is not None:
                return Comparison(op, lhs, ref)
            column = _read_column(reader, schema, scope)
            if column is not None:
                return Comparison(op, lhs, column)
            return Comparison(op, lhs, _type_literal(_read_literal_text(reader), lhs, schema))
    _ = had_the
    raise _TemplateMismatch(f"expected a comparison at {reader.pos}")


def _require_column(lhs) -> ColumnRef:
    if not isinstance(lhs, ColumnRef):
        raise _TemplateMismatch("this phrase needs a plain column on the left")
    return lhs


def _type_literal_text(reader: _StepReader) -> Literal:
    return Literal(_read_literal_text(reader))


def _read_literal_text_until_and(reader: _StepReader) -> str:
    """Like :func:`_read_literal_text` but BETWEEN's own "and" is the stop."""
    rest_low = reader.low[reader.pos :]
    index = rest_low.find(" and ")
    if index == -1:
        raise _TemplateMismatch(f"expected 'and' after the lower bound at {reader.pos}")
    value = reader.text[reader.pos : reader.pos + index].strip()
    if not value:
        raise _TemplateMismatch(f"expected a value at {reader.pos}")
    reader.pos += index
    return value


def _read_predicate(reader: _StepReader, schema: Schema, scope) -> Predicate:
    items: list[Predicate] = [_read_term(reader, schema, scope)]
    connectives: list[str] = []
    while True:
        if reader.eat(" and "):
            connectives.append("and")
        elif reader.eat(" or "):
            connectives.append("or")
        else:
            break
        items.append(_read_term(reader, schema, scope))

    # In sentences "or" binds tighter than "and", mirroring how the
    # templates verbalize OR groups inside a conjunction.
    groups: list[list[Predicate]] = [[items[0]]]
    for connective, item in zip(connectives, items[1:]):
        if connective == "and":
            groups.append([item])
        else:
            groups[-1].append(item)
    conjuncts = [
        group[0] if len(group) == 1 else BoolOp("or", tuple(group)) for group in groups
    ]
    return conjuncts[0] if len(conjuncts) == 1 else BoolOp("and", tuple(conjuncts))


def _read_term(reader: _StepReader, schema: Schema, scope) -> Predicate:
    if reader.eat("not ("):
        inner = _read_predicate(reader, schema, scope)
        reader.expect(")")
        return Not(inner)
    if reader.eat("("):
        inner = _read_predicate(reader, schema, scope)
        reader.expect(")")
        return inner
    return _read_atom(reader, schema, scope)


# --- per-kind template parsers ----------------------------------------------


def infer_join_conditions(
    tables: tuple[str, ...], schema: Schema, original: FromClause | None = None
) -> FromClause:
    """Rebuild join conditions for a table list.

    Conditions from ``original`` that still connect the listed tables are
    kept; missing links fall back to the first foreign key (in declaration
    order) between a new table and any already-placed one.
    """
    available = list(original.joins) if original is not None else []
    placed: list[TableDef] = []
    first = schema.table(tables[0])
    if first is not None:
        placed.append(first)
    joins: list[JoinCondition] = []

    def table_position(name: str) -> int | None:
        key = normalize_name(name)
        for index, table in enumerate(tables):
            if normalize_name(table) == key:
                return index
        return None

    for table_name in tables[1:]:
        table = schema.table(table_name)
        if table is None:
            continue
        found: JoinCondition | None = None
        for cond in available:
            sides = {c.table for c in (cond.left, cond.right) if c.table is not None}
            if not sides or table.name not in {schema.table(s).name for s in sides if schema.table(s)}:
                continue
            others = {s for s in sides if normalize_name(s) != normalize_name(table.name)}
            if others and all(
                any(normalize_name(p.name) == normalize_name(o) for p in placed) for o in others
            ):
                found = cond
                break
        if found is not None:
            available.remove(found)
            left, right = found.left, found.right
            lpos = table_position(left.table) if left.table else None
            rpos = table_position(right.table) if right.table else None
            if lpos is not None and rpos is not None and lpos > rpos:
                left, right = right, left
            joins.append(JoinCondition(left, right))
        else:
            for earlier in placed:
                fk_cond = _foreign_key_condition(earlier, table)
                if fk_cond is not None:
                    joins.append(fk_cond)
                    break
        placed.append(table)
    return FromClause(tables, tuple(joins))


def _foreign_key_condition(earlier: TableDef, later: TableDef) -> JoinCondition | None:
    """First declared foreign key between the two tables, earlier side left."""
    for fk in later.foreign_keys:
        if normalize_name(fk.to_table) == normalize_name(earlier.name):
            return JoinCondition(
                ColumnRef(fk.to_column, earlier.name), ColumnRef(fk.from_column, later.name)
            )
    for fk in earlier.foreign_keys:
        if normalize_name(fk.to_table) == normalize_name(later.name):
            return JoinCondition(
                ColumnRef(fk.from_column, earlier.name), ColumnRef(fk.to_column, later.name)
            )
    return None


def _template_from(
    reader: _StepReader, schema: Schema, original: FromClause | None
) -> FromClause:
    if reader.eat("in table "):
        table = _read_table(reader, schema)
        if table is None:
            raise _TemplateMismatch("unknown table")
        return FromClause((table,), ())
    reader.expect("merge data in table ")
    tables = []
    while True:
        table = _read_table(reader, schema)
        if table is None:
            raise _TemplateMismatch("unknown table")
        tables.append(table)
        if not reader.eat(" and table "):
            break
    if len(tables) < 2:
        raise _TemplateMismatch("a merge step needs at least two tables")
    return infer_join_conditions(tuple(tables), schema, original)


def _template_where(reader: _StepReader, schema: Schema, scope) -> Predicate:
    reader.expect("keep the records where ")
    return _read_predicate(reader, schema, scope)


def _template_having(reader: _StepReader, schema: Schema, scope) -> Predicate:
    reader.expect("keep the groups where ")
    return _read_predicate(reader, schema, scope)


def _template_group_by(reader: _StepReader, schema: Schema, scope) -> tuple[ColumnRef, ...]:
    reader.expect("split the data into groups based on ")
    columns = []
    while True:
        reader.expect("the ")
        column = _read_column(reader, schema, scope)
        if column is None:
            raise _TemplateMismatch("unknown grouping column")
        columns.append(column)
        if not reader.eat(" and "):
            break
    return tuple(columns)


def _read_limit_count(reader: _StepReader) -> int:
    if reader.eat("the first record"):
        return 1
    reader.expect("the first ")
    words = reader.words_ahead(1)
    if not words or not words[0][2].isdigit():
        raise _TemplateMismatch("expected a number of records")
    reader.pos = words[0][1]
    reader.expect(" records")
    return int(words[0][2])


def _template_order_limit(reader: _StepReader, schema: Schema, scope) -> OrderLimit:
    if reader.eat("return only "):
        return OrderLimit((), _read_limit_count(reader))
    if not (reader.eat("sort the records based on ") or reader.eat("sort the groups based on ")):
        raise _TemplateMismatch("expected a sort step")
    items: list[OrderItem] = []
    while True:
        expr = _read_aggregate(reader, schema, scope)
        if expr is None:
            reader.expect("the ")
            expr = _read_column(reader, schema, scope)
            if expr is None:
                raise _TemplateMismatch("unknown sort key")
        if reader.eat(" in ascending order"):
            items.append(OrderItem(expr, descending=False))
        elif reader.eat(" in descending order"):
            items.append(OrderItem(expr, descending=True))
        else:
            raise _TemplateMismatch("expected a sort direction")
        if not reader.eat(" and "):
            break
    limit = None
    if reader.eat(", and return "):
        limit = _read_limit_count(reader)
    return OrderLimit(tuple(items), limit)


def _parse_projection(part: str, schema: Schema, scope) -> tuple[Projection, bool]:
    lowered = " ".join(part.lower().split())
    if lowered == "all columns":
        return Projection(Star()), False
    if lowered == "the distinct records":
        return Projection(Star()), True
    distinct = False
    if lowered.startswith("the distinct "):
        distinct = True
        part = "the " + part[len("the distinct ") :]
    part_reader = _StepReader(part)
    expr = _read_aggregate(part_reader, schema, scope)
    if expr is None:
        part_reader.expect("the ")
        expr = _read_column(part_reader, schema, scope)
        if expr is None:
            raise _TemplateMismatch(f"unknown projection {part!r}")
    if not part_reader.at_end():
        raise _TemplateMismatch(f"trailing text in projection {part!r}")
    return Projection(expr), distinct


def _template_select(reader: _StepReader, schema: Schema, scope) -> SelectClause:
    reader.expect("return ")
    projections: list[Projection] = []
    distinct = False
    for index, part in enumerate(reader.rest().split(", ")):
        projection, flagged = _parse_projection(part, schema, scope)
        if flagged and index > 0:
            raise _TemplateMismatch("only the first returned item can be marked distinct")
        distinct = distinct or flagged
        projections.append(projection)
    reader.pos = len(reader.text)
    return SelectClause(tuple(projections), distinct)


_SET_OP_TEXT = {
    "combine with the previous query": SetOperator.UNION,
    "combine with the previous query, keeping all rows": SetOperator.UNION_ALL,
    "combine with the previous query, keeping rows in both": SetOperator.INTERSECT,
    "combine with the previous query, removing rows that appear in it": SetOperator.EXCEPT,
}


def _template_parse(
    kind: ClauseKind,
    body: str,
    schema: Schema,
    scope: tuple[str, ...] | None,
    original_from: FromClause | None,
):
    reader = _StepReader(body)
    if kind in (ClauseKind.FROM, ClauseKind.JOIN):
        payload = _template_from(reader, schema, original_from)
    elif kind is ClauseKind.WHERE:
        payload = _template_where(reader, schema, scope)
    elif kind is ClauseKind.GROUP_BY:
        payload = _template_group_by(reader, schema, scope)
    elif kind is ClauseKind.HAVING:
        payload = _template_having(reader, schema, scope)
    elif kind is ClauseKind.ORDER_LIMIT:
        payload = _template_order_limit(reader, schema, scope)
    elif kind is ClauseKind.SELECT:
        payload = _template_select(reader, schema, scope)
    elif kind is ClauseKind.SET_OP:
        op = _SET_OP_TEXT.get(" ".join(body.lower().split()))
        if op is None:
            raise _TemplateMismatch("unknown combine step")
        return op
    else:
        raise _TemplateMismatch(f"no template for {kind}")
    if not reader.at_end():
        raise _TemplateMismatch(f"trailing text at {reader.pos}: {reader.rest()!r}")
    return payload


def _roundtrip_matches(kind: ClauseKind, payload, text: str, schema: Schema) -> bool:
    """Re-render the parsed clause and compare it with the input sentence."""
    star = SelectClause((Projection(Star()),))
    unit = SubqueryUnit(select=star, from_=FromClause(("t",)))
    if kind in (ClauseKind.FROM, ClauseKind.JOIN):
        unit = replace(unit, from_=payload)
        kind = ClauseKind.FROM if len(payload.tables) == 1 else ClauseKind.JOIN
    elif kind is ClauseKind.WHERE:
        unit = replace(unit, where=payload)
    elif kind is ClauseKind.GROUP_BY:
        unit = replace(unit, group_by=payload)
    elif kind is ClauseKind.HAVING:
        unit = replace(unit, having=payload)
    elif kind is ClauseKind.ORDER_LIMIT:
        noun_is_groups = "sort the groups" in text.lower()
        unit = replace(
            unit,
            order_by=payload.order_by,
            limit=payload.limit,
            group_by=(ColumnRef("x"),) if noun_is_groups else (),
        )
    elif kind is ClauseKind.SELECT:
        unit = replace(unit, select=payload)
    elif kind is ClauseKind.SET_OP:
        probe = QueryAst((unit, unit), (payload,))
        rendered, _ = render_clause(probe, ClauseRef(1, ClauseKind.SET_OP), schema)
        return _normalized(rendered) == _normalized(text)
    probe = QueryAst((unit,))
    rendered, _ = render_clause(probe, ClauseRef(0, kind), schema)
    return _normalized(rendered) == _normalized(text)


def _normalized(text: str) -> str:
    return " ".join(text.lower().split())


# --- clause backends ---------------------------------------------------------


class ClauseBackend(Protocol):
    """Proposes a SQL fragment for a step sentence the templates cannot parse."""

    def generate_clause(self, step_text: str, kind_hint: ClauseKind, schema: Schema) -> str:
        ...


class RefusingBackend:
    """Offline default: never guesses."""

    def generate_clause(self, step_text: str, kind_hint: ClauseKind, schema: Schema) -> str:
        raise BackendRefusal("no clause backend is configured")


class EchoTemplateBackend:
    """Deterministic schema-aware heuristic standing in for a live model.

    It links schema names mentioned in the sentence, pairs each column with
    the nearest following number or quoted string, and reads comparator cues
    ("at least", "more than", "between", "not") from the words in between.
    """

    _NUMBER = re.compile(r"-?\d+(?:\.\d+)?")
    _QUOTED = re.compile(r"\"([^\"]*)\"|'([^']*)'")

    def generate_clause(self, step_text: str, kind_hint: ClauseKind, schema: Schema) -> str:
        from .linking import relink_step

        spans = relink_step(step_text, schema, None)
        from .explain import ColumnTarget, TableTarget

        columns = [
            (span, span.target)
            for span in spans
            if isinstance(span.target, ColumnTarget)
        ]
        tables = [span.target.table for span in spans if isinstance(span.target, TableTarget)]

        if kind_hint in (ClauseKind.FROM, ClauseKind.JOIN):
            if not tables:
                raise BackendRefusal("no tables recognized in the step")
            return " , ".join(tables)
        if kind_hint is ClauseKind.GROUP_BY:
            if not columns:
                raise BackendRefusal("no grouping columns recognized")
            return " , ".join(f"{t.table}.{t.column}" for _, t in columns)
        if kind_hint is ClauseKind.SELECT:
            if not columns:
                raise BackendRefusal("no projection columns recognized")
            return " , ".join(f"{t.table}.{t.column}" for _, t in columns)
        if kind_hint is ClauseKind.ORDER_LIMIT:
            return self._order_fragment(step_text, columns)
        if kind_hint in (ClauseKind.WHERE, ClauseKind.HAVING):
            return self._filter_fragment(step_text, columns, schema)
        raise BackendRefusal(f"cannot propose a {kind_hint.value} clause")

    def _order_fragment(self, text: str, columns) -> str:
        if not columns:
            raise BackendRefusal("no sort key recognized")
        lowered = text.lower()
        direction = "DESC" if re.search(r"descend|decreas|largest|most|top", lowered) else "ASC"
        span, target = columns[0]
        fragment = f"ORDER BY {target.table}.{target.column} {direction}"
        limit_match = re.search(r"(?:first|top)\s+(\d+)?", lowered)
        if limit_match:
            fragment += f" LIMIT {limit_match.group(1) or 1}"
        return fragment

    def _filter_fragment(self, text: str, columns, schema: Schema) -> str:
        if not columns:
            raise BackendRefusal("no filter column recognized")
        taken = [(span.start, span.end) for span, _ in columns]

        def free(start: int, end: int) -> bool:
            return all(end <= s or start >= e for s, e in taken)

        values: list[tuple[int, str, bool]] = []  # (position, text, quoted)
        for match in self._QUOTED.finditer(text):
            values.append((match.start(), match.group(1) or match.group(2) or "", True))
            taken.append((match.start(), match.end()))
        for match in self._NUMBER.finditer(text):
            if free(match.start(), match.end()):
                values.append((match.start(), match.group(0), False))

        values.sort()
        conditions = []
        for span, target in columns:
            column = schema.column(target.table, target.column)
            following = [v for v in values if v[0] >= span.end]
            if not following:
                continue
            position, raw, quoted = following[0]
            values.remove(following[0])
            cue = text[span.end : position].lower()
            second = None
            if "between" in cue:
                rest = [v for v in values if v[0] > position]
                if rest:
                    second = rest[0]
                    values.remove(second)
            literal = self._render_literal(raw, quoted, column.affinity if column else "text")
            name = f"{target.table}.{target.column}"
            if second is not None:
                high = self._render_literal(second[1], second[2], column.affinity if column else "text")
                conditions.append(f"{name} BETWEEN {literal} AND {high}")
            elif "at least" in cue or "or more" in cue:
                conditions.append(f"{name} >= {literal}")
            elif "at most" in cue or "or less" in cue:
                conditions.append(f"{name} <= {literal}")
            elif "more than" in cue or "greater" in cue or "after" in cue:
                conditions.append(f"{name} > {literal}")
            elif "less than" in cue or "fewer" in cue or "before" in cue:
                conditions.append(f"{name} < {literal}")
            elif " not " in f" {cue} " or "n't" in cue:
                conditions.append(f"{name} != {literal}")
            else:
                conditions.append(f"{name} = {literal}")
        if not conditions:
            raise BackendRefusal("no column/value pairing recognized")
        return " AND ".join(conditions)

    @staticmethod
    def _render_literal(raw: str, quoted: bool, affinity: str) -> str:
        if not quoted and affinity in ("integer", "real", "numeric"):
            return raw
        if not quoted and re.fullmatch(r"-?\d+(?:\.\d+)?", raw) and affinity not in ("text",):
            return raw
        return '"' + raw.replace('"', '""') + '"'


class HttpClauseBackend:
    """Delegates clause proposals to an external service."""

    def __init__(self, url: str, timeout_s: float = 10.0):
        self.url = url
        self.timeout_s = timeout_s

    def generate_clause(self, step_text: str, kind_hint: ClauseKind, schema: Schema) -> str:
        import httpx

        payload = {
            "step_text": step_text,
            "kind_hint": kind_hint.value,
            "schema": schema.to_summary(),
        }
        try:
            response = httpx.post(self.url, json=payload, timeout=self.timeout_s)
            response.raise_for_status()
            data = response.json()
        except Exception as err:  # noqa: BLE001 - network failures become refusals
            raise BackendRefusal(f"clause service failed: {err}") from err
        fragment = data.get("clause_sql_fragment")
        if not isinstance(fragment, str) or not fragment.strip():
            raise BackendRefusal("clause service returned no fragment")
        return fragment


# --- fragment parsing ---------------------------------------------------------


_KIND_KEYWORD = {
    ClauseKind.WHERE: "WHERE",
    ClauseKind.HAVING: "HAVING",
    ClauseKind.GROUP_BY: "GROUP BY",
    ClauseKind.SELECT: "SELECT",
    ClauseKind.FROM: "FROM",
    ClauseKind.JOIN: "FROM",
}


def _strip_keyword(fragment: str, kind: ClauseKind) -> str:
    keyword = _KIND_KEYWORD.get(kind)
    text = fragment.strip().rstrip(";")
    if keyword and text.upper().startswith(keyword + " "):
        return text[len(keyword) + 1 :]
    return text


def _parse_fragment(
    fragment: str, kind: ClauseKind, schema: Schema, scope: tuple[str, ...] | None
):
    """Parse a backend's SQL fragment into the same payload shape templates yield."""
    from .sqlcore import parse_sql

    scope_tables = tuple(t.name for t in _scope_tables(schema, scope)) or ("t",)
    from_part = " , ".join(scope_tables)
    body = _strip_keyword(fragment, kind)

    try:
        if kind in (ClauseKind.WHERE, ClauseKind.HAVING):
            probe = parse_sql(f"SELECT * FROM {from_part} WHERE {body}", schema)
            _reject_probe_subqueries(probe)
            return probe.units[0].where
        if kind is ClauseKind.GROUP_BY:
            probe = parse_sql(f"SELECT * FROM {from_part} GROUP BY {body}", schema)
            return probe.units[0].group_by
        if kind is ClauseKind.SELECT:
            probe = parse_sql(f"SELECT {body} FROM {from_part}", schema)
            return probe.units[0].select
        if kind in (ClauseKind.FROM, ClauseKind.JOIN):
            probe = parse_sql(f"SELECT * FROM {body}", schema)
            from_clause = probe.units[0].from_
            if len(from_clause.tables) > 1 and not from_clause.joins:
                return infer_join_conditions(from_clause.tables, schema)
            return from_clause
        if kind is ClauseKind.ORDER_LIMIT:
            upper = body.upper()
            if not (upper.startswith("ORDER BY ") or upper.startswith("LIMIT ")):
                body = "ORDER BY " + body
            probe = parse_sql(f"SELECT * FROM {from_part} {body}", schema)
            return OrderLimit(probe.units[0].order_by, probe.units[0].limit)
        if kind is ClauseKind.SET_OP:
            key = body.strip().upper()
            mapping = {
                "UNION": SetOperator.UNION,
                "UNION ALL": SetOperator.UNION_ALL,
                "INTERSECT": SetOperator.INTERSECT,
                "EXCEPT": SetOperator.EXCEPT,
            }
            if key in mapping:
                return mapping[key]
            raise ParseError("unknown set operator", position=0, expected="UNION/INTERSECT/EXCEPT")
    except (ParseError, ResolveError) as err:
        raise UnparsableStep(fragment, f"fragment does not parse: {err}") from err
    raise UnparsableStep(fragment, f"unsupported clause kind {kind.value}")


def _reject_probe_subqueries(probe: QueryAst) -> None:
    if len(probe.units) != 1:
        raise ParseError(
            "subqueries are not supported in proposed fragments", position=0, expected="a simple predicate"
        )


# --- the public entry points ---------------------------------------------------


def parse_step(
    step_text: str,
    schema: Schema,
    kind_hint: ClauseKind | None = None,
    backend: ClauseBackend | None = None,
    *,
    scope: tuple[str, ...] | None = None,
    original_from: FromClause | None = None,
) -> ClauseParse:
    """Interpret one step sentence as a clause.

    Template-shaped sentences parse exactly; anything else is delegated to
    ``backend``.  ``scope`` (the unit's FROM tables) anchors bare column
    names; without it, all schema tables are searched in declaration order.
    """
    text = " ".join(step_text.split())
    if not text:
        raise UnparsableStep(step_text, "the step is empty")
    kind = kind_hint or classify_step(text)
    body = text[:-1] if text.endswith(".") else text

    template_failure = "the sentence does not follow a known template"
    try:
        payload = _template_parse(kind, body, schema, scope, original_from)
        if _roundtrip_matches(kind, payload, text, schema):
            return ClauseParse(kind, payload, "exact")
        template_failure = "the sentence is close to a template but does not round-trip"
    except _TemplateMismatch as err:
        template_failure = str(err)

    if backend is None:
        raise UnparsableStep(step_text, template_failure)
    fragment = backend.generate_clause(step_text, kind, schema)
    payload = _parse_fragment(fragment, kind, schema, scope)
    return ClauseParse(kind, payload, "backend")

# --- edit application -----------------------------------------------------------


EDIT_KINDS = ("update", "add", "delete")


@dataclass(frozen=True)
class EditOp:
    """One pending change to the explanation.

    ``step_index`` names an existing step of the unit (1-based, as shown)
    for update/delete; for add it is the desired insertion position and only
    informs ordering, since the rebuilt plan re-derives step numbering.
    """

    kind: str
    unit_index: int
    step_index: int
    new_text: str | None = None

    def __post_init__(self):
        if self.kind not in EDIT_KINDS:
            raise ValueError(f"unknown edit kind {self.kind!r}")
        if self.kind in ("update", "add") and not (self.new_text or "").strip():
            raise ValueError(f"{self.kind} edits need new_text")


@dataclass
class _UnitDraft:
    select: SelectClause | None
    from_: FromClause | None
    where: Predicate | None
    group_by: tuple[ColumnRef, ...]
    having: Predicate | None
    order_by: tuple[OrderItem, ...]
    limit: int | None

    @classmethod
    def from_unit(cls, unit: SubqueryUnit) -> "_UnitDraft":
        return cls(
            select=unit.select,
            from_=unit.from_,
            where=unit.where,
            group_by=unit.group_by,
            having=unit.having,
            order_by=unit.order_by,
            limit=unit.limit,
        )

    def clear(self, kind: ClauseKind) -> None:
        if kind in (ClauseKind.FROM, ClauseKind.JOIN):
            self.from_ = None
        elif kind is ClauseKind.WHERE:
            self.where = None
        elif kind is ClauseKind.GROUP_BY:
            self.group_by = ()
        elif kind is ClauseKind.HAVING:
            self.having = None
        elif kind is ClauseKind.ORDER_LIMIT:
            self.order_by = ()
            self.limit = None
        elif kind is ClauseKind.SELECT:
            self.select = None

    def has(self, kind: ClauseKind) -> bool:
        if kind in (ClauseKind.FROM, ClauseKind.JOIN):
            return self.from_ is not None
        if kind is ClauseKind.WHERE:
            return self.where is not None
        if kind is ClauseKind.GROUP_BY:
            return bool(self.group_by)
        if kind is ClauseKind.HAVING:
            return self.having is not None
        if kind is ClauseKind.ORDER_LIMIT:
            return bool(self.order_by) or self.limit is not None
        if kind is ClauseKind.SELECT:
            return self.select is not None
        return False

    def set(self, kind: ClauseKind, payload) -> None:
        if kind in (ClauseKind.FROM, ClauseKind.JOIN):
            self.from_ = payload
        elif kind is ClauseKind.WHERE:
            self.where = payload
        elif kind is ClauseKind.GROUP_BY:
            self.group_by = payload
        elif kind is ClauseKind.HAVING:
            self.having = payload
        elif kind is ClauseKind.ORDER_LIMIT:
            self.order_by = payload.order_by
            self.limit = payload.limit
        elif kind is ClauseKind.SELECT:
            self.select = payload

    def conjoin(self, kind: ClauseKind, payload: Predicate) -> None:
        existing = self.where if kind is ClauseKind.WHERE else self.having
        merged = payload if existing is None else BoolOp("and", (existing, payload))
        self.set(kind, merged)

    def build(self, unit_index: int) -> SubqueryUnit:
        if self.select is None:
            raise ConflictError(f"query {unit_index + 1} would have no return step")
        if self.from_ is None or not self.from_.tables:
            raise ConflictError(f"query {unit_index + 1} would have no source table")
        return SubqueryUnit(
            select=self.select,
            from_=self.from_,
            where=self.where,
            group_by=self.group_by,
            having=self.having,
            order_by=self.order_by,
            limit=self.limit,
        )


_FROM_FAMILY = (ClauseKind.FROM, ClauseKind.JOIN)


def _same_family(a: ClauseKind, b: ClauseKind) -> bool:
    if a in _FROM_FAMILY and b in _FROM_FAMILY:
        return True
    return a is b


def _edit_sort_key(edit_and_kind):
    """Deterministic application order within a batch.

    Per unit: source-table (from/join) edits land first so other clauses
    are interpreted in the new scope; then deletes, updates, adds.  Adds of
    the same kind are ordered by text, so permuting a batch cannot change
    the rebuilt query.
    """
    edit, kind = edit_and_kind
    phase = {"delete": 0, "update": 1, "add": 2}[edit.kind]
    family_first = 0 if kind in _FROM_FAMILY else 1
    return (edit.unit_index, family_first, phase, kind.value, edit.new_text or "")


def apply_edits(
    plan: ExplanationPlan,
    edits: tuple[EditOp, ...] | list[EditOp],
    schema: Schema,
    backend: ClauseBackend | None = None,
) -> tuple[QueryAst, ExplanationPlan]:
    """Apply a batch of step edits atomically.

    Returns the rebuilt query and its regenerated explanation with edited
    steps marked.  Raises :class:`UnparsableStep` or :class:`ConflictError`
    (leaving the plan untouched) when any edit cannot land.
    """
    ast = plan.source_ast
    if not edits:
        return ast, plan

    drafts = {i: _UnitDraft.from_unit(unit) for i, unit in enumerate(ast.units)}
    links = list(ast.set_ops)
    provenance: list[tuple[int, ClauseKind, str, str | None]] = []

    # Resolve every edit's target step up front so position errors surface
    # before anything is interpreted.
    resolved: list[tuple[EditOp, ClauseKind]] = []
    for edit in edits:
        if edit.unit_index < 0 or edit.unit_index >= len(ast.units):
            raise ConflictError(f"no query numbered {edit.unit_index + 1}")
        if edit.kind in ("update", "delete"):
            block = next(b for b in plan.blocks if b.unit_index == edit.unit_index)
            matching = [s for s in block.steps if s.step_index == edit.step_index]
            if not matching:
                raise ConflictError(
                    f"query {edit.unit_index + 1} has no step {edit.step_index}"
                )
            resolved.append((edit, matching[0].clause_kind))
        else:
            text = " ".join((edit.new_text or "").split())
            resolved.append((edit, classify_step(text)))

    for edit, target_kind in sorted(resolved, key=_edit_sort_key):
        draft = drafts[edit.unit_index]
        if edit.kind == "delete":
            if target_kind is ClauseKind.SET_OP:
                raise ConflictError(
                    "the combine step links two queries and cannot be deleted"
                )
            draft.clear(target_kind)
            continue

        scope = draft.from_.tables if draft.from_ is not None else None
        original_from = draft.from_ if target_kind in _FROM_FAMILY else None
        if edit.kind == "update":
            # Template sentences declare their own kind, so a well-formed
            # sentence of the wrong kind must surface as a conflict below, not
            # as a parse failure inside the edited step's template.  Free-form
            # text falls through to the backend with the edited step's kind.
            try:
                parsed = parse_step(
                    edit.new_text or "",
                    schema,
                    scope=scope,
                    original_from=original_from,
                )
            except UnparsableStep:
                parsed = parse_step(
                    edit.new_text or "",
                    schema,
                    kind_hint=target_kind,
                    backend=backend,
                    scope=scope,
                    original_from=original_from,
                )
        else:
            parsed = parse_step(
                edit.new_text or "",
                schema,
                backend=backend,
                scope=scope,
                original_from=original_from,
            )

        if parsed.kind is ClauseKind.SET_OP:
            if edit.kind != "update" or target_kind is not ClauseKind.SET_OP:
                raise ConflictError("combine steps can only be updated, not added")
            links[edit.unit_index - 1] = parsed.payload
            provenance.append(
                (edit.unit_index, ClauseKind.SET_OP, "user_edited", edit.new_text)
            )
            continue
        if target_kind is ClauseKind.SET_OP:
            raise ConflictError("a combine step can only be replaced by another combine step")

        if edit.kind == "update":
            if not _same_family(parsed.kind, target_kind):
                raise ConflictError(
                    f"the new sentence describes a {parsed.kind.value} step, "
                    f"but the edited step is a {target_kind.value} step"
                )
            draft.clear(target_kind)
            draft.set(parsed.kind, parsed.payload)
        else:  # add
            if parsed.kind in (ClauseKind.WHERE, ClauseKind.HAVING):
                draft.conjoin(parsed.kind, parsed.payload)
            elif draft.has(parsed.kind):
                raise ConflictError(
                    f"query {edit.unit_index + 1} already has a {parsed.kind.value} step; "
                    "edit that step instead"
                )
            else:
                draft.set(parsed.kind, parsed.payload)
        origin = "user_edited" if edit.kind == "update" else "user_added"
        effective = parsed.kind
        if effective in _FROM_FAMILY:
            effective = (
                ClauseKind.JOIN if len(parsed.payload.tables) > 1 else ClauseKind.FROM
            )
        provenance.append((edit.unit_index, effective, origin, edit.new_text))

    new_units = tuple(drafts[i].build(i) for i in range(len(ast.units)))
    new_ast = QueryAst(new_units, tuple(links))
    problems = validate(new_ast, schema)
    if problems:
        raise ConflictError(
            "the edited query is not valid: " + "; ".join(d.message for d in problems),
            diagnostics=tuple(problems),
        )

    new_plan = explain(new_ast, schema)
    for unit_index, kind, origin, text in provenance:
        if new_plan.step_of_kind(unit_index, kind) is not None:
            new_plan = mark_step(new_plan, unit_index, kind, origin, text)
    return new_ast, new_plan


# --- undo / redo ------------------------------------------------------------------


@dataclass(frozen=True)
class Snapshot:
    ast: QueryAst
    plan: ExplanationPlan


class History:
    """Linear edit history: undo steps back, a new edit discards the redo tail."""

    def __init__(self, initial: Snapshot):
        self._snapshots: list[Snapshot] = [initial]
        self._cursor = 0

    @property
    def current(self) -> Snapshot:
        return self._snapshots[self._cursor]

    @property
    def can_undo(self) -> bool:
        return self._cursor > 0

    @property
    def can_redo(self) -> bool:
        return self._cursor < len(self._snapshots) - 1

    def push(self, snapshot: Snapshot) -> None:
        del self._snapshots[self._cursor + 1 :]
        self._snapshots.append(snapshot)
        self._cursor += 1

    def undo(self) -> Snapshot:
        if not self.can_undo:
            raise NothingToUndo("already at the original query")
        self._cursor -= 1
        return self.current

    def redo(self) -> Snapshot:
        if not self.can_redo:
            raise NothingToRedo("no undone edit to restore")
        self._cursor += 1
        return self.current

    def __len__(self) -> int:
        return len(self._snapshots)
