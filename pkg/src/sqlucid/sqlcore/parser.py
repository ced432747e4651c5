"""Recursive-descent parser producing :class:`QueryAst` values.

Nested subqueries are lifted out of predicates into their own units, ordered
before the units that reference them, so every query becomes a flat list of
single-SELECT units.  Table aliases (``AS T1``) are substituted away during
parsing; the tree only ever holds real table names.
"""
from __future__ import annotations

from .errors import ParseError
from .lexer import EOF, IDENT, NUMBER, STRING, SYMBOL, Token, lex
from .nodes import (
    AggFn,
    Aggregate,
    Between,
    BoolOp,
    ColumnRef,
    Comparison,
    FromClause,
    InSubquery,
    JoinCondition,
    Like,
    Literal,
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
from ..schema import normalize_name

_AGG_NAMES = {fn.value.upper(): fn for fn in AggFn}

_COMPARE_SYMBOLS = ("=", "!=", "<", "<=", ">", ">=")


def _negate(pred: Predicate) -> Predicate:
    from .nodes import COMPLEMENT_OP

    if isinstance(pred, Comparison):
        return Comparison(COMPLEMENT_OP[pred.op], pred.lhs, pred.rhs)
    if isinstance(pred, Not):
        return pred.operand
    return Not(pred)


class _Parser:
    def __init__(self, tokens: list[Token], text: str):
        self.tokens = tokens
        self.i = 0
        self.text = text
        self.lifted: list[SubqueryUnit] = []

    # --- token plumbing -------------------------------------------------
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.i]
        if token.kind != EOF:
            self.i += 1
        return token

    def error(self, expected: str) -> ParseError:
        token = self.peek()
        found = token.text or "end of input"
        return ParseError(f"unexpected {found!r}", position=token.pos, expected=expected)

    def at_keyword(self, word: str) -> bool:
        token = self.peek()
        return token.kind == IDENT and token.text.upper() == word

    def take_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> None:
        if not self.take_keyword(word):
            raise self.error(word)

    def at_symbol(self, sym: str) -> bool:
        token = self.peek()
        return token.kind == SYMBOL and token.text == sym

    def take_symbol(self, sym: str) -> bool:
        if self.at_symbol(sym):
            self.advance()
            return True
        return False

    def expect_symbol(self, sym: str) -> None:
        if not self.take_symbol(sym):
            raise self.error(sym)

    def ident(self, what: str) -> str:
        token = self.peek()
        if token.kind != IDENT:
            raise self.error(what)
        self.advance()
        return token.text

    # --- grammar --------------------------------------------------------
    def parse_query(self) -> QueryAst:
        members = [self.parse_unit()]
        ops = []
        while (op := self.parse_set_operator()) is not None:
            ops.append(op)
            members.append(self.parse_unit())
        self.take_symbol(";")
        if self.peek().kind != EOF:
            raise self.error("end of query")
        units = tuple(self.lifted) + tuple(members)
        set_ops = tuple([None] * len(self.lifted)) + tuple(ops)
        return QueryAst(units, set_ops)

    def parse_set_operator(self):
        from .nodes import SetOperator

        if self.take_keyword("UNION"):
            return SetOperator.UNION_ALL if self.take_keyword("ALL") else SetOperator.UNION
        if self.take_keyword("INTERSECT"):
            return SetOperator.INTERSECT
        if self.take_keyword("EXCEPT"):
            return SetOperator.EXCEPT
        return None

    def parse_unit(self) -> SubqueryUnit:
        self.expect_keyword("SELECT")
        distinct = self.take_keyword("DISTINCT")
        projections = [self.parse_projection()]
        while self.take_symbol(","):
            projections.append(self.parse_projection())
        self.expect_keyword("FROM")
        tables, aliases, joins = self.parse_from()

        where = None
        if self.take_keyword("WHERE"):
            where = self.parse_predicate()
        group_by: list[ColumnRef] = []
        if self.take_keyword("GROUP"):
            self.expect_keyword("BY")
            group_by.append(self.parse_column_ref())
            while self.take_symbol(","):
                group_by.append(self.parse_column_ref())
        having = None
        if self.take_keyword("HAVING"):
            having = self.parse_predicate()
        order_by: list[OrderItem] = []
        if self.take_keyword("ORDER"):
            self.expect_keyword("BY")
            order_by.append(self.parse_order_item())
            while self.take_symbol(","):
                order_by.append(self.parse_order_item())
        limit = None
        if self.take_keyword("LIMIT"):
            token = self.peek()
            if token.kind != NUMBER or not isinstance(token.value, int):
                raise self.error("an integer")
            self.advance()
            limit = token.value

        unit = SubqueryUnit(
            select=SelectClause(tuple(projections), distinct),
            from_=FromClause(tuple(tables), tuple(joins)),
            where=where,
            group_by=tuple(group_by),
            having=having,
            order_by=tuple(order_by),
            limit=limit,
        )
        return _rewrite_unit_aliases(unit, aliases)

    def parse_from(self) -> tuple[list[str], dict[str, str], list[JoinCondition]]:
        tables: list[str] = []
        aliases: dict[str, str] = {}
        joins: list[JoinCondition] = []

        def table_item() -> None:
            name = self.ident("a table name")
            if self.take_keyword("AS"):
                alias = self.ident("an alias")
                aliases[normalize_name(alias)] = name
            tables.append(name)

        table_item()
        while True:
            if self.take_keyword("JOIN"):
                table_item()
                self.expect_keyword("ON")
                left = self.parse_column_ref()
                self.expect_symbol("=")
                right = self.parse_column_ref()
                joins.append(JoinCondition(left, right))
            elif self.take_symbol(","):
                table_item()
            else:
                break
        return tables, aliases, joins

    def parse_projection(self) -> Projection:
        if self.take_symbol("*"):
            return Projection(Star())
        expr = self.parse_value_expr()
        alias = None
        if self.take_keyword("AS"):
            alias = self.ident("an alias")
        return Projection(expr, alias)

    def parse_value_expr(self) -> ColumnRef | Aggregate:
        token = self.peek()
        if token.kind == IDENT and token.text.upper() in _AGG_NAMES and self.peek(1).text == "(":
            return self.parse_aggregate()
        return self.parse_column_ref()

    def parse_aggregate(self) -> Aggregate:
        fn = _AGG_NAMES[self.advance().text.upper()]
        self.expect_symbol("(")
        if self.take_symbol("*"):
            arg: ColumnRef | Star = Star()
            distinct = False
        else:
            distinct = self.take_keyword("DISTINCT")
            arg = self.parse_column_ref()
        self.expect_symbol(")")
        return Aggregate(fn, arg, distinct)

    def parse_column_ref(self) -> ColumnRef:
        first = self.ident("a column name")
        if self.take_symbol("."):
            return ColumnRef(column=self.ident("a column name"), table=first)
        return ColumnRef(column=first)

    def parse_order_item(self) -> OrderItem:
        expr = self.parse_value_expr()
        if self.take_keyword("DESC"):
            return OrderItem(expr, descending=True)
        self.take_keyword("ASC")
        return OrderItem(expr, descending=False)

    # --- predicates -----------------------------------------------------
    def parse_predicate(self) -> Predicate:
        operands = [self.parse_conjunction()]
        while self.take_keyword("OR"):
            operands.append(self.parse_conjunction())
        return operands[0] if len(operands) == 1 else BoolOp("or", tuple(operands))

    def parse_conjunction(self) -> Predicate:
        operands = [self.parse_negation()]
        while self.take_keyword("AND"):
            operands.append(self.parse_negation())
        return operands[0] if len(operands) == 1 else BoolOp("and", tuple(operands))

    def parse_negation(self) -> Predicate:
        if self.take_keyword("NOT"):
            return _negate(self.parse_negation())
        if self.at_symbol("("):
            self.advance()
            pred = self.parse_predicate()
            self.expect_symbol(")")
            return pred
        return self.parse_atom()

    def parse_atom(self) -> Predicate:
        lhs = self.parse_value_expr()
        if self.take_keyword("NOT"):
            for keyword in ("BETWEEN", "LIKE", "IN"):
                if self.at_keyword(keyword):
                    return _negate(self.parse_atom_tail(lhs))
            raise self.error("BETWEEN, LIKE, or IN")
        return self.parse_atom_tail(lhs)

    def parse_atom_tail(self, lhs: ColumnRef | Aggregate) -> Predicate:
        token = self.peek()
        if token.kind == SYMBOL and token.text in _COMPARE_SYMBOLS:
            self.advance()
            return Comparison(token.text, lhs, self.parse_comparison_rhs())
        if self.take_keyword("BETWEEN"):
            low = self.parse_literal()
            self.expect_keyword("AND")
            return Between(lhs, low, self.parse_literal())
        if self.take_keyword("LIKE"):
            if not isinstance(lhs, ColumnRef):
                raise self.error("a column on the left of LIKE")
            pattern = self.peek()
            if pattern.kind != STRING:
                raise self.error("a string pattern")
            self.advance()
            return Like(lhs, Literal(pattern.value))
        if self.take_keyword("IN"):
            if not isinstance(lhs, ColumnRef):
                raise self.error("a column on the left of IN")
            return InSubquery(lhs, self.parse_subquery_ref())
        raise self.error("a comparison, BETWEEN, LIKE, or IN")

    def parse_comparison_rhs(self) -> Literal | ColumnRef | SubqueryRef:
        token = self.peek()
        if token.kind in (STRING, NUMBER) or self.at_symbol("-"):
            return self.parse_literal()
        if self.at_symbol("("):
            return self.parse_subquery_ref()
        if token.kind == IDENT and not self.at_keyword("SELECT"):
            return self.parse_column_ref()
        raise self.error("a literal, column, or subquery")

    def parse_literal(self) -> Literal:
        negative = self.take_symbol("-")
        token = self.peek()
        if token.kind == NUMBER:
            self.advance()
            value = -token.value if negative else token.value
            return Literal(value)
        if token.kind == STRING and not negative:
            self.advance()
            return Literal(token.value)
        raise self.error("a literal")

    def parse_subquery_ref(self) -> SubqueryRef:
        self.expect_symbol("(")
        if not self.at_keyword("SELECT"):
            raise self.error("SELECT")
        unit = self.parse_unit()
        for keyword in ("UNION", "INTERSECT", "EXCEPT"):
            if self.at_keyword(keyword):
                raise ParseError(
                    "set operations are not supported inside subqueries",
                    position=self.peek().pos,
                    expected=")",
                )
        self.expect_symbol(")")
        self.lifted.append(unit)
        return SubqueryRef(len(self.lifted) - 1)


def _rewrite_unit_aliases(unit: SubqueryUnit, aliases: dict[str, str]) -> SubqueryUnit:
    """Replace alias table qualifiers with real names; orient join conditions."""

    def fix_col(ref: ColumnRef) -> ColumnRef:
        if ref.table is not None:
            real = aliases.get(normalize_name(ref.table))
            if real is not None:
                return ColumnRef(ref.column, real)
        return ref

    def fix_expr(expr):
        if isinstance(expr, ColumnRef):
            return fix_col(expr)
        if isinstance(expr, Aggregate):
            arg = fix_col(expr.arg) if isinstance(expr.arg, ColumnRef) else expr.arg
            return Aggregate(expr.fn, arg, expr.distinct)
        return expr

    def fix_pred(pred: Predicate) -> Predicate:
        if isinstance(pred, Comparison):
            rhs = fix_col(pred.rhs) if isinstance(pred.rhs, ColumnRef) else pred.rhs
            return Comparison(pred.op, fix_expr(pred.lhs), rhs)
        if isinstance(pred, Between):
            return Between(fix_expr(pred.lhs), pred.low, pred.high)
        if isinstance(pred, Like):
            return Like(fix_col(pred.lhs), pred.pattern)
        if isinstance(pred, InSubquery):
            return InSubquery(fix_col(pred.lhs), pred.subquery)
        if isinstance(pred, Not):
            return Not(fix_pred(pred.operand))
        if isinstance(pred, BoolOp):
            return BoolOp(pred.op, tuple(fix_pred(p) for p in pred.operands))
        raise TypeError(f"unknown predicate {pred!r}")

    table_order = {normalize_name(name): idx for idx, name in enumerate(unit.from_.tables)}

    def orient(cond: JoinCondition) -> JoinCondition:
        left, right = fix_col(cond.left), fix_col(cond.right)
        if left.table is not None and right.table is not None:
            lpos = table_order.get(normalize_name(left.table))
            rpos = table_order.get(normalize_name(right.table))
            if lpos is not None and rpos is not None and lpos > rpos:
                left, right = right, left
        return JoinCondition(left, right)

    return SubqueryUnit(
        select=SelectClause(
            tuple(Projection(fix_expr(p.expr), p.alias) for p in unit.select.projections),
            unit.select.distinct,
        ),
        from_=FromClause(unit.from_.tables, tuple(orient(j) for j in unit.from_.joins)),
        where=fix_pred(unit.where) if unit.where is not None else None,
        group_by=tuple(fix_col(c) for c in unit.group_by),
        having=fix_pred(unit.having) if unit.having is not None else None,
        order_by=tuple(OrderItem(fix_expr(o.expr), o.descending) for o in unit.order_by),
        limit=unit.limit,
    )


def parse_sql(text: str, schema=None) -> QueryAst:
    """Parse ``text``; with a schema, also resolve and canonicalize every name.

    Raises :class:`ParseError` on syntax errors and :class:`ResolveError`
    when a schema is given and a table or column cannot be found.
    """
    from .analysis import resolve
    from .errors import ResolveError

    ast = _Parser(lex(text), text).parse_query()
    if schema is not None:
        ast, diagnostics = resolve(ast, schema)
        for diag in diagnostics:
            if diag.code == "resolve":
                raise ResolveError(diag.message, name=diag.name or "")
    return ast
