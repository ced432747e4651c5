import random

import pytest

from sqlucid.sqlcore import (
    AggFn,
    Aggregate,
    Between,
    BoolOp,
    ColumnRef,
    Comparison,
    FromClause,
    InSubquery,
    InvalidAstError,
    JoinCondition,
    Like,
    Literal,
    Not,
    OrderItem,
    ParseError,
    Projection,
    QueryAst,
    ResolveError,
    SelectClause,
    SetOperator,
    Star,
    SubqueryRef,
    SubqueryUnit,
    normalize_sql,
    parse_sql,
    print_sql,
)

PROPERTY_CASES = 300


# --- targeted parses ---------------------------------------------------------


def test_simple_select_star():
    ast = parse_sql("SELECT * FROM flight")
    unit = ast.units[0]
    assert unit.from_.tables == ("flight",)
    assert isinstance(unit.select.projections[0].expr, Star)


def test_aliases_are_rewritten_away():
    ast = parse_sql(
        "SELECT T1.name FROM teacher AS T1 JOIN course_arrange AS T2 ON T1.teacher_id = T2.teacher_id"
    )
    unit = ast.units[0]
    assert unit.from_.tables == ("teacher", "course_arrange")
    assert unit.select.projections[0].expr == ColumnRef("name", "teacher")
    join = unit.from_.joins[0]
    assert join.left.table == "teacher" and join.right.table == "course_arrange"


def test_join_condition_oriented_by_from_order():
    ast = parse_sql(
        "SELECT * FROM a JOIN b ON b.x = a.y"
    )
    join = ast.units[0].from_.joins[0]
    assert (join.left.table, join.left.column) == ("a", "y")
    assert (join.right.table, join.right.column) == ("b", "x")


def test_diamond_operator_canonicalized():
    ast = parse_sql("SELECT * FROM t WHERE t.a <> 1")
    assert ast.units[0].where == Comparison("!=", ColumnRef("a", "t"), Literal(1))


def test_not_between_like_in_sugar():
    ast = parse_sql(
        'SELECT * FROM t WHERE t.a NOT BETWEEN 1 AND 5 AND t.b NOT LIKE "%x%"'
    )
    where = ast.units[0].where
    assert isinstance(where, BoolOp) and where.op == "and"
    assert where.operands[0] == Not(Between(ColumnRef("a", "t"), Literal(1), Literal(5)))
    assert where.operands[1] == Not(Like(ColumnRef("b", "t"), Literal("%x%")))


def test_not_comparison_becomes_complement():
    ast = parse_sql("SELECT * FROM t WHERE NOT t.a = 1")
    assert ast.units[0].where == Comparison("!=", ColumnRef("a", "t"), Literal(1))


def test_and_binds_tighter_than_or_in_sql():
    ast = parse_sql("SELECT * FROM t WHERE t.a = 1 OR t.b = 2 AND t.c = 3")
    where = ast.units[0].where
    assert isinstance(where, BoolOp) and where.op == "or"
    assert isinstance(where.operands[1], BoolOp) and where.operands[1].op == "and"


def test_string_escapes_round_trip():
    ast = parse_sql("SELECT * FROM t WHERE t.a = 'it''s'")
    assert ast.units[0].where.rhs == Literal("it's")
    printed = print_sql(ast)
    assert '"it\'s"' in printed
    assert parse_sql(printed).units[0].where.rhs == Literal("it's")

    ast = parse_sql('SELECT * FROM t WHERE t.a = "he said ""hi"""')
    assert ast.units[0].where.rhs == Literal('he said "hi"')
    assert parse_sql(print_sql(ast)) == ast


def test_subquery_lifting_orders_inner_first():
    ast = parse_sql(
        "SELECT t.a FROM t WHERE t.b IN (SELECT u.b FROM u WHERE u.c = 1)"
    )
    assert len(ast.units) == 2
    assert ast.set_ops == (None,)
    inner, outer = ast.units
    assert inner.from_.tables == ("u",)
    assert isinstance(outer.where, InSubquery)
    assert outer.where.subquery == SubqueryRef(0)


def test_nested_subqueries_lift_depth_first():
    ast = parse_sql(
        "SELECT t.a FROM t WHERE t.b = "
        "(SELECT u.b FROM u WHERE u.c IN (SELECT v.c FROM v))"
    )
    assert len(ast.units) == 3
    assert [u.from_.tables[0] for u in ast.units] == ["v", "u", "t"]
    middle = ast.units[1]
    assert middle.where.subquery == SubqueryRef(0)
    assert ast.units[2].where.rhs == SubqueryRef(1)


def test_set_operation_chain():
    ast = parse_sql("SELECT t.a FROM t UNION SELECT u.a FROM u INTERSECT SELECT v.a FROM v")
    assert len(ast.units) == 3
    assert ast.set_ops == (SetOperator.UNION, SetOperator.INTERSECT)


def test_set_operation_inside_subquery_rejected():
    with pytest.raises(ParseError):
        parse_sql("SELECT t.a FROM t WHERE t.b IN (SELECT u.b FROM u UNION SELECT v.b FROM v)")


def test_limit_requires_nonnegative_integer():
    assert parse_sql("SELECT * FROM t LIMIT 0").units[0].limit == 0
    with pytest.raises(ParseError):
        parse_sql("SELECT * FROM t LIMIT -1")
    with pytest.raises(ParseError):
        parse_sql("SELECT * FROM t LIMIT 1.5")


def test_parse_error_reports_position_and_expectation():
    with pytest.raises(ParseError) as exc_info:
        parse_sql("SELECT FROM t")
    assert exc_info.value.position >= 0
    assert exc_info.value.expected


def test_resolve_error_for_unknown_names(schemas):
    schema = schemas["travel_mobility"]
    with pytest.raises(ResolveError):
        parse_sql("SELECT flight.nope FROM flight", schema)
    with pytest.raises(ResolveError):
        parse_sql("SELECT * FROM no_such_table", schema)


def test_bare_columns_resolve_in_scope_order(schemas):
    schema = schemas["travel_mobility"]
    ast = parse_sql("SELECT id FROM flight JOIN travel ON flight.travel_id = travel.id", schema)
    # both tables have an "id"; the first FROM table wins
    assert ast.units[0].select.projections[0].expr == ColumnRef("id", "flight")


def test_rejects_ddl_and_dml():
    for sql in (
        "DROP TABLE t",
        "DELETE FROM t",
        "INSERT INTO t VALUES (1)",
        "UPDATE t SET a = 1",
        "CREATE TABLE t (a int)",
    ):
        with pytest.raises(ParseError):
            parse_sql(sql)


# --- canonical printing -------------------------------------------------------


def test_printer_uppercases_keywords_and_qualifies_columns(schemas):
    schema = schemas["travel_mobility"]
    ast = parse_sql("select month from flight where price > 100", schema)
    assert print_sql(ast) == 'SELECT flight.month FROM flight WHERE flight.price > 100'


def test_printer_parenthesizes_or_under_and():
    ast = parse_sql("SELECT * FROM t WHERE (t.a = 1 OR t.b = 2) AND t.c = 3")
    printed = print_sql(ast)
    assert "(t.a = 1 OR t.b = 2) AND t.c = 3" in printed
    assert parse_sql(printed) == ast


def test_printer_rejects_unlinkable_join():
    bad = QueryAst(
        (
            SubqueryUnit(
                select=SelectClause((Projection(Star()),)),
                from_=FromClause(
                    ("a", "b"),
                    (JoinCondition(ColumnRef("x", "c"), ColumnRef("y", "d")),),
                ),
            ),
        )
    )
    with pytest.raises(InvalidAstError):
        print_sql(bad)


def test_normalize_sql_is_case_and_space_insensitive():
    assert normalize_sql("select  A.b from T") == normalize_sql("SELECT a.B FROM t")
    assert normalize_sql("SELECT 'x' FROM t") == normalize_sql('SELECT "x" FROM t')


# --- seeded random round-trip property -----------------------------------------

FLIGHT_COLUMNS = {
    "id": "integer",
    "travel_id": "integer",
    "month": "text",
    "year": "integer",
    "price": "real",
}
TRAVEL_COLUMNS = {
    "id": "integer",
    "destination": "text",
    "airport_code": "text",
    "airport_name": "text",
}
WORDS = ("January", "Paris", "Honolulu", "LAX", "it's", 'say "hi"', "a_b c")


def random_literal(rng, affinity):
    if affinity == "text":
        return Literal(rng.choice(WORDS))
    if affinity == "real" and rng.random() < 0.5:
        return Literal(round(rng.uniform(0, 500), 2))
    return Literal(rng.randrange(0, 3000))


def random_atom(rng, columns_by_table):
    table = rng.choice(sorted(columns_by_table))
    column, affinity = rng.choice(sorted(columns_by_table[table].items()))
    ref = ColumnRef(column, table)
    roll = rng.random()
    if affinity == "text" and roll < 0.2:
        return Like(ref, Literal("%" + rng.choice(WORDS) + "%"))
    if affinity != "text" and roll < 0.3:
        low = random_literal(rng, affinity)
        high = random_literal(rng, affinity)
        return Between(ref, low, high)
    op = rng.choice(("=", "!=", "<", "<=", ">", ">="))
    atom = Comparison(op, ref, random_literal(rng, affinity))
    if rng.random() < 0.15:
        return Not(Between(ref, random_literal(rng, affinity), random_literal(rng, affinity)))
    return atom


def random_predicate(rng, columns_by_table, depth=0):
    if depth >= 2 or rng.random() < 0.4:
        return random_atom(rng, columns_by_table)
    op = rng.choice(("and", "or"))
    count = rng.choice((2, 2, 3))
    operands = []
    for _ in range(count):
        child = random_predicate(rng, columns_by_table, depth + 1)
        # same-op nesting flattens on construction; regenerate atoms instead
        if isinstance(child, BoolOp) and child.op == op:
            child = random_atom(rng, columns_by_table)
        operands.append(child)
    return BoolOp(op, tuple(operands))


def random_unit(rng):
    use_join = rng.random() < 0.4
    if use_join:
        tables = ("flight", "travel")
        joins = (JoinCondition(ColumnRef("travel_id", "flight"), ColumnRef("id", "travel")),)
        columns_by_table = {"flight": FLIGHT_COLUMNS, "travel": TRAVEL_COLUMNS}
    else:
        table = rng.choice(("flight", "travel"))
        tables = (table,)
        joins = ()
        columns_by_table = {
            table: FLIGHT_COLUMNS if table == "flight" else TRAVEL_COLUMNS
        }
    from_ = FromClause(tables, joins)

    where = random_predicate(rng, columns_by_table) if rng.random() < 0.8 else None

    group_by = ()
    having = None
    if rng.random() < 0.4:
        table = rng.choice(sorted(columns_by_table))
        column = rng.choice(sorted(columns_by_table[table]))
        group_by = (ColumnRef(column, table),)
        if rng.random() < 0.5:
            having = Comparison(
                rng.choice(("<", ">", ">=")),
                Aggregate(AggFn.COUNT, Star()),
                Literal(rng.randrange(1, 300)),
            )

    if group_by:
        projections = [Projection(c) for c in group_by]
        if rng.random() < 0.6:
            projections.append(Projection(Aggregate(AggFn.COUNT, Star())))
        select = SelectClause(tuple(projections))
    elif rng.random() < 0.25:
        table = rng.choice(sorted(columns_by_table))
        column, affinity = rng.choice(sorted(columns_by_table[table].items()))
        fn = rng.choice((AggFn.MIN, AggFn.MAX, AggFn.SUM, AggFn.AVG, AggFn.COUNT))
        select = SelectClause((Projection(Aggregate(fn, ColumnRef(column, table), rng.random() < 0.3)),))
    elif rng.random() < 0.3:
        select = SelectClause((Projection(Star()),))
    else:
        table = rng.choice(sorted(columns_by_table))
        names = sorted(columns_by_table[table])
        rng.shuffle(names)
        chosen = names[: rng.randrange(1, 3)]
        select = SelectClause(
            tuple(Projection(ColumnRef(c, table)) for c in chosen),
            distinct=rng.random() < 0.3,
        )

    order_by = ()
    limit = None
    if rng.random() < 0.4:
        if group_by and rng.random() < 0.5:
            key = Aggregate(AggFn.COUNT, Star())
        else:
            table = rng.choice(sorted(columns_by_table))
            key = ColumnRef(rng.choice(sorted(columns_by_table[table])), table)
        order_by = (OrderItem(key, descending=rng.random() < 0.5),)
        if rng.random() < 0.6:
            limit = rng.randrange(0, 10)

    return SubqueryUnit(
        select=select,
        from_=from_,
        where=where,
        group_by=group_by,
        having=having,
        order_by=order_by,
        limit=limit,
    )


def random_query(rng):
    roll = rng.random()
    if roll < 0.2:
        # a set-operation chain needs matching projection arity; use one column
        left = random_unit(rng)
        right = random_unit(rng)
        column_left = ColumnRef("month", "flight") if left.from_.tables[0] == "flight" else ColumnRef("destination", "travel")
        column_right = ColumnRef("month", "flight") if right.from_.tables[0] == "flight" else ColumnRef("destination", "travel")
        left = SubqueryUnit(
            select=SelectClause((Projection(column_left),)),
            from_=FromClause((left.from_.tables[0],)),
            where=None if left.from_.tables[0] not in {t for t in left.from_.tables} else left.where,
        )
        right = SubqueryUnit(
            select=SelectClause((Projection(column_right),)),
            from_=FromClause((right.from_.tables[0],)),
            where=right.where if len(right.from_.tables) == 1 else None,
        )
        op = rng.choice(tuple(SetOperator))
        return QueryAst((left, right), (op,))
    if roll < 0.4:
        # inner unit feeding the outer through a subquery comparison
        inner_table = rng.choice(("flight", "travel"))
        inner_columns = FLIGHT_COLUMNS if inner_table == "flight" else TRAVEL_COLUMNS
        inner_column = rng.choice(sorted(inner_columns))
        inner = SubqueryUnit(
            select=SelectClause((Projection(ColumnRef(inner_column, inner_table)),)),
            from_=FromClause((inner_table,)),
            limit=1 if rng.random() < 0.5 else None,
        )
        outer = random_unit(rng)
        outer_table = outer.from_.tables[0]
        outer_columns = FLIGHT_COLUMNS if outer_table == "flight" else TRAVEL_COLUMNS
        lhs = ColumnRef(rng.choice(sorted(outer_columns)), outer_table)
        link = (
            InSubquery(lhs, SubqueryRef(0))
            if rng.random() < 0.5
            else Comparison(rng.choice(("=", "<", ">")), lhs, SubqueryRef(0))
        )
        where = link if outer.where is None else BoolOp("and", (link, outer.where))
        outer = SubqueryUnit(
            select=outer.select,
            from_=outer.from_,
            where=where,
            group_by=outer.group_by,
            having=outer.having,
            order_by=outer.order_by,
            limit=outer.limit,
        )
        return QueryAst((inner, outer), (None,))
    return QueryAst((random_unit(rng),))


def test_print_parse_round_trip_property():
    rng = random.Random(20240817)
    for case in range(PROPERTY_CASES):
        ast = random_query(rng)
        printed = print_sql(ast)
        reparsed = parse_sql(printed)
        assert reparsed == ast, f"case {case}: {printed}"
        assert print_sql(reparsed) == printed, f"case {case}: {printed}"


def test_parse_is_idempotent_on_canonical_text_property():
    rng = random.Random(99)
    for _ in range(100):
        printed = print_sql(random_query(rng))
        assert normalize_sql(printed) == normalize_sql(print_sql(parse_sql(printed)))
