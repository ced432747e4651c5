"""SQL subset: syntax tree, parser, printer, and structural analysis."""
from .analysis import (
    Diagnostic,
    clause_kinds,
    decompose,
    iter_atoms,
    main_unit_indices,
    referenced_units,
    resolve,
    subquery_refs,
    unit_subquery_refs,
    validate,
)
from .errors import ParseError, ResolveError
from .nodes import (
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
    InvalidAstError,
    JoinCondition,
    Like,
    Literal,
    Not,
    OrderItem,
    Predicate,
    Projection,
    QueryAst,
    SelectClause,
    SetOperator,
    Star,
    SubqueryRef,
    SubqueryUnit,
)
from .parser import parse_sql
from .printer import normalize_sql, print_literal, print_sql

__all__ = [
    "AggFn",
    "Aggregate",
    "Between",
    "BoolOp",
    "ClauseKind",
    "ClauseRef",
    "ColumnRef",
    "Comparison",
    "Diagnostic",
    "FromClause",
    "InSubquery",
    "InvalidAstError",
    "JoinCondition",
    "Like",
    "Literal",
    "Not",
    "OrderItem",
    "ParseError",
    "Predicate",
    "Projection",
    "QueryAst",
    "ResolveError",
    "SelectClause",
    "SetOperator",
    "Star",
    "SubqueryRef",
    "SubqueryUnit",
    "clause_kinds",
    "decompose",
    "iter_atoms",
    "main_unit_indices",
    "normalize_sql",
    "parse_sql",
    "print_literal",
    "print_sql",
    "referenced_units",
    "resolve",
    "subquery_refs",
    "unit_subquery_refs",
    "validate",
]
