"""Interactive grounding for machine-generated SQL.

Explain a query as editable step-by-step sentences, show the rows each step
produces, link the words in every sentence back to the database entities
they denote, and rebuild valid SQL when the user edits the steps.
"""

__version__ = "0.1.0"

from .explain import ExplanationPlan, ExplanationStep, explain, explanation_digest
from .gateway import ExecLimits, browse, execute_readonly, introspect, open_database
from .linking import build_links, relink_step, resolve_hover, similarity
from .nlq import CannedNlqProvider, HttpNlqProvider, NlqError, generate_sql
from .refine import (
    ClauseParse,
    ConflictError,
    EchoTemplateBackend,
    EditOp,
    History,
    HttpClauseBackend,
    RefusingBackend,
    Snapshot,
    UnparsableStep,
    apply_edits,
    classify_step,
    parse_step,
)
from .schema import Schema
from .sqlcore import QueryAst, parse_sql, print_sql, validate
from .stepwise import PrefixQuery, intermediate_result, prefix_query

__all__ = [
    "__version__",
    "CannedNlqProvider",
    "ClauseParse",
    "ConflictError",
    "EchoTemplateBackend",
    "EditOp",
    "ExecLimits",
    "ExplanationPlan",
    "ExplanationStep",
    "History",
    "HttpClauseBackend",
    "HttpNlqProvider",
    "NlqError",
    "PrefixQuery",
    "QueryAst",
    "RefusingBackend",
    "Schema",
    "Snapshot",
    "UnparsableStep",
    "apply_edits",
    "browse",
    "build_links",
    "classify_step",
    "execute_readonly",
    "explain",
    "explanation_digest",
    "generate_sql",
    "intermediate_result",
    "introspect",
    "open_database",
    "parse_sql",
    "parse_step",
    "prefix_query",
    "print_sql",
    "relink_step",
    "resolve_hover",
    "similarity",
    "validate",
]
