"""Pluggable question-to-SQL generators.

The engine never trusts a generator: whatever SQL comes back is parsed,
resolved against the live schema, and validated before an explanation is
built from it.  Offline work uses the canned generator over the bundled
demo questions; deployments point :class:`HttpNlqProvider` at a real model.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .fixtures import error_question_map, question_map
from .schema import Schema
from .sqlcore import ParseError, QueryAst, ResolveError, parse_sql, print_sql, validate


class NlqError(RuntimeError):
    """The generator failed or returned SQL the engine cannot ground."""

    def __init__(self, message: str, raw_sql: str | None = None):
        super().__init__(message)
        self.raw_sql = raw_sql


@dataclass(frozen=True)
class NlqRequest:
    question: str
    database_id: str
    schema_summary: dict


class NlqProvider(Protocol):
    """Turns a question into raw SQL text."""

    def translate(self, request: NlqRequest) -> str:
        ...


def _normalize_question(question: str) -> str:
    return " ".join(question.lower().split()).rstrip("?").strip()


class CannedNlqProvider:
    """Answers the bundled demo questions from a fixed lookup table.

    With ``with_mistakes=True`` some answers carry a realistic slip (a wrong
    comparison, a missing filter) so the repair workflow can be exercised
    end to end without a live model.
    """

    def __init__(self, with_mistakes: bool = False):
        source = error_question_map() if with_mistakes else question_map()
        self._by_question = {
            _normalize_question(question): (database, sql)
            for question, (database, sql) in source.items()
        }

    def translate(self, request: NlqRequest) -> str:
        entry = self._by_question.get(_normalize_question(request.question))
        if entry is None:
            raise NlqError(f"the canned generator does not know {request.question!r}")
        database, sql = entry
        if database != request.database_id:
            raise NlqError(
                f"that question belongs to database {database!r}, "
                f"not {request.database_id!r}"
            )
        return sql


class HttpNlqProvider:
    """Delegates question translation to an external HTTP service."""

    def __init__(self, url: str, timeout_s: float = 30.0):
        self.url = url
        self.timeout_s = timeout_s

    def translate(self, request: NlqRequest) -> str:
        import httpx

        payload = {
            "question": request.question,
            "database_id": request.database_id,
            "schema": request.schema_summary,
        }
        try:
            response = httpx.post(self.url, json=payload, timeout=self.timeout_s)
            response.raise_for_status()
            data = response.json()
        except Exception as err:  # noqa: BLE001 - network failures become NlqError
            raise NlqError(f"translation service failed: {err}") from err
        sql = data.get("sql")
        if not isinstance(sql, str) or not sql.strip():
            raise NlqError("translation service returned no SQL")
        return sql


def generate_sql(
    provider: NlqProvider, question: str, database_id: str, schema: Schema
) -> tuple[QueryAst, str]:
    """Ask the provider for SQL and ground it against the schema.

    Returns the resolved query and its canonical text.  Raises
    :class:`NlqError` when the provider's output does not parse, does not
    resolve, or breaks a dialect rule.
    """
    request = NlqRequest(question, database_id, schema.to_summary())
    raw = provider.translate(request)
    try:
        ast = parse_sql(raw, schema)
    except (ParseError, ResolveError) as err:
        raise NlqError(f"generated SQL could not be grounded: {err}", raw_sql=raw) from err
    problems = validate(ast, schema)
    if problems:
        raise NlqError(
            "generated SQL breaks dialect rules: " + "; ".join(d.message for d in problems),
            raw_sql=raw,
        )
    return ast, print_sql(ast)
