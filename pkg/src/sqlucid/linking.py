"""Link explanation phrases to schema entities, tolerating typos.

Matching is Levenshtein-based: ``sim(a, b) = 1 - dist / max(len)`` over
normalized names (lowercase, underscores as spaces), so "airport cod" still
finds ``airport_code`` at similarity 11/12.  Candidate phrases are runs of
one to four words; longer runs are tried first and accepted runs never
overlap.  Ties prefer columns over tables, then shorter names, then schema
declaration order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .explain import (
    ColumnTarget,
    EntitySpan,
    ExplanationPlan,
    ORDINALS,
    SubqueryResultTarget,
    TableTarget,
    Target,
    ValueTarget,
    value_text,
)
from .schema import Schema, normalize_name

DEFAULT_MIN_SIMILARITY = 0.8


def levenshtein(a: str, b: str) -> int:
    """Classic edit distance (insert, delete, substitute), two-row DP."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """Normalized-name similarity in [0, 1]; 1.0 means an exact match."""
    na, nb = normalize_name(a), normalize_name(b)
    if not na and not nb:
        return 1.0
    longest = max(len(na), len(nb))
    return 1.0 - levenshtein(na, nb) / longest


# --- candidate pool ---------------------------------------------------------


@dataclass(frozen=True)
class _Candidate:
    name: str  # display text the entity goes by
    target: Target
    priority: int  # 0 column, 1 table, 2 value — ties prefer lower
    declaration_order: int


def _schema_candidates(schema: Schema) -> list[_Candidate]:
    candidates: list[_Candidate] = []
    order = 0
    for table in schema.tables:
        candidates.append(_Candidate(table.name, TableTarget(table.name), 1, order))
        order += 1
        for column in table.columns:
            candidates.append(
                _Candidate(column.name, ColumnTarget(table.name, column.name), 0, order)
            )
            order += 1
    return candidates


def _plan_value_candidates(plan: ExplanationPlan | None) -> list[_Candidate]:
    if plan is None:
        return []
    candidates: list[_Candidate] = []
    seen: set[tuple] = set()
    order = 0
    for step in plan.steps():
        for span in step.spans:
            if isinstance(span.target, ValueTarget):
                key = (value_text(span.target.value), span.target.column)
                if key not in seen:
                    seen.add(key)
                    candidates.append(_Candidate(key[0], span.target, 2, order))
                    order += 1
    return candidates


# --- tokenization -----------------------------------------------------------

_WORD = re.compile(r"\w+")

# Function words and template scaffolding never begin or end an entity
# phrase, so runs touching them are not candidates.  Words that may appear
# inside an entity name (like "of" in cost_of_treatment) are still allowed
# mid-run because only the run edges are checked.
_EDGE_STOPWORDS = {
    "a",
    "an",
    "and",
    "are",
    "as",
    "at",
    "based",
    "by",
    "column",
    "columns",
    "does",
    "for",
    "group",
    "groups",
    "in",
    "into",
    "is",
    "it",
    "not",
    "of",
    "on",
    "or",
    "queries",
    "query",
    "record",
    "records",
    "result",
    "results",
    "row",
    "rows",
    "table",
    "tables",
    "than",
    "that",
    "the",
    "this",
    "to",
    "where",
    "with",
}

_MAX_RUN_WORDS = 4

_SUBQUERY_PHRASE = re.compile(
    r"the result of (?:the (?P<word>\w+) query|query (?P<number>\d+))", re.IGNORECASE
)


def _word_tokens(text: str) -> list[tuple[int, int, str]]:
    return [(m.start(), m.end(), m.group(0)) for m in _WORD.finditer(text)]


def _ordinal_to_index(word: str) -> int | None:
    word = word.lower()
    return ORDINALS.index(word) if word in ORDINALS else None


# --- the relinker -----------------------------------------------------------


def relink_step(
    text: str,
    schema: Schema,
    plan_context: ExplanationPlan | None = None,
    *,
    min_similarity: float = DEFAULT_MIN_SIMILARITY,
) -> tuple[EntitySpan, ...]:
    """Recompute entity spans for (possibly user-edited) step text."""
    spans: list[EntitySpan] = []
    taken: list[tuple[int, int]] = []

    def overlaps(start: int, end: int) -> bool:
        return any(start < t_end and end > t_start for t_start, t_end in taken)

    # Subquery-result phrases are structural, not fuzzy: match them first.
    block_count = len(plan_context.blocks) if plan_context is not None else len(ORDINALS)
    for match in _SUBQUERY_PHRASE.finditer(text):
        if match.group("word") is not None:
            index = _ordinal_to_index(match.group("word"))
        else:
            index = int(match.group("number")) - 1
        if index is None or not (0 <= index < block_count):
            continue
        spans.append(EntitySpan(match.start(), match.end(), SubqueryResultTarget(index)))
        taken.append((match.start(), match.end()))

    candidates = _schema_candidates(schema) + _plan_value_candidates(plan_context)
    words = _word_tokens(text)

    for run_length in range(_MAX_RUN_WORDS, 0, -1):
        for start_index in range(0, len(words) - run_length + 1):
            first = words[start_index]
            last = words[start_index + run_length - 1]
            if first[2].lower() in _EDGE_STOPWORDS or last[2].lower() in _EDGE_STOPWORDS:
                continue
            start, end = first[0], last[1]
            if overlaps(start, end):
                continue
            phrase = text[start:end]
            best: tuple[float, int, int, int] | None = None
            best_candidate: _Candidate | None = None
            for candidate in candidates:
                score = similarity(phrase, candidate.name)
                if score < min_similarity:
                    continue
                rank = (
                    -score,
                    candidate.priority,
                    len(normalize_name(candidate.name)),
                    candidate.declaration_order,
                )
                if best is None or rank < best:
                    best = rank
                    best_candidate = candidate
            if best_candidate is not None:
                spans.append(EntitySpan(start, end, best_candidate.target))
                taken.append((start, end))

    return tuple(sorted(spans, key=lambda span: span.start))


# --- the per-plan link map --------------------------------------------------


@dataclass(frozen=True)
class HighlightTarget:
    """What the UI should light up for a hovered phrase."""

    kind: str  # "table" | "column" | "subquery_result"
    table: str | None = None
    column: str | None = None
    unit_index: int | None = None

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.table is not None:
            data["table"] = self.table
        if self.column is not None:
            data["column"] = self.column
        if self.unit_index is not None:
            data["unit_index"] = self.unit_index
        return data


class LinkMap:
    """Entity spans for every step of a plan, indexed for hover lookups."""

    def __init__(self, entries: dict[tuple[int, int], tuple[EntitySpan, ...]]):
        self.entries = entries

    def spans_for(self, unit_index: int, step_index: int) -> tuple[EntitySpan, ...]:
        return self.entries.get((unit_index, step_index), ())


def build_links(plan: ExplanationPlan, schema: Schema) -> LinkMap:
    return LinkMap(
        {(step.unit_index, step.step_index): step.spans for step in plan.steps()}
    )


def resolve_hover(
    link_map: LinkMap, unit_index: int, step_index: int, offset: int
) -> HighlightTarget | None:
    """The entity under a character offset, or None over plain words.

    Literal values do not highlight anything: they live in the data, not the
    schema, so hovering them has no anchor to point at.
    """
    for span in link_map.spans_for(unit_index, step_index):
        if span.start <= offset < span.end:
            target = span.target
            if isinstance(target, TableTarget):
                return HighlightTarget(kind="table", table=target.table)
            if isinstance(target, ColumnTarget):
                return HighlightTarget(kind="column", table=target.table, column=target.column)
            if isinstance(target, SubqueryResultTarget):
                return HighlightTarget(kind="subquery_result", unit_index=target.unit_index)
            return None
    return None
