"""Tokenizer for the SQL subset.

Keywords are not distinguished here: they come out as IDENT tokens and the
parser matches them case-insensitively, so column names that collide with
keyword spellings still lex cleanly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

IDENT = "ident"
NUMBER = "number"
STRING = "string"
SYMBOL = "symbol"
EOF = "eof"

# Longest symbols first so "<=" wins over "<".
_SYMBOLS = ("<=", ">=", "!=", "<>", "(", ")", ",", ".", "*", "=", "<", ">", "-", ";")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    value: str | int | float | None
    pos: int


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def lex(text: str) -> list[Token]:
    """Split ``text`` into tokens; raises :class:`ParseError` on bad input."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in ("'", '"'):
            quote = ch
            j = i + 1
            parts: list[str] = []
            while True:
                if j >= n:
                    raise ParseError("unterminated string literal", position=i, expected=quote)
                if text[j] == quote:
                    if j + 1 < n and text[j + 1] == quote:  # doubled quote escape
                        parts.append(quote)
                        j += 2
                        continue
                    break
                parts.append(text[j])
                j += 1
            tokens.append(Token(STRING, text[i : j + 1], "".join(parts), i))
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
                value: int | float = float(text[i:j])
            else:
                value = int(text[i:j])
            tokens.append(Token(NUMBER, text[i:j], value, i))
            i = j
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[i:j]
            tokens.append(Token(IDENT, word, word, i))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                canonical = "!=" if sym == "<>" else sym
                tokens.append(Token(SYMBOL, canonical, canonical, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", position=i, expected="a token")
    tokens.append(Token(EOF, "", None, n))
    return tokens
