"""Parsing of subgroup literals and wedge expressions.

Subgroup literals are annihilator generator matrices like ``[[2,0],[0,3]]``,
with ``T`` for the full torus and ``C(n)`` for the order-n subgroup of the
circle.  Wedge expressions combine basic cells: ``sigma(K)`` is a cell,
``v`` wedges two expressions, ``S^n ^ e`` suspends, and ``0`` is the zero
object.  Whitespace is ignored everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .lattice import (
    AmbientTorus,
    ClosedSubgroup,
    canonicalize_subgroup,
    cyclic_subgroup,
    full_torus,
)
from .isotropy import FiniteObjectExpr, sigma


class ParseError(ValueError):
    """Malformed subgroup literal or wedge expression."""


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            # fixed keyword set, longest first, so 'v' needs no surrounding
            # whitespace
            for word in ("sigma", "v", "S", "T", "C"):
                if text.startswith(word, i):
                    out.append(_Token("IDENT", word, i))
                    i += len(word)
                    break
            else:
                raise ParseError(f"unknown name at position {i}: "
                                 f"{text[i:i + 8]!r}")
            continue
        simple = {"[": "LBRACK", "]": "RBRACK", "(": "LPAREN",
                  ")": "RPAREN", ",": "COMMA", "^": "CARET"}
        if ch in simple:
            out.append(_Token(simple[ch], ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    return out


class _Parser:
    def __init__(self, text: str, ambient: AmbientTorus):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ambient = ambient

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, value: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, wanted {kind}")
        if tok.kind != kind or (value is not None and tok.value != value):
            raise ParseError(
                f"unexpected {tok.value!r} at position {tok.pos}, "
                f"wanted {value or kind}")
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    # expr := term ('v' term)*
    def parse_expr(self) -> FiniteObjectExpr:
        out = self.parse_term()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "IDENT" and tok.value == "v":
                self.pos += 1
                out = out.wedge(self.parse_term())
            else:
                return out

    # term := 'S' '^' int '^' term | 'sigma' '(' subgroup ')' | '0'
    def parse_term(self) -> FiniteObjectExpr:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input, wanted a cell")
        if tok.kind == "INT" and tok.value == "0":
            self.pos += 1
            return FiniteObjectExpr.zero(self.ambient)
        if tok.kind == "IDENT" and tok.value == "S":
            self.pos += 1
            self.take("CARET")
            n = int(self.take("INT").value)
            self.take("CARET")
            return self.parse_term().suspend(n)
        if tok.kind == "IDENT" and tok.value == "sigma":
            self.pos += 1
            self.take("LPAREN")
            sub = self.parse_subgroup()
            self.take("RPAREN")
            return sigma(sub)
        raise ParseError(
            f"unexpected {tok.value!r} at position {tok.pos}, wanted a cell")

    # subgroup := 'T' | 'C' '(' int ')' | matrix
    def parse_subgroup(self) -> ClosedSubgroup:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input, wanted a subgroup")
        if tok.kind == "IDENT" and tok.value == "T":
            self.pos += 1
            return full_torus(self.ambient.rank)
        if tok.kind == "IDENT" and tok.value == "C":
            self.pos += 1
            self.take("LPAREN")
            n = int(self.take("INT").value)
            self.take("RPAREN")
            if self.ambient.rank != 1:
                raise ParseError("C(n) is a circle subgroup; the ambient "
                                 f"rank here is {self.ambient.rank}")
            if n < 1:
                raise ParseError("C(n) needs n >= 1")
            return cyclic_subgroup(n)
        if tok.kind == "LBRACK":
            rows = self.parse_matrix()
            return canonicalize_subgroup(self.ambient, rows)
        raise ParseError(
            f"unexpected {tok.value!r} at position {tok.pos}, wanted a "
            "subgroup literal")

    def parse_matrix(self) -> list[list[int]]:
        self.take("LBRACK")
        rows = []
        tok = self.peek()
        if tok is not None and tok.kind == "RBRACK":
            self.pos += 1
            return rows
        while True:
            rows.append(self.parse_row())
            tok = self.peek()
            if tok is not None and tok.kind == "COMMA":
                self.pos += 1
                continue
            self.take("RBRACK")
            return rows

    def parse_row(self) -> list[int]:
        self.take("LBRACK")
        row = []
        tok = self.peek()
        if tok is not None and tok.kind == "RBRACK":
            self.pos += 1
        else:
            while True:
                row.append(int(self.take("INT").value))
                tok = self.peek()
                if tok is not None and tok.kind == "COMMA":
                    self.pos += 1
                    continue
                self.take("RBRACK")
                break
        if len(row) != self.ambient.rank:
            raise ParseError(
                f"row of width {len(row)} in a rank-{self.ambient.rank} "
                "ambient")
        return row


def parse_wedge_expr(text: str, ambient_rank: int) -> FiniteObjectExpr:
    p = _Parser(text, AmbientTorus(ambient_rank))
    expr = p.parse_expr()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input {tok.value!r} at position {tok.pos}")
    return expr


def parse_subgroup_literal(text: str, ambient_rank: int) -> ClosedSubgroup:
    p = _Parser(text, AmbientTorus(ambient_rank))
    sub = p.parse_subgroup()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input {tok.value!r} at position {tok.pos}")
    return sub
