"""Transfer matrices and their text form.

The text grammar, informally::

    matrix := '[' row (';' row)* ']'
    row    := expr (',' expr)*
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | 's' | '(' expr ')'

NUMBER is an unsigned integer or finite decimal ("2", "0.5", ".25");
decimals convert exactly (0.1 becomes 1/10, not the nearest double).
Rows are semicolon-separated, entries comma-separated, and every row
must have the same number of entries.  The parser is total: any string
either yields a TransferMatrix or raises ParseError with the 1-based
line and column of the failure.  See docs/grammar.md for the full
grammar and the guard rails (an entry whose numerator or denominator
would pass degree 2000 is rejected rather than computed).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import DimensionError, JsonFormatError, ParseError
from .ratfunc import Polynomial, RationalFunction, format_rational

MAX_DEGREE = 2000


class TransferMatrix:
    """Rectangular matrix of rational functions in s.  At least 1 x 1."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[Iterable]):
        rows = []
        for row in entries:
            rows.append(tuple(_as_rational(e) for e in row))
        if not rows or not rows[0]:
            raise DimensionError("a transfer matrix needs at least one entry")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionError("rows have unequal lengths")
        self._entries: tuple[tuple[RationalFunction, ...], ...] = tuple(rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "TransferMatrix":
        zero = RationalFunction.zero()
        return cls([[zero] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self._entries)

    @property
    def cols(self) -> int:
        return len(self._entries[0])

    @property
    def entries(self) -> tuple[tuple[RationalFunction, ...], ...]:
        return self._entries

    def __getitem__(self, key: tuple[int, int]) -> RationalFunction:
        i, j = key
        return self._entries[i][j]

    @property
    def is_strictly_proper(self) -> bool:
        return all(e.is_strictly_proper for row in self._entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, TransferMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in row] for row in self._entries],
        }

    @classmethod
    def from_json(cls, obj) -> "TransferMatrix":
        if not isinstance(obj, dict):
            raise JsonFormatError(f"transfer matrix must be an object, got {type(obj).__name__}")
        unknown = set(obj) - {"rows", "cols", "entries"}
        if unknown:
            raise JsonFormatError(f"unknown keys in transfer matrix: {sorted(unknown)}")
        missing = {"rows", "cols", "entries"} - set(obj)
        if missing:
            raise JsonFormatError(f"transfer matrix is missing keys: {sorted(missing)}")
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        for label, value in (("rows", rows), ("cols", cols)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise JsonFormatError(f'"{label}" must be a positive integer')
        if not isinstance(entries, list) or any(not isinstance(r, list) for r in entries):
            raise JsonFormatError('"entries" must be an array of row arrays')
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise JsonFormatError('"entries" shape does not match "rows" x "cols"')
        return cls([[RationalFunction.from_json(e) for e in row] for row in entries])

    def __repr__(self):
        return f"TransferMatrix({self.rows}x{self.cols})"

    def __str__(self):
        return print_transfer_matrix(self)


def _as_rational(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (int, Fraction, Polynomial)) and not isinstance(value, bool):
        return RationalFunction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a transfer-matrix entry")


def print_transfer_matrix(matrix: TransferMatrix) -> str:
    """Canonical one-line text form; parse_transfer_matrix inverts it."""
    return "[" + "; ".join(
        ", ".join(format_rational(e) for e in row) for row in matrix.entries
    ) + "]"


# --- tokenizer -------------------------------------------------------------

_PUNCT = {"[", "]", ";", ",", "+", "-", "*", "/", "^", "(", ")"}


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind  # one of _PUNCT, or "number", "s", "end"
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch in "sS":
            tokens.append(_Token("s", "s", line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            start_col = col
            seen_dot = False
            while i < n and (text[i].isdigit() or (text[i] == "." and not seen_dot)):
                if text[i] == ".":
                    # a dot must be followed by a digit to belong to this number
                    if i + 1 >= n or not text[i + 1].isdigit():
                        break
                    seen_dot = True
                i += 1
                col += 1
            tokens.append(_Token("number", text[start:i], line, start_col))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


# --- recursive-descent parser ----------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _advance(self) -> _Token:
        tok = self._tokens[self._pos]
        if tok.kind != "end":
            self._pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, got {_describe(tok)}", tok.line, tok.column)
        return self._advance()

    def parse_matrix(self) -> TransferMatrix:
        self._expect("[", "'['")
        rows = [self._parse_row()]
        while self._peek().kind == ";":
            self._advance()
            rows.append(self._parse_row())
        closing = self._expect("]", "']'")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ParseError(
                "rows have unequal numbers of entries", closing.line, closing.column
            )
        tail = self._peek()
        if tail.kind != "end":
            raise ParseError(
                f"trailing input after ']': {_describe(tail)}", tail.line, tail.column
            )
        return TransferMatrix(rows)

    def _parse_row(self) -> list[RationalFunction]:
        entries = [self._parse_expr()]
        while self._peek().kind == ",":
            self._advance()
            entries.append(self._parse_expr())
        return entries

    def _parse_expr(self) -> RationalFunction:
        value = self._parse_term()
        while self._peek().kind in ("+", "-"):
            op = self._advance()
            rhs = self._parse_term()
            value = value + rhs if op.kind == "+" else value - rhs
            _guard_degree(value, op)
        return value

    def _parse_term(self) -> RationalFunction:
        value = self._parse_unary()
        while self._peek().kind in ("*", "/"):
            op = self._advance()
            rhs = self._parse_unary()
            if op.kind == "/":
                if rhs.is_zero:
                    raise ParseError(
                        "division by an expression that is identically zero",
                        op.line,
                        op.column,
                    )
                value = value / rhs
            else:
                value = value * rhs
            _guard_degree(value, op)
        return value

    def _parse_unary(self) -> RationalFunction:
        if self._peek().kind == "-":
            self._advance()
            return -self._parse_unary()
        return self._parse_power()

    def _parse_power(self) -> RationalFunction:
        base = self._parse_atom()
        if self._peek().kind != "^":
            return base
        self._advance()
        tok = self._peek()
        if tok.kind != "number" or "." in tok.text:
            raise ParseError(
                f"exponent must be a nonnegative integer, got {_describe(tok)}",
                tok.line,
                tok.column,
            )
        self._advance()
        exponent = int(tok.text)
        worst = max(base.num.degree, base.den.degree, 0)
        # the second clause also stops huge powers of constants
        if worst * exponent > MAX_DEGREE or exponent > MAX_DEGREE:
            raise ParseError(
                f"exponent pushes the degree past the limit of {MAX_DEGREE}",
                tok.line,
                tok.column,
            )
        return base ** exponent

    def _parse_atom(self) -> RationalFunction:
        tok = self._peek()
        if tok.kind == "number":
            self._advance()
            return RationalFunction(Polynomial((Fraction(tok.text),)))
        if tok.kind == "s":
            self._advance()
            return RationalFunction.s()
        if tok.kind == "(":
            self._advance()
            value = self._parse_expr()
            self._expect(")", "')'")
            return value
        raise ParseError(
            f"expected a number, 's', '(' or '-', got {_describe(tok)}",
            tok.line,
            tok.column,
        )


def _describe(tok: _Token) -> str:
    return "end of input" if tok.kind == "end" else f"'{tok.text}'"


def _guard_degree(value: RationalFunction, tok: _Token) -> None:
    if max(value.num.degree, value.den.degree) > MAX_DEGREE:
        raise ParseError(
            f"intermediate degree exceeds the limit of {MAX_DEGREE}",
            tok.line,
            tok.column,
        )


def parse_transfer_matrix(text: str) -> TransferMatrix:
    """Parse the text form of a transfer matrix.

    Total over arbitrary strings: the result is a TransferMatrix or a
    ParseError pinpointing the failure, nothing else.
    """
    return _Parser(_tokenize(text)).parse_matrix()
