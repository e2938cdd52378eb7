"""Surface syntax for groups.

    group  := term ('+' term)*
    term   := 'Z' ('^' nat)? | 'Z/' nat | '0'
    graded := '[' group ';' group ']'

Whitespace is ignored.  ``0`` and ``Z^0`` are the trivial group; ``Z/0`` and
``Z/1`` are rejected.  Factors may come in any order and in primary form;
the result is always canonical.
"""

from __future__ import annotations

import re

from kkcalc.errors import ParseError
from kkcalc.graded import GradedGroup
from kkcalc.groups import FgaGroup

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sym>[Z^/+;\[\]]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
            group = "num" if m.group("num") is not None else "sym"
            kind = "num" if group == "num" else m.group("sym")
            self.tokens.append((kind, m.group(group), m.start(group)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def take(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {what}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def nat(self) -> tuple[int, int]:
        _, val, pos = self.take("num", "a natural number")
        return int(val), pos

    def term(self) -> list[int]:
        kind, _, pos = self.peek()
        if kind == "num":
            n, pos = self.nat()
            if n != 0:
                raise ParseError("a bare number must be 0 (the trivial group)", self.text, pos)
            return []
        self.take("Z", "'Z', 'Z/n' or '0'")
        kind, _, _ = self.peek()
        if kind == "^":
            self.i += 1
            n, _ = self.nat()
            return [0] * n
        if kind == "/":
            self.i += 1
            n, pos = self.nat()
            if n == 0:
                raise ParseError("zero modulus: write 'Z' for the infinite cyclic group", self.text, pos)
            if n == 1:
                raise ParseError("Z/1 is trivial: write '0'", self.text, pos)
            return [n]
        return [0]

    def group(self) -> FgaGroup:
        orders = self.term()
        while self.peek()[0] == "+":
            self.i += 1
            orders += self.term()
        return FgaGroup.from_orders(orders)

    def graded(self) -> GradedGroup:
        self.take("[", "'['")
        even = self.group()
        self.take(";", "';'")
        odd = self.group()
        self.take("]", "']'")
        return GradedGroup(even, odd)

    def end(self):
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {val!r}", self.text, pos)


def parse_group(text: str) -> FgaGroup | GradedGroup:
    """Parse a group; a leading ``[`` makes it graded."""
    p = _Parser(text)
    out = p.graded() if p.peek()[0] == "[" else p.group()
    p.end()
    return out


def parse_fga(text: str) -> FgaGroup:
    out = parse_group(text)
    if not isinstance(out, FgaGroup):
        raise ParseError("expected an ungraded group", text, 0)
    return out


def parse_graded(text: str) -> GradedGroup:
    out = parse_group(text)
    if not isinstance(out, GradedGroup):
        raise ParseError("expected a graded group '[even ; odd]'", text, 0)
    return out


def _primary_str(G: FgaGroup) -> str:
    parts = []
    if G.free_rank:
        parts.append("Z" if G.free_rank == 1 else f"Z^{G.free_rank}")
    for orders in G.primary_factors().values():
        parts.extend(f"Z/{q}" for q in orders)
    return " + ".join(parts) if parts else "0"


def print_group(G: FgaGroup | GradedGroup, primary: bool = False) -> str:
    """Canonical text; ``primary`` prints elementary divisors instead of invariant factors."""
    if isinstance(G, GradedGroup):
        return f"[{print_group(G.even, primary)} ; {print_group(G.odd, primary)}]"
    return _primary_str(G) if primary else str(G)
