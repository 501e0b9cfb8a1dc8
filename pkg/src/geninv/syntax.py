"""Textual ring specs and element literals.

Ring specs::

    Z:<n>            residues mod n
    GF:<p>           prime field
    M:<k>:<base>     k x k matrices over <base> (nestable)
    Q                rationals

Element literals are integers (``5``, ``-1``) for residues, fractions
(``3/4``, ``-1/2``, ``2``) for Q and bracketed rows for matrices
(``[[1,0],[0,1]]``; entries are literals of the base ring). Whitespace is
ignored. The canonical spelling is ``str(element)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from geninv.errors import UsageError
from geninv.rings import (
    Element,
    MatrixRing,
    ModularInt,
    PrimeField,
    Rationals,
    RingDescriptor,
)


class ParseError(UsageError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1):
        self.line = line
        self.column = pos + 1
        super().__init__(f"line {line}, column {self.column}: {message} in {text!r}")


_INT = re.compile(r"[+-]?\d+")
_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_ring(text: str) -> RingDescriptor:
    """Parse a ring spec such as ``M:2:Z:6``."""
    s = text.strip()
    parts = s.split(":")
    try:
        ring, rest = _ring_from(parts)
    except UsageError as exc:
        raise UsageError(f"bad ring spec {text!r}: {exc}") from None
    if rest:
        raise UsageError(f"bad ring spec {text!r}: trailing {':'.join(rest)!r}")
    return ring


def _ring_from(parts: list[str]) -> tuple[RingDescriptor, list[str]]:
    if not parts or not parts[0]:
        raise UsageError("empty ring spec")
    head = parts[0]
    if head == "Q":
        return Rationals(), parts[1:]
    if head in ("Z", "GF"):
        if len(parts) < 2 or not parts[1].isdigit():
            raise UsageError(f"{head} needs a positive integer parameter")
        n = int(parts[1])
        return (ModularInt(n) if head == "Z" else PrimeField(n)), parts[2:]
    if head == "M":
        if len(parts) < 3 or not parts[1].isdigit():
            raise UsageError("M needs a dimension and a base ring")
        base, rest = _ring_from(parts[2:])
        return MatrixRing(base, int(parts[1])), rest
    raise UsageError(f"unknown ring {head!r}")


def format_ring(ring: RingDescriptor) -> str:
    return ring.spec


class _Parser:
    def __init__(self, text: str, line: int):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, message: str):
        raise ParseError(message, self.text, self.pos, self.line)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def value(self, ring: RingDescriptor):
        self.skip()
        if isinstance(ring, MatrixRing):
            return self.matrix(ring)
        pattern = _RAT if isinstance(ring, Rationals) else _INT
        m = pattern.match(self.text, self.pos)
        if not m:
            self.error(f"expected a {ring.spec} literal")
        token = m.group()
        if isinstance(ring, Rationals):
            if "/" in token and int(token.split("/")[1]) == 0:
                self.error("zero denominator")
            raw = Fraction(token)
        else:
            raw = int(token)
        self.pos = m.end()
        return ring.normalize(raw)

    def matrix(self, ring: MatrixRing):
        k = ring.dim
        flat = []
        self.expect("[")
        for i in range(k):
            if i:
                self.expect(",")
            self.expect("[")
            for j in range(k):
                if j:
                    self.expect(",")
                flat.append(self.value(ring.base))
            self.expect("]")
        self.expect("]")
        return tuple(flat)


def parse_element(ring: RingDescriptor, text: str, line: int = 1) -> Element:
    """Parse an element literal of ``ring``; errors carry line and column."""
    p = _Parser(text, line)
    payload = p.value(ring)
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return Element(ring, payload)


def format_element(x: Element) -> str:
    return str(x)


def read_literals(path: str) -> list[tuple[int, str]]:
    """Non-empty, non-comment lines of a literal file as ``(lineno, text)``."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                out.append((n, line))
    return out
