"""Green's preorders and relations with explicit witnesses.

The rings are unital, so the monoid ``S^1`` of the definitions is the ring
itself. Conventions for the witness of ``a <=_L b`` (``a = x b``) and
``a <=_R b`` (``a = b x``):

* ``a == b`` always yields ``x = 1``;
* scalar fields and Q: ``x = 0`` when ``a = 0``, else ``a b^-1``;
* matrices over a field (``method="linear"``): canonical solution of the
  linear system with free variables zero;
* otherwise (``method="scan"``): first ``x`` in enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from geninv import fieldlinalg
from geninv.errors import CapabilityError, InvariantViolation, UsageError
from geninv.results import NotRelated
from geninv.rings import Element, MatrixRing, enumerate_elements, same_ring, try_invert
from geninv.tables import has_tables, tables_for

KINDS = ("LeqL", "LeqR", "LeqH", "L", "R", "H")
METHODS = ("auto", "scan", "linear")


@dataclass(frozen=True)
class GreenWitness:
    """Certificate for a Green statement about ``(a, b)``.

    ``LeqL``: a = x b.  ``LeqR``: a = b x.
    ``L``: a = x b and b = y a.  ``R``: a = b x and b = a y.
    ``LeqH`` / ``H`` carry the left and right sub-witnesses.
    """

    kind: str
    a: Element
    b: Element
    x: Element | None = None
    y: Element | None = None
    left: GreenWitness | None = None
    right: GreenWitness | None = None

    def holds(self) -> bool:
        a, b, x, y = self.a, self.b, self.x, self.y
        k = self.kind
        if k == "LeqL":
            return a == x * b
        if k == "LeqR":
            return a == b * x
        if k == "L":
            return a == x * b and b == y * a
        if k == "R":
            return a == b * x and b == a * y
        if k in ("LeqH", "H"):
            sub = ("LeqL", "LeqR") if k == "LeqH" else ("L", "R")
            return (
                self.left is not None
                and self.right is not None
                and (self.left.kind, self.right.kind) == sub
                and (self.left.a, self.left.b, self.right.a, self.right.b) == (a, b, a, b)
                and self.left.holds()
                and self.right.holds()
            )
        raise UsageError(f"unknown Green kind {k!r}")

    def check(self) -> GreenWitness:
        if not self.holds():
            raise InvariantViolation(f"{self.kind} witness fails for a={self.a}, b={self.b}")
        return self


def _method(ring, method: str) -> str:
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}")
    linear_ok = isinstance(ring, MatrixRing) and ring.over_field
    if method == "auto":
        if ring.is_field:
            return "field"
        if linear_ok:
            return "linear"
        if ring.is_enumerable:
            return "scan"
        raise CapabilityError(f"Green relations are undecidable here for {ring.spec}")
    if method == "linear" and not linear_ok:
        raise CapabilityError(f"no linear-algebra decider for {ring.spec}")
    if method == "scan":
        ring.require_enumerable("Green scan")
    return method


def _divide(a: Element, b: Element, side: str, method: str) -> Element | None:
    """x with a = x b (side 'L') or a = b x (side 'R'), or None."""
    ring = same_ring(a, b)
    if a == b:
        return ring.one_element
    m = _method(ring, method)
    if m == "field":
        if a.is_zero():
            return a
        binv = try_invert(b)
        if binv is None:
            return None
        return a * binv if side == "L" else binv * a
    if m == "linear":
        F = ring.scalar_ring
        A, B = ring.flatten(a.value), ring.flatten(b.value)
        X = fieldlinalg.solve_left(F, B, A) if side == "L" else fieldlinalg.solve_right(F, B, A)
        return None if X is None else Element(ring, ring.unflatten(X))
    if has_tables(ring):
        t = tables_for(ring)
        col = t.mul[:, b.index] if side == "L" else t.mul[b.index, :]
        hits = np.flatnonzero(col == a.index)
        return t.element(hits[0]) if hits.size else None
    for x in enumerate_elements(ring):
        if (x * b if side == "L" else b * x) == a:
            return x
    return None


def leq_L(a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    x = _divide(a, b, "L", method)
    if x is None:
        return NotRelated("LeqL", a, b)
    return GreenWitness("LeqL", a, b, x=x).check()


def leq_R(a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    x = _divide(a, b, "R", method)
    if x is None:
        return NotRelated("LeqR", a, b)
    return GreenWitness("LeqR", a, b, x=x).check()


def leq_H(a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    left = leq_L(a, b, method)
    if not left:
        return NotRelated("LeqH", a, b)
    right = leq_R(a, b, method)
    if not right:
        return NotRelated("LeqH", a, b)
    return GreenWitness("LeqH", a, b, left=left, right=right).check()


def green_L(a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    x = _divide(a, b, "L", method)
    y = None if x is None else _divide(b, a, "L", method)
    if y is None:
        return NotRelated("L", a, b)
    return GreenWitness("L", a, b, x=x, y=y).check()


def green_R(a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    x = _divide(a, b, "R", method)
    y = None if x is None else _divide(b, a, "R", method)
    if y is None:
        return NotRelated("R", a, b)
    return GreenWitness("R", a, b, x=x, y=y).check()


def green_H(a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    left = green_L(a, b, method)
    if not left:
        return NotRelated("H", a, b)
    right = green_R(a, b, method)
    if not right:
        return NotRelated("H", a, b)
    return GreenWitness("H", a, b, left=left, right=right).check()


DECIDERS = {
    "LeqL": leq_L,
    "LeqR": leq_R,
    "LeqH": leq_H,
    "L": green_L,
    "R": green_R,
    "H": green_H,
}


def decide(kind: str, a: Element, b: Element, method: str = "auto") -> GreenWitness | NotRelated:
    try:
        fn = DECIDERS[kind]
    except KeyError:
        raise UsageError(f"unknown Green kind {kind!r}; expected one of {', '.join(KINDS)}") from None
    return fn(a, b, method)
